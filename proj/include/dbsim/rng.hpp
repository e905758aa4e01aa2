#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace dbsim {

// xor/multiply finalizer from splitmix64 (Steele, Lea & Flood 2014).
// Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identifies one independent random stream. Distinct (master_seed,
/// stream_index) pairs map to distinct engine seeds via sub_seed().
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Stable seed derivation: mix64 is a bijection, so for a fixed master seed
/// distinct stream indices give distinct seeds, and for a fixed index
/// distinct masters do as well. This mapping is part of the reproducibility
/// contract and must not change between releases.
constexpr std::uint64_t sub_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_index) noexcept {
  return mix64(mix64(master_seed + 0x9e3779b97f4a7c15ULL) + stream_index);
}

constexpr std::uint64_t sub_seed(const SeedSpec& seed) noexcept {
  return sub_seed(seed.master_seed, seed.stream_index);
}

/// splitmix64 (Steele, Lea & Flood 2014); used only to expand a 64-bit seed
/// into larger generator state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna 2018). The single project-wide
/// generator: 256 bits of state, identical output on every platform. The
/// standard-library distributions are implementation-defined, so all draws
/// go through uniform_below() below instead.
class Xoshiro256StarStar {
 public:
  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

/// Unbiased draw from {0, ..., bound-1} by masked rejection. bound must be
/// at least 1. Expected draws per call < 2.
constexpr std::uint64_t uniform_below(Xoshiro256StarStar& rng,
                                      std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  const int bits = std::bit_width(bound - 1);
  const std::uint64_t mask =
      (bits >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
  std::uint64_t v = rng.next() & mask;
  while (v >= bound) v = rng.next() & mask;
  return v;
}

}  // namespace dbsim
