#pragma once

namespace dbsim {

/// Per-window counts feeding the sensitivity arithmetic. n_0 is the total
/// incident pulse count (registered + blanked + open-gate-but-missed).
struct SensitivityInputs {
  double n_g = 0.0;     ///< registered light pulses per window
  double n_0 = 0.0;     ///< incident light pulses per window
  double nb_avg = 0.0;  ///< average blanked pulses per registration
};

/// Detection sensitivity plus the derived count decomposition.
/// n_a + n_b + n_g == n_0 holds to within floating-point rounding.
struct SensitivityResult {
  double ds = 0.0;   ///< registered / (incident in open gates), in [0, 1]
  double n_b = 0.0;  ///< blanked-pulse total, n_g * nb_avg
  double n_a = 0.0;  ///< open-gate pulses that were not registered
};

/// ds = n_g / (n_0 - n_g * nb_avg). Throws std::invalid_argument on
/// non-physical inputs (denominator <= 0 or ds > 1).
SensitivityResult compute_ds(const SensitivityInputs& inputs);

/// Detection efficiency for an operating point: n_p * ds / n_0, where n_p is
/// the maximum registrable pulse count. Rejects n_0 = 0.
double compute_de(double n_p, double ds, double n_0);

}  // namespace dbsim
