#include "dbsim/sensitivity.hpp"

#include <stdexcept>

namespace dbsim {

SensitivityResult compute_ds(const SensitivityInputs& inputs) {
  if (!(inputs.n_0 > 0.0)) throw std::invalid_argument("n_0 must be positive");
  if (inputs.n_g < 0.0) throw std::invalid_argument("n_g must be non-negative");
  if (inputs.nb_avg < 0.0) throw std::invalid_argument("nb_avg must be non-negative");

  SensitivityResult result;
  result.n_b = inputs.n_g * inputs.nb_avg;
  const double open_gate_incident = inputs.n_0 - result.n_b;
  if (!(open_gate_incident > 0.0))
    throw std::invalid_argument(
        "non-physical inputs: blanked pulses exceed the incident total");
  result.ds = inputs.n_g / open_gate_incident;
  if (result.ds > 1.0)
    throw std::invalid_argument(
        "non-physical inputs: more registrations than open-gate pulses");
  result.n_a = inputs.n_0 - inputs.n_g - result.n_b;
  return result;
}

double compute_de(double n_p, double ds, double n_0) {
  if (n_p < 0.0) throw std::invalid_argument("n_p must be non-negative");
  if (ds < 0.0 || ds > 1.0) throw std::invalid_argument("ds must lie in [0, 1]");
  if (!(n_0 > 0.0)) throw std::invalid_argument("n_0 must be positive");
  return n_p * ds / n_0;
}

}  // namespace dbsim
