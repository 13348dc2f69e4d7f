#include <algorithm>
#include <cmath>

#include "qmemory/dynamics.hpp"

namespace qmemory::dynamics {

// Ground population of atom 1 from |10>, algebraically equal to 1 - p+ but
// exact at t = 0 and free of cancellation while X is close to 1.
double q_plus(const ModelParams& p, double t) {
  const double m = p.m();
  const double one_minus_x = -std::expm1(-p.decay_rate() * t);
  const double s = std::sin(p.omega() * t);
  const double value = (1.0 + m) * one_minus_x / (1.0 + 2.0 * m) + s * s * (1.0 - one_minus_x);
  return std::clamp(value, 0.0, 1.0);
}

double p_plus(const ModelParams& p, double t) { return 1.0 - q_plus(p, t); }

double p_minus(const ModelParams& p, double t) {
  const double m = p.m();
  return m * -std::expm1(-p.decay_rate() * t) / (1.0 + 2.0 * m);
}

}  // namespace qmemory::dynamics
