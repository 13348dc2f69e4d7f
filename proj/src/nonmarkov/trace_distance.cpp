#include <cmath>

#include "qmemory/nonmarkov.hpp"

namespace qmemory::nonmarkov {

double trace_distance_pair(const ModelParams& p, double t) {
  const double pp = dynamics::p_plus(p, t);
  const double pm = dynamics::p_minus(p, t);
  const double qp = dynamics::q_plus(p, t);
  const double qm = dynamics::q_minus(p, t);
  return 0.5 * (std::abs(pp - pm) + std::abs(qp - qm));
}

double trace_distance_closed_form(const ModelParams& p, double t) {
  const double c = std::cos(p.omega() * t);
  return std::exp(-p.decay_rate() * t) * c * c;
}

double sigma_rate(const ModelParams& p, double t) {
  const double g = p.decay_rate();
  const double om = p.omega();
  const double c = std::cos(om * t);
  const double s = std::sin(om * t);
  return std::exp(-g * t) * c * (-g * c - 2.0 * om * s);
}

}  // namespace qmemory::nonmarkov
