#include <cmath>

#include "qmemory/dynamics.hpp"

namespace qmemory::dynamics {

// Transcribed term by term from the printed closed form. Known to fail the
// t = 0 identity (b(0) = b0 + 1/2 for the |10> input) and to oscillate at
// Omega instead of 2 Omega; kept only to reproduce that discrepancy.
XStateRecord eval_eq5_published(const XState& x0, double gamma, double m, double omega, double t) {
  const double a0 = x0.a;
  const double b0 = x0.b;
  const double c0 = x0.c;
  const double d0 = x0.d;
  const double X = std::exp(-gamma * (1.0 + 2.0 * m) * t);
  const double X2 = X * X;
  const double cw = std::cos(omega * t);
  const double sw = std::sin(omega * t);
  const double norm = 1.0 / ((2.0 * m + 1.0) * (2.0 * m + 1.0));
  const double m2 = m * m;

  const double quadratic = (2.0 * a0 + 2.0 * d0 - 1.0) * m2 + (3.0 * a0 + d0 - 1.0) * m + a0;

  XStateRecord r;
  r.a = norm * (m2 + (2.0 * (a0 - d0) * m2 + (a0 - d0 + 1.0) * m) * X + quadratic * X2);

  const double b_linear = 2.0 * (a0 + 2.0 * c0 + d0 - 1.0 - (b0 - c0) * cw) * m2 +
                          (a0 + 4.0 * c0 + 3.0 * d0 - 2.0 - 2.0 * (b0 - c0) * cw) * m +
                          (c0 + d0 - 1.0 - 0.5 * (b0 - c0) * cw);
  r.b = norm * (m * (m + 1.0) - b_linear * X - quadratic * X2);

  const double c_linear = 2.0 * (a0 + 2.0 * c0 + d0 - 1.0 - (b0 - c0) * cw) * m2 +
                          (3.0 * a0 + 4.0 * c0 + d0 - 2.0 - 2.0 * (b0 - c0) * cw) * m - 0.5 * (b0 - c0) * cw;
  r.c = norm * (m * (m + 1.0) + c_linear * X - quadratic * X2);

  r.d = norm * ((m + 1.0) * (m + 1.0) - (m + 1.0) * (2.0 * (a0 - d0) * m + (a0 + d0 - 1.0)) * X + quadratic * X2);

  r.z = (x0.z + Complex(0.0, 0.5 * (b0 - c0) * sw)) * X;
  r.w = x0.w * X;
  return r;
}

XStateRecord eval_eq5_published(const XState& x0, const ModelParams& p, double t) {
  return eval_eq5_published(x0, p.gamma(), p.m(), p.omega(), t);
}

}  // namespace qmemory::dynamics
