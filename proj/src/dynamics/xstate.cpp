#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qmemory/dynamics.hpp"
#include "qmemory/error.hpp"

namespace qmemory::dynamics {

XStateRate xstate_rhs(const XState& x, const ModelParams& p) {
  const double g = p.gamma();
  const double m = p.m();
  const double om = p.omega();
  const Complex i(0.0, 1.0);
  const double exchange = (i * om * (x.z - std::conj(x.z))).real();

  XStateRate r;
  r.a = g * (-2.0 * (m + 1.0) * x.a + m * x.b + m * x.c);
  r.b = g * ((m + 1.0) * x.a - (2.0 * m + 1.0) * x.b + m * x.d) + exchange;
  r.c = g * ((m + 1.0) * x.a - (2.0 * m + 1.0) * x.c + m * x.d) - exchange;
  r.d = g * ((m + 1.0) * x.b + (m + 1.0) * x.c - 2.0 * m * x.d);
  r.z = g * (-(2.0 * m + 1.0) * x.z) + i * om * (x.b - x.c);
  r.w = g * (-(2.0 * m + 1.0) * x.w);
  return r;
}

XStatePropagator::XStatePropagator(const ModelParams& p) : params_(p) {
  // Population block in (a, s = b + c, d), with gamma factored out.
  const double m = p.m();
  Eigen::Matrix3d block;
  block << -2.0 * (m + 1.0), m, 0.0,
           2.0 * (m + 1.0), -(2.0 * m + 1.0), 2.0 * m,
           0.0, m + 1.0, -2.0 * m;

  const Eigen::EigenSolver<Eigen::Matrix3d> solver(block);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvariantViolation, "population block eigensolver failed");
  const auto values = solver.eigenvalues();
  const auto vectors = solver.eigenvectors();
  if (values.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::InvariantViolation, "population block has complex eigenvalues");

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return values[x].real() > values[y].real(); });

  Eigen::Matrix3d v;
  for (int k = 0; k < 3; ++k) {
    rates_[k] = p.gamma() * values[order[k]].real();
    v.col(k) = vectors.col(order[k]).real();
  }
  const Eigen::Matrix3d vinv = v.inverse();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      vectors_[r][c] = v(r, c);
      inverse_[r][c] = vinv(r, c);
    }
}

XState XStatePropagator::operator()(const XState& x0, double t) const {
  densmat::validate(x0);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "propagation time must be >= 0");
  if (t == 0.0) return x0;

  const double decay = std::exp(-params_.decay_rate() * t);
  const double angle = 2.0 * params_.omega() * t;
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);

  const std::array<double, 3> pop0{x0.a, x0.b + x0.c, x0.d};
  std::array<double, 3> modal{};
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += inverse_[k][j] * pop0[j];
    modal[k] = s * std::exp(rates_[k] * t);
  }
  std::array<double, 3> pop{};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) pop[r] += vectors_[r][k] * modal[k];

  const double u0 = x0.b - x0.c;
  const double y0 = x0.z.imag();
  const double u = decay * (u0 * cs - 2.0 * y0 * sn);
  const double y = decay * (y0 * cs + 0.5 * u0 * sn);

  XState x;
  x.a = pop[0];
  x.b = 0.5 * (pop[1] + u);
  x.c = 0.5 * (pop[1] - u);
  x.d = pop[2];
  x.z = Complex(decay * x0.z.real(), y);
  x.w = x0.w * decay;
  return x;
}

XState propagate_xstate_exact(const XState& x0, const ModelParams& p, double t) { return XStatePropagator(p)(x0, t); }

}  // namespace qmemory::dynamics
