#include <cmath>

#include <fmt/format.h>

#include "qmemory/dynamics.hpp"
#include "qmemory/error.hpp"

namespace qmemory::dynamics {

namespace {

constexpr double kDriftThreshold = 1e-12;

void axpy(StateVector& y, Complex a, const StateVector& x) {
  for (std::size_t i = 0; i < 16; ++i) y[i] += a * x[i];
}

StateVector rk4_step(const CMatrix<16>& l, const StateVector& v, double h) {
  const StateVector k1 = matvec(l, v);
  StateVector tmp = v;
  axpy(tmp, 0.5 * h, k1);
  const StateVector k2 = matvec(l, tmp);
  tmp = v;
  axpy(tmp, 0.5 * h, k2);
  const StateVector k3 = matvec(l, tmp);
  tmp = v;
  axpy(tmp, h, k3);
  const StateVector k4 = matvec(l, tmp);
  StateVector out = v;
  for (std::size_t i = 0; i < 16; ++i) out[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

StateVector rk4_steps(const CMatrix<16>& l, StateVector v, double h, long n) {
  for (long k = 0; k < n; ++k) v = rk4_step(l, v, h);
  return v;
}

double max_abs_diff(const StateVector& x, const StateVector& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw Error(ErrorKind::InvalidGrid, "time grid is empty");
  if (t_grid.front() != 0.0) throw Error(ErrorKind::InvalidGrid, "time grid must start at 0");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1]) || !std::isfinite(t_grid[k]))
      throw Error(ErrorKind::InvalidGrid, fmt::format("time grid not strictly increasing at index {}", k));
  }
}

}  // namespace

double default_step_bound(const ModelParams& p) { return 1e-3 / (p.decay_rate() + 2.0 * p.omega()); }

MasterTrajectory integrate_master(const DensityMatrix4& rho0, const ModelParams& p, std::span<const double> t_grid,
                                  const IntegratorOptions& options) {
  check_grid(t_grid);
  if (options.step && !(*options.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "RK4 step must be positive");

  const Liouvillian generator(p);
  const CMatrix<16>& l = generator.matrix();
  const double h_bound = options.step.value_or(default_step_bound(p));

  MasterTrajectory out;
  out.times.assign(t_grid.begin(), t_grid.end());
  out.samples.reserve(t_grid.size());
  out.diagnostics.reserve(t_grid.size());
  out.samples.push_back(rho0);
  out.diagnostics.push_back({});

  StateVector state = vectorize(rho0.matrix());
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double spacing = t_grid[k] - t_grid[k - 1];
    long n = std::max(1L, static_cast<long>(std::ceil(spacing / h_bound - 1e-9)));
    SampleDiagnostics diag;

    if (options.control == StepControl::Fixed) {
      state = rk4_steps(l, state, spacing / n, n);
      diag.step = spacing / n;
    } else {
      for (;;) {
        const double h = spacing / n;
        if (0.5 * h < options.min_step)
          throw Error(ErrorKind::StepUnderflow,
                      fmt::format("step {:.3e} below minimum {:.3e} on interval [{}, {}] without meeting tolerance "
                                  "{:.1e}",
                                  0.5 * h, options.min_step, t_grid[k - 1], t_grid[k], options.tolerance));
        const StateVector coarse = rk4_steps(l, state, h, n);
        const StateVector fine = rk4_steps(l, state, 0.5 * h, 2 * n);
        const double estimate = max_abs_diff(coarse, fine) / 15.0;
        if (estimate <= options.tolerance) {
          state = fine;
          diag.step = 0.5 * h;
          diag.error_estimate = estimate;
          break;
        }
        n *= 2;
      }
    }

    CMatrix4 m = unvectorize(state);
    diag.hermiticity_defect = m.hermiticity_defect();
    m = (m + m.adjoint()) * Complex(0.5);
    const double tr = m.trace().real();
    diag.trace_before_renormalization = tr;
    if (std::abs(tr - 1.0) > kDriftThreshold) {
      m *= Complex(1.0 / tr);
      diag.renormalized = true;
      out.drift_log.push_back(fmt::format("t={:.9g}: trace drift {:.3e} renormalized", t_grid[k], tr - 1.0));
    }
    out.samples.emplace_back(m);
    out.diagnostics.push_back(diag);
    state = vectorize(m);
  }
  return out;
}

}  // namespace qmemory::dynamics
