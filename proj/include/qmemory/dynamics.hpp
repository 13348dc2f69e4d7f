#pragma once

// Dissipative dynamics of two coupled two-level atoms, each in a local thermal
// reservoir (equal relaxation rate gamma and mean occupation m), coupled by the
// flip-flop Hamiltonian Omega (s1+ s2- + s1- s2+).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmemory/densmat.hpp"

namespace qmemory::dynamics {

using densmat::CMatrix;
using densmat::CMatrix4;
using densmat::Complex;
using densmat::DensityMatrix4;
using densmat::XState;

/// Constants of the microscopic atom-cavity Hamiltonian. Carried for
/// bookkeeping only; nothing in the library reads them.
struct HamiltonianConstants {
  double cavity_frequency = 0.0;      // omega_0
  double transition_frequency = 0.0;  // nu_0
  double atom_cavity_coupling = 0.0;  // g_0
};

class ModelParams {
 public:
  /// Throws Error(InvariantViolation) unless gamma > 0, m >= 0, omega >= 0, all finite.
  ModelParams(double gamma, double m, double omega, std::optional<HamiltonianConstants> doc_only = std::nullopt);

  double gamma() const { return gamma_; }
  double m() const { return m_; }
  double omega() const { return omega_; }
  const std::optional<HamiltonianConstants>& doc_only() const { return doc_only_; }

  /// gamma (2m + 1): common decay rate of coherences and of the trace distance envelope.
  double decay_rate() const { return gamma_ * (2.0 * m_ + 1.0); }

  /// Stationary excited population of each atom, m / (2m + 1).
  double thermal_population() const { return m_ / (2.0 * m_ + 1.0); }

  ModelParams with_gamma(double g) const { return {g, m_, omega_, doc_only_}; }
  ModelParams with_m(double m) const { return {gamma_, m, omega_, doc_only_}; }
  ModelParams with_omega(double o) const { return {gamma_, m_, o, doc_only_}; }

  std::string describe() const;

 private:
  double gamma_;
  double m_;
  double omega_;
  std::optional<HamiltonianConstants> doc_only_;
};

template <class Sample>
struct Trajectory {
  std::vector<double> times;
  std::vector<Sample> samples;
};

// ---------------------------------------------------------------------------
// General master equation

/// d rho / dt of the master equation, written term by term as
///   (m+1) gamma / 2 sum_i ([s_i-, rho s_i+] + [s_i- rho, s_i+])
///   + m gamma / 2 sum_i ([s_i+, rho s_i-] + [s_i+ rho, s_i-])
///   - i [Omega (s1+ s2- + s1- s2+), rho].
CMatrix4 lindblad_rhs(const DensityMatrix4& rho, const ModelParams& p);

/// Same generator applied to an arbitrary (not necessarily physical) matrix.
CMatrix4 lindblad_generator(const CMatrix4& x, const ModelParams& p);

/// The generator as a 16x16 superoperator acting on row-major vec(rho).
class Liouvillian {
 public:
  explicit Liouvillian(const ModelParams& p);

  const CMatrix<16>& matrix() const { return l_; }

  /// exp(L dt) by scaling and squaring of a Taylor series.
  CMatrix<16> propagator(double dt) const;

 private:
  CMatrix<16> l_;
};

using StateVector = std::array<Complex, 16>;

StateVector vectorize(const CMatrix4& m);
CMatrix4 unvectorize(const StateVector& v);
StateVector matvec(const CMatrix<16>& op, const StateVector& v);

enum class StepControl {
  Fixed,         ///< fixed RK4 step
  StepDoubling,  ///< halve the step until the Richardson estimate per output interval is below tolerance
};

struct IntegratorOptions {
  StepControl control = StepControl::Fixed;
  /// Overrides the automatic step rule (used for negative controls).
  std::optional<double> step;
  double tolerance = 1e-10;
  double min_step = 1e-12;
};

struct SampleDiagnostics {
  double trace_before_renormalization = 1.0;
  double hermiticity_defect = 0.0;
  bool renormalized = false;
  double step = 0.0;
  double error_estimate = 0.0;  ///< Richardson estimate, step-doubling mode only
};

struct MasterTrajectory : Trajectory<DensityMatrix4> {
  std::vector<SampleDiagnostics> diagnostics;
  /// One line per sample whose trace drifted past 1e-12 and was renormalized.
  std::vector<std::string> drift_log;
};

/// Automatic RK4 step bound: 1e-3 / (gamma (2m+1) + 2 Omega).
double default_step_bound(const ModelParams& p);

/// Classic RK4 on vec(rho). The grid must start at 0 and be strictly increasing.
/// Throws Error(InvalidGrid) for a bad grid and Error(StepUnderflow) when step
/// doubling would need a step below options.min_step.
MasterTrajectory integrate_master(const DensityMatrix4& rho0, const ModelParams& p, std::span<const double> t_grid,
                                  const IntegratorOptions& options = {});

// ---------------------------------------------------------------------------
// X-state system

/// Time derivative of the six X-state components (not itself a state).
struct XStateRate {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Complex z{};
  Complex w{};
};

XStateRate xstate_rhs(const XState& x, const ModelParams& p);

/// Exact solution of the X-state equations from their decoupled linear blocks:
/// w and Re z decay at gamma (2m+1); (b - c, Im z) is a damped rotation at
/// angular frequency 2 Omega; (a, b + c, d) is a 3x3 constant-coefficient
/// system whose eigendecomposition is computed once at construction.
class XStatePropagator {
 public:
  explicit XStatePropagator(const ModelParams& p);

  XState operator()(const XState& x0, double t) const;

  const ModelParams& params() const { return params_; }
  /// Eigenvalues of the population block, descending (0, -gamma(2m+1), -2 gamma(2m+1)).
  const std::array<double, 3>& population_rates() const { return rates_; }

 private:
  ModelParams params_;
  std::array<double, 3> rates_{};
  std::array<std::array<double, 3>, 3> vectors_{};
  std::array<std::array<double, 3>, 3> inverse_{};
};

XState propagate_xstate_exact(const XState& x0, const ModelParams& p, double t);

/// Raw output of the published closed-form expressions; not a validated state.
struct XStateRecord {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Complex z{};
  Complex w{};
};

/// Evaluates the printed closed-form solution verbatim (including its cos(Omega t)
/// frequency and its t = 0 defects). Takes raw rates so that gamma = 0 is allowed.
XStateRecord eval_eq5_published(const XState& x0, double gamma, double m, double omega, double t);
XStateRecord eval_eq5_published(const XState& x0, const ModelParams& p, double t);

// ---------------------------------------------------------------------------
// Reduced populations of atom 1

/// Excited population of atom 1 for the initial two-atom state |10>.
double p_plus(const ModelParams& p, double t);
/// Excited population of atom 1 for the initial two-atom state |00>.
double p_minus(const ModelParams& p, double t);
/// 1 - p_plus, evaluated directly.
double q_plus(const ModelParams& p, double t);
inline double q_minus(const ModelParams& p, double t) { return 1.0 - p_minus(p, t); }

}  // namespace qmemory::dynamics
