#pragma once

// Distinguishability of atom 1 for the initial pair |10> / |00>, its rate of
// change sigma, and the trace-distance (BLP) measure of information backflow.

#include <optional>
#include <string>
#include <vector>

#include "qmemory/dynamics.hpp"

namespace qmemory::nonmarkov {

using dynamics::ModelParams;

struct IncreaseInterval {
  double t_start = 0.0;
  double t_end = 0.0;
  double gain = 0.0;  ///< D(t_end) - D(t_start)
};

struct BlpResult {
  double n_value = 0.0;
  std::vector<IncreaseInterval> intervals;
  std::string pair_label;
  double truncation_time = 0.0;
  /// Upper bound on backflow beyond truncation_time, from the envelope e^{-gamma(2m+1) t}.
  double tail_bound = 0.0;
};

inline constexpr const char* kReferencePairLabel = "|10>/|00>";

/// D = (|p+ - p-| + |q+ - q-|) / 2 from the reduced populations.
double trace_distance_pair(const ModelParams& p, double t);

/// Simplified form of the same quantity, e^{-gamma(2m+1) t} cos^2(Omega t).
double trace_distance_closed_form(const ModelParams& p, double t);

/// dD/dt = e^{-g t} cos(Omega t) (-g cos(Omega t) - 2 Omega sin(Omega t)), g = gamma(2m+1).
double sigma_rate(const ModelParams& p, double t);

struct BlpOptions {
  std::optional<double> dt;     ///< default 0.01 / max(Omega, gamma(2m+1))
  std::optional<double> t_max;  ///< default 30 / (gamma(2m+1))
};

double default_scan_step(const ModelParams& p);
double default_truncation_time(const ModelParams& p);

/// Scans sigma at resolution dt, refines each sign change by bisection to 1e-10
/// and sums D(t_end) - D(t_start) over the increase intervals up to t_max.
/// Throws Error(InvalidGrid) for nonpositive dt or t_max.
BlpResult blp_measure(const ModelParams& p, const BlpOptions& opts = {});

/// Riemann sum of max(sigma, 0) on a uniform grid; an independent route to N.
double backflow_riemann(const ModelParams& p, double dt, double t_max);

struct MaximizeOptions {
  int grid_size = 5;  ///< polar angles per qubit, evenly spaced on [0, pi]
  BlpOptions blp;
};

/// Maximizes N over pairs of product pure initial states
/// (cos(theta1/2)|1> + sin(theta1/2)|0>) (x) (cos(theta2/2)|1> + sin(theta2/2)|0>).
/// The |10>/|00> pair is always a candidate and is scored with blp_measure;
/// other pairs use the sampled trace distance of atom 1. Ties go to the
/// lexicographically smaller label. Throws Error(InvalidGrid) if grid_size < 2.
BlpResult blp_maximized(const ModelParams& p, const MaximizeOptions& opts = {});

/// Smallest t > 0 where sigma goes from <= 0 to > 0; nullopt when Omega = 0.
std::optional<double> first_revival_time(const ModelParams& p);

enum class Regime { Markovian, NonMarkovian };

std::string_view to_string(Regime r);

struct Classification {
  Regime regime = Regime::Markovian;
  double n_value = 0.0;
};

inline constexpr double kDefaultEps = 1e-3;

/// NonMarkovian iff blp_measure(p).n_value > eps. Throws Error(InvalidArgument) if eps <= 0.
Classification classify_dynamics(const ModelParams& p, double eps = kDefaultEps);

}  // namespace qmemory::nonmarkov
