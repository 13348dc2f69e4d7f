#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qmemory/error.hpp"
#include "qmemory/nonmarkov.hpp"

namespace qmemory::nonmarkov {

namespace {

constexpr double kBisectionTol = 1e-10;

// lo has sigma <= 0, hi has sigma > 0 (or the reverse); returns the crossing.
double bisect_sign_change(const ModelParams& p, double lo, double hi, double tol) {
  const bool lo_positive = sigma_rate(p, lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((sigma_rate(p, mid) > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Regime r) { return r == Regime::Markovian ? "Markovian" : "NonMarkovian"; }

double default_scan_step(const ModelParams& p) { return 0.01 / std::max(p.omega(), p.decay_rate()); }

double default_truncation_time(const ModelParams& p) { return 30.0 / p.decay_rate(); }

BlpResult blp_measure(const ModelParams& p, const BlpOptions& opts) {
  const double dt = opts.dt.value_or(default_scan_step(p));
  const double t_max = opts.t_max.value_or(default_truncation_time(p));
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidGrid, fmt::format("dt must be > 0 (got {})", dt));
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorKind::InvalidGrid, fmt::format("t_max must be > 0 (got {})", t_max));

  BlpResult result;
  result.pair_label = kReferencePairLabel;
  result.truncation_time = t_max;
  result.tail_bound = std::exp(-p.decay_rate() * t_max);

  const auto close = [&](double start, double end) {
    const double gain = std::max(0.0, trace_distance_pair(p, end) - trace_distance_pair(p, start));
    result.intervals.push_back({start, end, gain});
    result.n_value += gain;
  };

  bool rising = sigma_rate(p, 0.0) > 0.0;
  double start = 0.0;
  double prev_t = 0.0;
  const auto steps = static_cast<long>(std::ceil(t_max / dt));
  for (long k = 1; k <= steps; ++k) {
    const double t = std::min(t_max, static_cast<double>(k) * dt);
    const bool positive = sigma_rate(p, t) > 0.0;
    if (positive != rising) {
      const double crossing = bisect_sign_change(p, prev_t, t, kBisectionTol);
      if (positive)
        start = crossing;
      else
        close(start, crossing);
      rising = positive;
    }
    prev_t = t;
  }
  if (rising) close(start, t_max);
  return result;
}

double backflow_riemann(const ModelParams& p, double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw Error(ErrorKind::InvalidGrid, "dt and t_max must be > 0");
  const auto steps = static_cast<long>(std::floor(t_max / dt));
  double sum = 0.0;
  for (long k = 0; k < steps; ++k) sum += std::max(0.0, sigma_rate(p, static_cast<double>(k) * dt));
  return sum * dt;
}

std::optional<double> first_revival_time(const ModelParams& p) {
  if (p.omega() == 0.0) return std::nullopt;
  // cos^2(Omega t) has period pi / Omega, so a revival must begin within one period.
  const double horizon = std::numbers::pi / p.omega() * 1.01;
  const double dt = default_scan_step(p);
  double prev_t = 0.0;
  bool prev_positive = sigma_rate(p, 0.0) > 0.0;
  const auto steps = static_cast<long>(std::ceil(horizon / dt));
  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const bool positive = sigma_rate(p, t) > 0.0;
    if (positive && !prev_positive) return bisect_sign_change(p, prev_t, t, 0.0);
    prev_positive = positive;
    prev_t = t;
  }
  return std::nullopt;
}

Classification classify_dynamics(const ModelParams& p, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, fmt::format("eps must be > 0 (got {})", eps));
  const double n = blp_measure(p).n_value;
  return {n > eps ? Regime::NonMarkovian : Regime::Markovian, n};
}

}  // namespace qmemory::nonmarkov
