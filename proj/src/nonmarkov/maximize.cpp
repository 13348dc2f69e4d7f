#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qmemory/error.hpp"
#include "qmemory/nonmarkov.hpp"

namespace qmemory::nonmarkov {

namespace {

using densmat::CMatrix2;
using densmat::CMatrix4;
using densmat::Complex;
using densmat::DensityMatrix2;

// Sampled increments below this are integration round-off, not backflow.
constexpr double kIncrementFloor = 1e-12;

struct Candidate {
  std::array<Complex, 4> amplitudes;
  std::string label;
};

std::string qubit_label(int k, int grid_size, double theta) {
  if (k == 0) return "1";
  if (k == grid_size - 1) return "0";
  return fmt::format("{:.6f}", theta);
}

std::array<double, 2> qubit_amplitudes(int k, int grid_size, double theta) {
  if (k == 0) return {1.0, 0.0};
  if (k == grid_size - 1) return {0.0, 1.0};
  return {std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

std::vector<Candidate> product_states(int grid_size) {
  std::vector<Candidate> out;
  for (int i = 0; i < grid_size; ++i) {
    const double t1 = std::numbers::pi * i / (grid_size - 1);
    const auto q1 = qubit_amplitudes(i, grid_size, t1);
    const std::string l1 = qubit_label(i, grid_size, t1);
    for (int j = 0; j < grid_size; ++j) {
      const double t2 = std::numbers::pi * j / (grid_size - 1);
      const auto q2 = qubit_amplitudes(j, grid_size, t2);
      const std::string l2 = qubit_label(j, grid_size, t2);
      const std::string sep = (l1.size() == 1 && l2.size() == 1) ? "" : ",";
      out.push_back({{q1[0] * q2[0], q1[0] * q2[1], q1[1] * q2[0], q1[1] * q2[1]}, "|" + l1 + sep + l2 + ">"});
    }
  }
  return out;
}

CMatrix2 reduce(const CMatrix4& rho) {
  CMatrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return (r + r.adjoint()) * Complex(0.5);
}

BlpResult sampled_backflow(const std::vector<DensityMatrix2>& x, const std::vector<DensityMatrix2>& y,
                           const std::vector<double>& times) {
  BlpResult r;
  double prev = densmat::trace_distance(x[0], y[0]);
  bool open = false;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double cur = densmat::trace_distance(x[k], y[k]);
    const double inc = cur - prev;
    if (inc > kIncrementFloor) {
      if (!open) r.intervals.push_back({times[k - 1], times[k], 0.0});
      open = true;
      r.intervals.back().t_end = times[k];
      r.intervals.back().gain += inc;
      r.n_value += inc;
    } else {
      open = false;
    }
    prev = cur;
  }
  return r;
}

bool better(const BlpResult& a, const BlpResult& b) {
  if (a.n_value != b.n_value) return a.n_value > b.n_value;
  return a.pair_label < b.pair_label;
}

}  // namespace

BlpResult blp_maximized(const ModelParams& p, const MaximizeOptions& opts) {
  if (opts.grid_size < 2) throw Error(ErrorKind::InvalidGrid, fmt::format("grid_size must be >= 2 (got {})", opts.grid_size));

  BlpResult best = blp_measure(p, opts.blp);
  const double dt = opts.blp.dt.value_or(default_scan_step(p));
  const double t_max = best.truncation_time;

  const auto states = product_states(opts.grid_size);
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt));
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) * dt;

  const densmat::CMatrix<16> step = dynamics::Liouvillian(p).propagator(dt);
  std::vector<std::vector<DensityMatrix2>> reduced(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    dynamics::StateVector v = dynamics::vectorize(densmat::DensityMatrix4::pure(states[s].amplitudes).matrix());
    reduced[s].reserve(steps + 1);
    reduced[s].emplace_back(reduce(dynamics::unvectorize(v)));
    for (std::size_t k = 1; k <= steps; ++k) {
      v = dynamics::matvec(step, v);
      reduced[s].emplace_back(reduce(dynamics::unvectorize(v)));
    }
  }

  const std::size_t g = static_cast<std::size_t>(opts.grid_size);
  const std::size_t reference_first = g - 1;       // |10>
  const std::size_t reference_second = g * g - 1;  // |00>
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t r = s + 1; r < states.size(); ++r) {
      if (s == reference_first && r == reference_second) continue;
      BlpResult candidate = sampled_backflow(reduced[s], reduced[r], times);
      candidate.pair_label = states[s].label + "/" + states[r].label;
      candidate.truncation_time = t_max;
      candidate.tail_bound = best.tail_bound;
      if (better(candidate, best)) best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace qmemory::nonmarkov
