#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "qmemory/cli/commands.hpp"
#include "qmemory/cli/csv.hpp"
#include "qmemory/error.hpp"
#include "qmemory/nonmarkov.hpp"

namespace qmemory::cli {

namespace {

// Runs fn(i) for i in [0, n) on a small worker pool. Results must be written
// to per-index slots by fn; ordering of execution is irrelevant.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void cmd_trace_distance(const RunConfig& config, std::ostream& out) {
  validate(config);
  const auto p = config.params();
  write_metadata(out, "trace-distance", config);
  write_row(out, {"t", "D", "sigma"});
  for (double t : config.time_grid()) {
    write_row(out, {format_number(t), format_number(nonmarkov::trace_distance_pair(p, t)),
                    format_number(nonmarkov::sigma_rate(p, t))});
  }
}

void cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& out) {
  validate(config);
  validate(sweep);
  const auto values = sweep.values();
  const auto grid = config.time_grid();
  // Validate every point up front so failures are reported before any work.
  for (double v : values) (void)with_param(config, sweep.param, v);

  struct Point {
    double value = 0.0;
    std::vector<double> d;
    int flag = 0;
  };
  std::vector<Point> points(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const auto p = with_param(config, sweep.param, values[i]);
    Point pt;
    pt.value = values[i];
    pt.d.reserve(grid.size());
    for (double t : grid) pt.d.push_back(nonmarkov::trace_distance_pair(p, t));
    pt.flag = nonmarkov::classify_dynamics(p, config.eps).regime == nonmarkov::Regime::NonMarkovian ? 1 : 0;
    points[i] = std::move(pt);
  });
  std::stable_sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.value < b.value; });

  write_metadata(out, "sweep", config);
  out << "# sweep param=" << to_string(sweep.param) << " from=" << format_number(sweep.from)
      << " to=" << format_number(sweep.to) << " points=" << sweep.points << '\n';
  write_row(out, {"sweep_param", "sweep_value", "t", "D", "N_flag"});
  const std::string name(to_string(sweep.param));
  for (const auto& pt : points) {
    const std::string value = format_number(pt.value);
    const std::string flag = std::to_string(pt.flag);
    for (std::size_t k = 0; k < grid.size(); ++k)
      write_row(out, {name, value, format_number(grid[k]), format_number(pt.d[k]), flag});
  }
}

std::string cmd_blp(const RunConfig& config, std::ostream* intervals_csv) {
  validate(config);
  const auto p = config.params();
  const auto result = nonmarkov::blp_measure(p);
  const auto regime = result.n_value > config.eps ? nonmarkov::Regime::NonMarkovian : nonmarkov::Regime::Markovian;
  if (intervals_csv) {
    write_metadata(*intervals_csv, "blp", config);
    write_row(*intervals_csv, {"t_start", "t_end", "gain"});
    for (const auto& iv : result.intervals)
      write_row(*intervals_csv, {format_number(iv.t_start), format_number(iv.t_end), format_number(iv.gain)});
  }
  return fmt::format("N={:.6f} class={} intervals={} tail<={:.3e}", result.n_value, nonmarkov::to_string(regime),
                     result.intervals.size(), result.tail_bound);
}

void cmd_entanglement(const RunConfig& config, const std::optional<SweepSpec>& gamma_family, std::ostream& out) {
  validate(config);
  const auto grid = config.time_grid();
  if (gamma_family) {
    validate(*gamma_family);
    if (gamma_family->param != SweepParam::Gamma)
      throw Error(ErrorKind::InvalidArgument, "entanglement family mode sweeps gamma only");
    const auto gammas = gamma_family->values();
    for (double g : gammas) (void)dynamics::ModelParams(g, config.m, 0.0);
    write_metadata(out, "entanglement", config);
    out << "# variant=" << entangle::to_string(config.variant) << '\n';
    out << "# critical line omega*t=pi/2; gamma from=" << format_number(gamma_family->from)
        << " to=" << format_number(gamma_family->to) << " points=" << gamma_family->points << '\n';
    write_row(out, {"gamma", "t", "E"});
    for (double g : gammas) {
      const std::string gs = format_number(g);
      for (double t : grid)
        write_row(out, {gs, format_number(t),
                        format_number(entangle::critical_line_entanglement(g, config.m, t, config.variant))});
    }
    return;
  }

  const auto p = config.params();
  write_metadata(out, "entanglement", config);
  out << "# variant=" << entangle::to_string(config.variant) << '\n';
  write_row(out, {"t", "E", "D"});
  for (double t : grid) {
    write_row(out, {format_number(t), format_number(entangle::entanglement(p, t, config.variant)),
                    format_number(nonmarkov::trace_distance_pair(p, t))});
  }
}

}  // namespace qmemory::cli
