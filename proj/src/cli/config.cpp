#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "qmemory/cli/config.hpp"
#include "qmemory/error.hpp"

namespace qmemory::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  // strtod is locale-sensitive; from_chars is not.
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw Error(ErrorKind::InvalidArgument, fmt::format("config key '{}': '{}' is not a number", key, value));
  return v;
}

int parse_int(std::string_view key, std::string_view value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw Error(ErrorKind::InvalidArgument, fmt::format("config key '{}': '{}' is not an integer", key, value));
  return v;
}

}  // namespace

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) t[k] = t_max * k / (steps - 1);
  return t;
}

void validate(const RunConfig& config) {
  if (config.steps < 2) throw Error(ErrorKind::InvalidArgument, fmt::format("steps must be >= 2 (got {})", config.steps));
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max))
    throw Error(ErrorKind::InvalidArgument, fmt::format("t_max must be > 0 (got {})", config.t_max));
  if (!(config.eps > 0.0)) throw Error(ErrorKind::InvalidArgument, fmt::format("eps must be > 0 (got {})", config.eps));
  (void)config.params();
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::InvalidArgument, fmt::format("config line {}: expected 'key = value'", line_no));
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "gamma") config.gamma = parse_double(key, value);
    else if (key == "m") config.m = parse_double(key, value);
    else if (key == "omega") config.omega = parse_double(key, value);
    else if (key == "t_max") config.t_max = parse_double(key, value);
    else if (key == "steps") config.steps = parse_int(key, value);
    else if (key == "eps") config.eps = parse_double(key, value);
    else if (key == "variant") config.variant = entangle::parse_variant(value);
    else if (key == "out") config.out = std::string(value);
    else throw Error(ErrorKind::InvalidArgument, fmt::format("config line {}: unknown key '{}'", line_no, key));
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot read config file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::Gamma: return "gamma";
    case SweepParam::M: return "m";
    case SweepParam::Omega: return "omega";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "gamma") return SweepParam::Gamma;
  if (name == "m") return SweepParam::M;
  if (name == "omega") return SweepParam::Omega;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown sweep parameter '{}' (expected gamma|m|omega)", name));
}

std::vector<double> SweepSpec::values() const {
  if (points == 1) return {from};
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) v[k] = from + (to - from) * k / (points - 1);
  return v;
}

void validate(const SweepSpec& spec) {
  if (spec.points < 1) throw Error(ErrorKind::InvalidArgument, "sweep points must be >= 1");
  if (!(spec.from <= spec.to)) throw Error(ErrorKind::InvalidArgument, "sweep requires from <= to");
}

dynamics::ModelParams with_param(const RunConfig& config, SweepParam param, double value) {
  switch (param) {
    case SweepParam::Gamma: return {value, config.m, config.omega};
    case SweepParam::M: return {config.gamma, value, config.omega};
    case SweepParam::Omega: return {config.gamma, config.m, value};
  }
  return config.params();
}

}  // namespace qmemory::cli
