#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmemory/dynamics.hpp"
#include "qmemory/entangle.hpp"

namespace qmemory::cli {

inline constexpr const char* kToolName = "qmemory";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
  double gamma = 0.2;
  double m = 0.5;
  double omega = 0.8;
  double t_max = 20.0;
  int steps = 201;
  double eps = 1e-3;
  entangle::EntanglementVariant variant = entangle::kDefaultVariant;
  std::string out;  ///< empty: standard output

  dynamics::ModelParams params() const { return {gamma, m, omega}; }
  /// steps samples uniformly spaced on [0, t_max].
  std::vector<double> time_grid() const;
};

/// Throws Error(InvalidArgument / InvariantViolation) describing the first bad field.
void validate(const RunConfig& config);

/// Applies `key = value` lines (with `#` comments) onto config. Recognized keys:
/// gamma, m, omega, t_max, steps, eps, variant, out. Throws Error(InvalidArgument)
/// for unknown keys or malformed lines.
void apply_config_text(RunConfig& config, std::string_view text);

/// Throws Error(Io) if the file cannot be read.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

enum class SweepParam { Gamma, M, Omega };

std::string_view to_string(SweepParam p);
/// Throws Error(InvalidArgument) for names other than gamma, m, omega.
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
  SweepParam param = SweepParam::Omega;
  double from = 0.0;
  double to = 1.0;
  int points = 11;

  std::vector<double> values() const;
};

void validate(const SweepSpec& spec);

dynamics::ModelParams with_param(const RunConfig& config, SweepParam param, double value);

}  // namespace qmemory::cli
