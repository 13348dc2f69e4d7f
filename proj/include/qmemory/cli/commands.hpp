#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "qmemory/cli/config.hpp"

namespace qmemory::cli {

/// Columns t,D,sigma for the |10>/|00> pair.
void cmd_trace_distance(const RunConfig& config, std::ostream& out);

/// Long format sweep_param,sweep_value,t,D,N_flag; N_flag is 1 when the sweep
/// point classifies as NonMarkovian at config.eps. Points are evaluated in
/// parallel and emitted sorted by (sweep_value, t).
void cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& out);

/// Returns the one-line report `N=... class=... intervals=... tail<=...`.
/// If intervals_csv is given, writes t_start,t_end,gain rows to it.
std::string cmd_blp(const RunConfig& config, std::ostream* intervals_csv = nullptr);

/// Columns t,E,D. With a gamma family, columns gamma,t,E evaluated on the
/// critical line Omega t = pi/2 (config.omega is not used in that mode).
void cmd_entanglement(const RunConfig& config, const std::optional<SweepSpec>& gamma_family, std::ostream& out);

}  // namespace qmemory::cli
