#include <fmt/format.h>

#include "qmemory/cli/csv.hpp"

namespace qmemory::cli {

std::string format_number(double v) { return fmt::format("{:.8e}", v); }

void write_metadata(std::ostream& out, std::string_view command, const RunConfig& config) {
  out << "# " << kToolName << ' ' << kToolVersion << '\n';
  out << "# command=" << command << '\n';
  out << "# gamma=" << format_number(config.gamma) << " m=" << format_number(config.m)
      << " omega=" << format_number(config.omega) << " t_max=" << format_number(config.t_max)
      << " steps=" << config.steps << " eps=" << format_number(config.eps)
      << " variant=" << entangle::to_string(config.variant) << '\n';
}

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

}  // namespace qmemory::cli
