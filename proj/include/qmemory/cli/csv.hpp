#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

#include "qmemory/cli/config.hpp"

namespace qmemory::cli {

/// Nine significant digits in scientific notation, independent of locale.
std::string format_number(double v);

/// `#` lines: tool version, command name and the full parameter echo.
void write_metadata(std::ostream& out, std::string_view command, const RunConfig& config);

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace qmemory::cli
