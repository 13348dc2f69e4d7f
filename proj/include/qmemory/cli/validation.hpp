#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qmemory::cli {

struct ValidationOptions {
  /// Forces the RK4 step of the oracle integrator (negative control).
  std::optional<double> rk4_step;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// One row of the published-closed-form discrepancy table.
struct DiscrepancyRow {
  std::string label;       ///< e.g. "eq5.b(0)"
  std::string condition;   ///< e.g. "gamma=0,b0=1"
  double published = 0.0;
  double expected = 0.0;
  bool discrepant = false;

  std::string format() const;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<DiscrepancyRow> discrepancies;

  bool all_passed() const;
};

/// The published closed form evaluated against the exact dynamics at t = 0 and
/// on the oscillation frequency.
std::vector<DiscrepancyRow> eq5_discrepancy_table();

ValidationReport run_validation(const ValidationOptions& options = {});

void print_report(const ValidationReport& report, std::ostream& out);

}  // namespace qmemory::cli
