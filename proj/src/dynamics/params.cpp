#include <cmath>

#include <fmt/format.h>

#include "qmemory/dynamics.hpp"
#include "qmemory/error.hpp"

namespace qmemory::dynamics {

ModelParams::ModelParams(double gamma, double m, double omega, std::optional<HamiltonianConstants> doc_only)
    : gamma_(gamma), m_(m), omega_(omega), doc_only_(doc_only) {
  if (!std::isfinite(gamma) || !std::isfinite(m) || !std::isfinite(omega))
    throw Error(ErrorKind::InvariantViolation, "model parameters must be finite");
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvariantViolation, fmt::format("gamma must be > 0 (got {})", gamma));
  if (!(m >= 0.0)) throw Error(ErrorKind::InvariantViolation, fmt::format("m must be >= 0 (got {})", m));
  if (!(omega >= 0.0)) throw Error(ErrorKind::InvariantViolation, fmt::format("omega must be >= 0 (got {})", omega));
}

std::string ModelParams::describe() const { return fmt::format("gamma={} m={} omega={}", gamma_, m_, omega_); }

}  // namespace qmemory::dynamics
