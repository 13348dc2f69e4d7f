#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qmemory/entangle.hpp"
#include "qmemory/error.hpp"

namespace qmemory::entangle {

namespace {

double binary_entropy(double p) {
  const densmat::DensityMatrix2 rho(densmat::CMatrix2::diagonal({p, 1.0 - p}));
  return densmat::von_neumann_entropy(rho);
}

double from_populations(double p_excited_10, double p_excited_00, EntanglementVariant variant) {
  if (variant == EntanglementVariant::Eq13Literal)
    return densmat::entropy_term(p_excited_10) + densmat::entropy_term(p_excited_00);
  return binary_entropy(p_excited_10);
}

}  // namespace

std::string_view to_string(EntanglementVariant v) {
  return v == EntanglementVariant::Eq13Literal ? "eq13_literal" : "subsystem_entropy";
}

EntanglementVariant parse_variant(std::string_view text) {
  if (text == "eq13" || text == "eq13_literal") return EntanglementVariant::Eq13Literal;
  if (text == "entropy" || text == "subsystem_entropy") return EntanglementVariant::SubsystemEntropy;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown entanglement variant '{}'", text));
}

double entanglement(const ModelParams& p, double t, EntanglementVariant variant) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "time must be >= 0");
  return from_populations(dynamics::p_plus(p, t), dynamics::p_minus(p, t), variant);
}

double steady_entanglement(double m, EntanglementVariant variant) {
  if (!(m >= 0.0)) throw Error(ErrorKind::InvalidArgument, "m must be >= 0");
  const double q = m / (1.0 + 2.0 * m);
  return from_populations(q, q, variant);
}

double entanglement_at_revival(const ModelParams& p, EntanglementVariant variant) {
  if (p.omega() == 0.0) throw Error(ErrorKind::OmegaZero, "no revival time exists for Omega = 0");
  return entanglement(p, std::numbers::pi / (2.0 * p.omega()), variant);
}

double critical_line_entanglement(double gamma, double m, double t, EntanglementVariant variant) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "time must be >= 0");
  if (t == 0.0) return 0.0;
  return entanglement_at_revival(ModelParams(gamma, m, std::numbers::pi / (2.0 * t)), variant);
}

}  // namespace qmemory::entangle
