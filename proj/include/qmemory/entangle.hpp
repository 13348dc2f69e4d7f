#pragma once

// Entanglement between atom 1 and its structured bath (atom 2 plus both
// reservoirs), evaluated from the reduced populations of atom 1.

#include <string_view>

#include "qmemory/dynamics.hpp"

namespace qmemory::entangle {

using dynamics::ModelParams;

enum class EntanglementVariant {
  /// -p+ log2 p+ - p- log2 p-, mixing populations from the |10> and |00> runs.
  Eq13Literal,
  /// Von Neumann entropy of diag(p+, 1 - p+), the reduced state of the |10> run.
  SubsystemEntropy,
};

inline constexpr EntanglementVariant kDefaultVariant = EntanglementVariant::Eq13Literal;

std::string_view to_string(EntanglementVariant v);
/// Accepts "eq13" / "eq13_literal" and "entropy" / "subsystem_entropy"; throws Error(InvalidArgument) otherwise.
EntanglementVariant parse_variant(std::string_view text);

/// Bits. Throws Error(InvalidArgument) for t < 0.
double entanglement(const ModelParams& p, double t, EntanglementVariant variant = kDefaultVariant);

/// Long-time limit, from q = m / (1 + 2m); independent of gamma and Omega.
double steady_entanglement(double m, EntanglementVariant variant = kDefaultVariant);

/// Entanglement at the first revival t* = pi / (2 Omega), where p+ = p-.
/// Throws Error(OmegaZero) when Omega = 0.
double entanglement_at_revival(const ModelParams& p, EntanglementVariant variant = kDefaultVariant);

/// Entanglement on the critical line Omega t = pi / 2: at each t > 0 the coupling
/// is set to pi / (2t). Returns 0 at t = 0 (the separable initial state).
double critical_line_entanglement(double gamma, double m, double t, EntanglementVariant variant = kDefaultVariant);

}  // namespace qmemory::entangle
