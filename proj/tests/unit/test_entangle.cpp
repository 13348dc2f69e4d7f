#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmemory/dynamics.hpp"
#include "qmemory/entangle.hpp"
#include "qmemory/error.hpp"
#include "support/generators.hpp"

using namespace qmemory;
using namespace qmemory::entangle;
using qmemory::testing::Gen;
using qmemory::testing::thrown_kind;

namespace {

constexpr auto kLiteral = EntanglementVariant::Eq13Literal;
constexpr auto kEntropy = EntanglementVariant::SubsystemEntropy;

const ModelParams kRef(0.2, 0.5, 0.8);

double binary_entropy(double x) { return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x); }

}  // namespace

TEST_CASE("variant names") {
  CHECK(to_string(kLiteral) == "eq13_literal");
  CHECK(to_string(kEntropy) == "subsystem_entropy");
  CHECK(parse_variant("eq13") == kLiteral);
  CHECK(parse_variant("eq13_literal") == kLiteral);
  CHECK(parse_variant("entropy") == kEntropy);
  CHECK(parse_variant("subsystem_entropy") == kEntropy);
  CHECK(thrown_kind([] { (void)parse_variant("renyi"); }) == ErrorKind::InvalidArgument);
  CHECK(kDefaultVariant == kLiteral);
}

TEST_CASE("separable initial state carries no entanglement") {
  Gen gen(301);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = gen.params();
    CHECK(entanglement(p, 0.0, kLiteral) == 0.0);
    CHECK(entanglement(p, 0.0, kEntropy) == 0.0);
  }
  CHECK(thrown_kind([] { (void)entanglement(kRef, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("steady values") {
  CHECK(steady_entanglement(0.0, kLiteral) == 0.0);
  CHECK(steady_entanglement(0.0, kEntropy) == 0.0);
  CHECK(steady_entanglement(0.5, kLiteral) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(steady_entanglement(0.5, kEntropy) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(steady_entanglement(2.0, kEntropy) == doctest::Approx(0.9709505944546686).epsilon(1e-14));

  double prev_l = -1.0, prev_e = -1.0;
  for (double m : {0.1, 0.5, 1.0, 2.0}) {
    const double l = steady_entanglement(m, kLiteral);
    const double e = steady_entanglement(m, kEntropy);
    CHECK(l > prev_l);
    CHECK(e > prev_e);
    prev_l = l;
    prev_e = e;
  }
}

TEST_CASE("finite-time values converge to the steady value for every gamma") {
  for (double m : {0.1, 0.5, 2.0})
    for (double g : {0.1, 0.2, 0.5}) {
      const ModelParams p(g, m, 0.8);
      const double t = 30.0 / p.decay_rate();
      for (auto v : {kLiteral, kEntropy}) {
        CHECK(std::abs(entanglement(p, t, v) - steady_entanglement(m, v)) <= 1e-4);
        CHECK(std::abs(entanglement(p, 2.0 * t, v) - steady_entanglement(m, v)) <= 1e-9);
      }
    }
}

TEST_CASE("value at the first revival") {
  const double t_star = std::numbers::pi / 1.6;
  const double p_star = (1.0 - std::exp(-std::numbers::pi / 4.0)) / 4.0;
  CHECK(std::abs(dynamics::p_plus(kRef, t_star) - dynamics::p_minus(kRef, t_star)) <= 1e-12);
  CHECK(std::abs(dynamics::p_plus(kRef, t_star) - p_star) <= 1e-12);
  CHECK(std::abs(p_star - 0.136015) <= 5e-7);
  // -2 p log2 p at p = (1 - e^{-pi/4}) / 4, evaluated at 30 digits.
  CHECK(std::abs(entanglement_at_revival(kRef, kLiteral) - 0.78294784277635969881) <= 1e-12);
  CHECK(std::abs(entanglement_at_revival(kRef, kEntropy) - binary_entropy(p_star)) <= 1e-12);
  CHECK(thrown_kind([] { (void)entanglement_at_revival(kRef.with_omega(0.0)); }) == ErrorKind::OmegaZero);

  const double strong = entanglement_at_revival(ModelParams(10.0, 0.5, 0.8), kLiteral);
  CHECK(std::abs(strong - 1.0) <= 1e-12);
}

TEST_CASE("critical line") {
  CHECK(critical_line_entanglement(0.2, 0.5, 0.0) == 0.0);
  const double t_star = std::numbers::pi / 1.6;
  CHECK(critical_line_entanglement(0.2, 0.5, t_star) == doctest::Approx(entanglement_at_revival(kRef)).epsilon(1e-14));
  Gen gen(302);
  for (int trial = 0; trial < 200; ++trial) {
    const double g = gen.uniform(0.05, 1.0), m = gen.uniform(0.0, 2.0), t = gen.uniform(0.01, 30.0);
    // On the line p+ = p-, so the literal variant is twice one entropy term.
    const double p = m * (1.0 - std::exp(-g * (2.0 * m + 1.0) * t)) / (2.0 * m + 1.0);
    const double want = p > 0.0 ? -2.0 * p * std::log2(p) : 0.0;
    CHECK(std::abs(critical_line_entanglement(g, m, t) - want) <= 1e-12);
  }
}

TEST_CASE("ranges and link to the full density matrix") {
  Gen gen(303);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = gen.params();
    const double t = gen.uniform(0.0, 30.0);
    const double l = entanglement(p, t, kLiteral);
    const double e = entanglement(p, t, kEntropy);
    CHECK(l >= 0.0);
    CHECK(l <= 2.0);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0 + 1e-15);
  }

  const ModelParams p(0.3, 1.0, 0.6);
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.5 * k);
  const auto run = dynamics::integrate_master(densmat::embed_xstate(densmat::XState::basis_10()), p, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double s = densmat::von_neumann_entropy(densmat::partial_trace_qubit2(run.samples[k]));
    CHECK(std::abs(entanglement(p, times[k], kEntropy) - s) <= 1e-8);
  }
}
