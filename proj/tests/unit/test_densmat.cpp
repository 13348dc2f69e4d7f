#include <doctest.h>

#include <cmath>
#include <numbers>
#include <type_traits>

#include "qmemory/densmat.hpp"
#include "qmemory/error.hpp"
#include "support/generators.hpp"

using namespace qmemory;
using namespace qmemory::densmat;
using qmemory::testing::Gen;
using qmemory::testing::thrown_kind;

namespace {

DensityMatrix4 projector4(std::size_t i) {
  std::array<Complex, 4> amp{};
  amp[i] = 1.0;
  return DensityMatrix4::pure(amp);
}

DensityMatrix2 diag2(double p) { return DensityMatrix2(CMatrix2::diagonal({p, 1.0 - p})); }

}  // namespace

TEST_CASE("eigenvalues of small fixed matrices") {
  const auto d = hermitian_eigenvalues(CMatrix2::diagonal({0.3, 0.7}));
  CHECK(d[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(0.3).epsilon(1e-15));

  const auto px = hermitian_eigenvalues(CMatrix2::from_rows({0.0, 1.0, 1.0, 0.0}));
  CHECK(px[0] == doctest::Approx(1.0));
  CHECK(px[1] == doctest::Approx(-1.0));

  const auto py = hermitian_eigenvalues(CMatrix2::from_rows({0.0, Complex(0, -1), Complex(0, 1), 0.0}));
  CHECK(py[0] == doctest::Approx(1.0));
  CHECK(py[1] == doctest::Approx(-1.0));

  const auto e4 = hermitian_eigenvalues(CMatrix4::diagonal({0.1, 0.4, -2.0, 0.4}));
  CHECK(e4 == std::array<double, 4>{0.4, 0.4, 0.1, -2.0});
}

TEST_CASE("4x4 eigenvalues match the characteristic polynomial roots") {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gen.hermitian<4>();
    const auto got = hermitian_eigenvalues(a);
    const auto want = qmemory::testing::charpoly_eigenvalues(a);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9);
  }
}

TEST_CASE("2x2 eigenvalues match the characteristic polynomial roots") {
  Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gen.hermitian<2>();
    const auto got = hermitian_eigenvalues(a);
    const auto want = qmemory::testing::charpoly_eigenvalues(a);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9);
  }
}

TEST_CASE("eigenvalue properties: sum is the trace, unitary invariance, sorted") {
  Gen gen(13);
  // Hadamard on both qubits.
  const double h = 1.0 / std::numbers::sqrt2;
  const auto had = CMatrix2::from_rows({h, h, h, -h});
  const auto u = kron(had, had);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gen.hermitian<4>(3.0);
    const auto e = hermitian_eigenvalues(a);
    CHECK(e[0] + e[1] + e[2] + e[3] == doctest::Approx(a.trace().real()).epsilon(1e-12));
    CHECK(std::is_sorted(e.begin(), e.end(), std::greater<>()));
    const auto rotated = hermitian_eigenvalues(u * a * u.adjoint());
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(rotated[k] - e[k]) <= 1e-11);
  }
}

TEST_CASE("eigenvalues reject non-Hermitian input") {
  auto m = CMatrix4::identity();
  m(0, 1) = 0.5;
  CHECK(thrown_kind([&] { (void)hermitian_eigenvalues(m); }) == ErrorKind::NonHermitian);
  CHECK(thrown_kind([&] { (void)hermitian_eigenvalues(CMatrix2::from_rows({1.0, 1e-3, 0.0, 1.0})); }) ==
        ErrorKind::NonHermitian);
}

TEST_CASE("density matrix construction validates every invariant") {
  CHECK(thrown_kind([] { DensityMatrix2(CMatrix2::diagonal({0.5, 0.4})); }) == ErrorKind::InvariantViolation);
  CHECK(thrown_kind([] { DensityMatrix2(CMatrix2::diagonal({1.2, -0.2})); }) == ErrorKind::InvariantViolation);
  CHECK(thrown_kind([] { DensityMatrix2(CMatrix2::from_rows({0.5, 0.1, 0.2, 0.5})); }) ==
        ErrorKind::InvariantViolation);
  CHECK(thrown_kind([] { DensityMatrix2(CMatrix2::diagonal({std::nan(""), 1.0})); }) ==
        ErrorKind::InvariantViolation);
  CHECK_FALSE(thrown_kind([] { DensityMatrix2(CMatrix2::diagonal({1.0 + 5e-11, -5e-11})); }));
  CHECK_FALSE(thrown_kind([] { DensityMatrix4(CMatrix4::identity() * 0.25); }));
}

TEST_CASE("operations on mismatched dimensions do not compile") {
  static_assert(!std::is_invocable_v<decltype(&trace_distance<2>), const DensityMatrix2&, const DensityMatrix4&>);
  static_assert(!std::is_constructible_v<DensityMatrix2, CMatrix4>);
  static_assert(!std::is_invocable_v<decltype(&partial_trace_qubit2), const DensityMatrix2&>);
  CHECK(true);
}

TEST_CASE("embed and extract X states") {
  const auto rho10 = embed_xstate(XState::basis_10());
  CHECK(rho10 == projector4(1));

  const XState mixed{0.25, 0.25, 0.25, 0.25, {}, {}};
  CHECK(embed_xstate(mixed).matrix() == CMatrix4::identity() * 0.25);
  CHECK(extract_xstate(DensityMatrix4(CMatrix4::identity() * 0.25)) == mixed);

  const XState bell{0.0, 0.5, 0.5, 0.0, {0.5, 0.0}, {}};
  const auto rb = embed_xstate(bell);
  CHECK(rb(1, 2) == Complex(0.5, 0.0));
  CHECK(rb(2, 1) == Complex(0.5, 0.0));

  Gen gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = gen.xstate();
    CHECK(extract_xstate(embed_xstate(x)) == x);
  }
}

TEST_CASE("X state validation and off-pattern detection") {
  CHECK(thrown_kind([] { validate(XState{0.5, 0.5, 0.1, 0.0, {}, {}}); }) == ErrorKind::InvariantViolation);
  CHECK(thrown_kind([] { validate(XState{0.0, 0.5, 0.5, 0.0, {0.6, 0.0}, {}}); }) ==
        ErrorKind::InvariantViolation);
  CHECK(thrown_kind([] { validate(XState{0.5, 0.0, 0.0, 0.5, {}, {0.0, 0.51}}); }) ==
        ErrorKind::InvariantViolation);
  CHECK_FALSE(thrown_kind([] { validate(XState{0.0, 0.5, 0.5, 0.0, {0.5, 0.0}, {}}); }));

  auto m = CMatrix4::identity() * 0.25;
  m(0, 1) = 0.1;
  m(1, 0) = 0.1;
  const DensityMatrix4 rho(m);
  const auto kind = thrown_kind([&] { (void)extract_xstate(rho); });
  CHECK(kind == ErrorKind::NotXForm);
  try {
    (void)extract_xstate(rho);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("|11>,|10>") != std::string::npos);
  }
}

TEST_CASE("partial trace over atom 2") {
  CHECK(partial_trace_qubit2(projector4(1)).matrix() == CMatrix2::diagonal({1.0, 0.0}));
  CHECK(partial_trace_qubit2(DensityMatrix4(CMatrix4::identity() * 0.25)).matrix() ==
        CMatrix2::diagonal({0.5, 0.5}));
  const double h = 1.0 / std::numbers::sqrt2;
  const auto bell = DensityMatrix4::pure({0.0, h, h, 0.0});
  const auto red = partial_trace_qubit2(bell);
  CHECK(std::abs(red(0, 0).real() - 0.5) < 1e-15);
  CHECK(std::abs(red(1, 1).real() - 0.5) < 1e-15);
  CHECK(std::abs(red(0, 1)) < 1e-15);

  // Product states reduce to the first factor.
  Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r1 = gen.density<2>();
    const auto r2 = gen.density<2>();
    const auto red12 = partial_trace_qubit2(DensityMatrix4(kron(r1.matrix(), r2.matrix())));
    CHECK((red12.matrix() - r1.matrix()).max_abs() < 1e-14);
  }
}

TEST_CASE("trace distance fixed values") {
  CHECK(trace_distance(diag2(0.3), diag2(0.3)) == 0.0);
  CHECK(trace_distance(diag2(1.0), diag2(0.0)) == doctest::Approx(1.0));
  CHECK(trace_distance(diag2(0.6), diag2(0.25)) == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(trace_distance(projector4(0), projector4(3)) == doctest::Approx(1.0));
}

TEST_CASE("trace distance is a bounded, symmetric metric") {
  Gen gen(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = gen.density<4>(static_cast<std::size_t>(gen.integer(1, 4)));
    const auto s = gen.density<4>(static_cast<std::size_t>(gen.integer(1, 4)));
    const auto u = gen.density<4>();
    const double rs = trace_distance(r, s);
    CHECK(rs >= 0.0);
    CHECK(rs <= 1.0);
    CHECK(std::abs(rs - trace_distance(s, r)) < 1e-13);
    CHECK(trace_distance(r, r) < 1e-13);
    CHECK(rs <= trace_distance(r, u) + trace_distance(u, s) + 1e-12);
    // Partial trace is CPTP and cannot increase the distance.
    CHECK(trace_distance(partial_trace_qubit2(r), partial_trace_qubit2(s)) <= rs + 1e-12);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(diag2(0.5)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(von_neumann_entropy(diag2(0.25)) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(von_neumann_entropy(diag2(1.0)) == 0.0);
  CHECK(von_neumann_entropy(DensityMatrix4(CMatrix4::identity() * 0.25)) == doctest::Approx(2.0).epsilon(1e-14));

  Gen gen(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pure = gen.density<4>(1);
    CHECK(std::abs(von_neumann_entropy(pure)) < 1e-7);
    const auto mixed = gen.density<4>();
    const double s = von_neumann_entropy(mixed);
    CHECK(s >= -1e-12);
    CHECK(s <= 2.0 + 1e-12);
  }
}

TEST_CASE("entropy of a spectrum clamps tiny negatives and rejects real ones") {
  const double tiny[] = {1.0 + 5e-11, -5e-11};
  CHECK(entropy_bits(tiny) == doctest::Approx(0.0).epsilon(1e-9));
  const double bad[] = {1.001, -0.001};
  CHECK(thrown_kind([&] { (void)entropy_bits(bad); }) == ErrorKind::NegativeEigenvalue);
  CHECK(entropy_term(0.0) == 0.0);
  CHECK(entropy_term(0.5) == doctest::Approx(0.5));
}

TEST_CASE("errors carry their kind in the message") {
  const Error e(ErrorKind::StepUnderflow, "step 1e-13");
  CHECK(e.kind() == ErrorKind::StepUnderflow);
  CHECK(std::string(e.what()).find("StepUnderflow") != std::string::npos);
  CHECK(std::string(e.what()).find("step 1e-13") != std::string::npos);
}
