#include <cmath>

#include <fmt/format.h>

#include "qmemory/densmat.hpp"
#include "qmemory/error.hpp"

namespace qmemory::densmat {

namespace {

constexpr const char* kBasis4[] = {"|11>", "|10>", "|01>", "|00>"};

constexpr double kPopulationSlack = 1e-12;

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }

bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

CMatrix4 kron(const CMatrix2& a, const CMatrix2& b) {
  CMatrix4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

template <std::size_t N>
DensityMatrix<N>::DensityMatrix(const CMatrix<N>& m) : m_(m) {
  for (const auto& v : m.data())
    if (!finite(v)) violation("density matrix has a non-finite entry");
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTol) violation(fmt::format("not Hermitian (defect {:.3e})", defect));
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol)
    violation(fmt::format("trace {:.12g}{:+.3e}i is not 1", tr.real(), tr.imag()));
  const auto eig = hermitian_eigenvalues(m);
  if (eig.back() < -kPsdSlack) violation(fmt::format("not positive semidefinite (min eigenvalue {:.3e})", eig.back()));
}

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::pure(const std::array<Complex, N>& amplitudes) {
  CMatrix<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
  return DensityMatrix(m);
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

void validate(const XState& x) {
  if (!std::isfinite(x.a) || !std::isfinite(x.b) || !std::isfinite(x.c) || !std::isfinite(x.d) || !finite(x.z) ||
      !finite(x.w))
    violation("XState has a non-finite component");
  const double pops[] = {x.a, x.b, x.c, x.d};
  const char* names[] = {"a", "b", "c", "d"};
  for (int k = 0; k < 4; ++k)
    if (pops[k] < -kPopulationSlack) violation(fmt::format("XState population {} = {:.3e} is negative", names[k], pops[k]));
  const double sum = x.a + x.b + x.c + x.d;
  if (std::abs(sum - 1.0) > kTraceTol) violation(fmt::format("XState populations sum to {:.12g}, not 1", sum));
  if (std::norm(x.z) > x.b * x.c + kPsdSlack)
    violation(fmt::format("XState positivity |z|^2 <= b c fails ({:.6g} > {:.6g})", std::norm(x.z), x.b * x.c));
  if (std::norm(x.w) > x.a * x.d + kPsdSlack)
    violation(fmt::format("XState positivity |w|^2 <= a d fails ({:.6g} > {:.6g})", std::norm(x.w), x.a * x.d));
}

double max_abs_diff(const XState& x, const XState& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d),
                   std::abs(x.z - y.z), std::abs(x.w - y.w)});
}

DensityMatrix4 embed_xstate(const XState& x) {
  validate(x);
  CMatrix4 m;
  m(0, 0) = x.a;
  m(1, 1) = x.b;
  m(2, 2) = x.c;
  m(3, 3) = x.d;
  m(1, 2) = x.z;
  m(2, 1) = std::conj(x.z);
  m(0, 3) = x.w;
  m(3, 0) = std::conj(x.w);
  return DensityMatrix4(m);
}

XState extract_xstate(const DensityMatrix4& rho, double tol) {
  static constexpr std::pair<int, int> kOffPattern[] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                                        {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  double worst = 0.0;
  std::pair<int, int> where{};
  for (const auto& [i, j] : kOffPattern) {
    const double v = std::abs(rho(i, j));
    if (v > worst) {
      worst = v;
      where = {i, j};
    }
  }
  if (worst > tol) {
    throw Error(ErrorKind::NotXForm, fmt::format("entry ({},{}) has magnitude {:.3e} > {:.0e}", kBasis4[where.first],
                                                 kBasis4[where.second], worst, tol));
  }
  XState x{rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), rho(1, 2), rho(0, 3)};
  validate(x);
  return x;
}

DensityMatrix2 partial_trace_qubit2(const DensityMatrix4& rho) {
  CMatrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return DensityMatrix2(r);
}

template <std::size_t N>
double trace_distance(const DensityMatrix<N>& rho, const DensityMatrix<N>& tau) {
  const auto eig = hermitian_eigenvalues(rho.matrix() - tau.matrix());
  double s = 0.0;
  for (double l : eig) s += std::abs(l);
  return std::min(1.0, 0.5 * s);
}

template double trace_distance<2>(const DensityMatrix<2>&, const DensityMatrix<2>&);
template double trace_distance<4>(const DensityMatrix<4>&, const DensityMatrix<4>&);

double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double entropy_bits(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < -kPsdSlack) throw Error(ErrorKind::NegativeEigenvalue, fmt::format("eigenvalue {:.3e} < 0", l));
    s += entropy_term(l);
  }
  return s;
}

template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
  const auto eig = hermitian_eigenvalues(rho.matrix());
  return entropy_bits(eig);
}

template double von_neumann_entropy<2>(const DensityMatrix<2>&);
template double von_neumann_entropy<4>(const DensityMatrix<4>&);

}  // namespace qmemory::densmat
