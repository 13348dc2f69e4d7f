#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "qmemory/densmat.hpp"
#include "qmemory/error.hpp"

namespace qmemory::densmat {

namespace {

constexpr double kJacobiOffNorm = 1e-13;
constexpr int kJacobiMaxSweeps = 60;

template <std::size_t N>
void require_hermitian(const CMatrix<N>& a) {
  const double defect = a.hermiticity_defect();
  if (!(defect <= kHermitianTol)) {
    throw Error(ErrorKind::NonHermitian,
                fmt::format("max |A_ij - conj(A_ji)| = {:.3e} exceeds {:.0e}", defect, kHermitianTol));
  }
}

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation A <- U^H A U annihilating A(p,q).
// U = diag(1, e^{-i phi}) * [[c, -s], [s, c]] on the (p,q) plane.
template <std::size_t N>
void rotate(CMatrix<N>& a, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e_minus = std::conj(phase);

  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * (s * e_minus);
    a(k, q) = -akp * s + akq * (c * e_minus);
  }
  for (std::size_t j = 0; j < N; ++j) {
    const Complex apj = a(p, j);
    const Complex aqj = a(q, j);
    a(p, j) = c * apj + (s * phase) * aqj;
    a(q, j) = -s * apj + (c * phase) * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(CMatrix<N> a) {
  const double threshold = kJacobiOffNorm * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, p, q);
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = a(i, i).real();
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

template <>
std::array<double, 2> hermitian_eigenvalues<2>(const CMatrix<2>& a) {
  require_hermitian(a);
  const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
  const double radius = std::hypot(half_gap, std::abs(a(0, 1)));
  return {mean + radius, mean - radius};
}

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N>& a) {
  require_hermitian(a);
  return jacobi_eigenvalues(a);
}

template std::array<double, 4> hermitian_eigenvalues<4>(const CMatrix<4>&);

}  // namespace qmemory::densmat
