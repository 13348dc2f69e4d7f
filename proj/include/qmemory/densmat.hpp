#pragma once

// Dense complex matrices and density-matrix primitives for one and two qubits.
//
// Basis conventions (excited state first):
//   single qubit: |1>, |0>
//   two qubits:   |11>, |10>, |01>, |00>   (first label is atom 1)

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace qmemory::densmat {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kXFormTol = 1e-9;

/// Fixed-size dense complex matrix, row-major.
template <std::size_t N>
class CMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr CMatrix() = default;

  static CMatrix zero() { return CMatrix{}; }

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(const std::array<double, N>& d) {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// Row-major initializer; missing trailing entries stay zero.
  static CMatrix from_rows(std::initializer_list<Complex> values) {
    CMatrix m;
    std::size_t k = 0;
    for (const auto& v : values) {
      if (k == N * N) break;
      m.data_[k++] = v;
    }
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

  const std::array<Complex, N * N>& data() const { return data_; }
  std::array<Complex, N * N>& data() { return data_; }

  CMatrix adjoint() const {
    CMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest |A_ij - conj(A_ji)|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  double max_abs() const {
    double worst = 0.0;
    for (const auto& v : data_) worst = std::max(worst, std::abs(v));
    return worst;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using CMatrix2 = CMatrix<2>;
using CMatrix4 = CMatrix<4>;

/// Kronecker product of two single-qubit operators, atom 1 on the left.
CMatrix4 kron(const CMatrix2& a, const CMatrix2& b);

/// Real eigenvalues of a Hermitian matrix, descending.
/// 2x2 uses the quadratic closed form; larger sizes use cyclic Jacobi rotations.
/// Throws Error(NonHermitian) if the matrix is not Hermitian within kHermitianTol.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N>& a);

template <>
std::array<double, 2> hermitian_eigenvalues<2>(const CMatrix<2>&);
extern template std::array<double, 4> hermitian_eigenvalues<4>(const CMatrix<4>&);

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
template <std::size_t N>
class DensityMatrix {
 public:
  /// Throws Error(InvariantViolation) naming the violated invariant.
  explicit DensityMatrix(const CMatrix<N>& m);

  const CMatrix<N>& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  static DensityMatrix pure(const std::array<Complex, N>& amplitudes);

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  CMatrix<N> m_;
};

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix4 = DensityMatrix<4>;

/// Six real/complex entries of an X-shaped two-qubit density matrix:
///
///   | a  0  0  w |
///   | 0  b  z  0 |
///   | 0  z* c  0 |
///   | w* 0  0  d |
struct XState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Complex z{};
  Complex w{};

  static XState basis_11() { return {1.0, 0.0, 0.0, 0.0, {}, {}}; }
  static XState basis_10() { return {0.0, 1.0, 0.0, 0.0, {}, {}}; }
  static XState basis_01() { return {0.0, 0.0, 1.0, 0.0, {}, {}}; }
  static XState basis_00() { return {0.0, 0.0, 0.0, 1.0, {}, {}}; }

  /// Stationary product state of two qubits with excited population q each.
  static XState thermal_product(double q) {
    return {q * q, q * (1.0 - q), (1.0 - q) * q, (1.0 - q) * (1.0 - q), {}, {}};
  }

  friend bool operator==(const XState&, const XState&) = default;
};

/// Throws Error(InvariantViolation) naming the first violated invariant.
void validate(const XState& x);

/// Largest absolute component difference.
double max_abs_diff(const XState& x, const XState& y);

DensityMatrix4 embed_xstate(const XState& x);

/// Throws Error(NotXForm) if any off-pattern entry exceeds tol.
XState extract_xstate(const DensityMatrix4& rho, double tol = kXFormTol);

/// Reduced state of atom 1 (traces out atom 2).
DensityMatrix2 partial_trace_qubit2(const DensityMatrix4& rho);

/// Half the trace norm of rho - tau.
template <std::size_t N>
double trace_distance(const DensityMatrix<N>& rho, const DensityMatrix<N>& tau);

extern template double trace_distance<2>(const DensityMatrix<2>&, const DensityMatrix<2>&);
extern template double trace_distance<4>(const DensityMatrix<4>&, const DensityMatrix<4>&);

/// Von Neumann entropy in bits. Eigenvalues in [-kPsdSlack, 0) are clamped to zero;
/// anything more negative throws Error(NegativeEigenvalue).
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho);

extern template double von_neumann_entropy<2>(const DensityMatrix<2>&);
extern template double von_neumann_entropy<4>(const DensityMatrix<4>&);

/// -x log2 x with 0 log2 0 = 0.
double entropy_term(double x);

/// Shannon entropy (bits) of a spectrum, same clamping rule as von_neumann_entropy.
double entropy_bits(std::span<const double> eigenvalues);

}  // namespace qmemory::densmat
