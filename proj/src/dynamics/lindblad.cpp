#include <cmath>

#include "qmemory/dynamics.hpp"

namespace qmemory::dynamics {

namespace {

using densmat::CMatrix2;
using densmat::kron;

struct Operators {
  CMatrix4 raise1, lower1, raise2, lower2, flip_flop;
};

const Operators& operators() {
  static const Operators ops = [] {
    // basis |1>, |0>: sigma+ = |1><0|
    const CMatrix2 raise = CMatrix2::from_rows({0.0, 1.0, 0.0, 0.0});
    const CMatrix2 lower = raise.adjoint();
    const CMatrix2 id = CMatrix2::identity();
    Operators o{kron(raise, id), kron(lower, id), kron(id, raise), kron(id, lower), {}};
    o.flip_flop = o.raise1 * o.lower2 + o.lower1 * o.raise2;
    return o;
  }();
  return ops;
}

CMatrix4 commutator(const CMatrix4& x, const CMatrix4& y) { return x * y - y * x; }

// [L, rho L^+] + [L rho, L^+]
CMatrix4 dissipator(const CMatrix4& jump, const CMatrix4& jump_adj, const CMatrix4& rho) {
  return commutator(jump, rho * jump_adj) + commutator(jump * rho, jump_adj);
}

}  // namespace

CMatrix4 lindblad_generator(const CMatrix4& rho, const ModelParams& p) {
  const auto& op = operators();
  const double emission = 0.5 * (p.m() + 1.0) * p.gamma();
  const double absorption = 0.5 * p.m() * p.gamma();

  CMatrix4 out = (dissipator(op.lower1, op.raise1, rho) + dissipator(op.lower2, op.raise2, rho)) * emission;
  if (absorption != 0.0)
    out += (dissipator(op.raise1, op.lower1, rho) + dissipator(op.raise2, op.lower2, rho)) * absorption;
  if (p.omega() != 0.0) out += commutator(op.flip_flop * p.omega(), rho) * Complex(0.0, -1.0);
  return out;
}

CMatrix4 lindblad_rhs(const DensityMatrix4& rho, const ModelParams& p) { return lindblad_generator(rho.matrix(), p); }

StateVector vectorize(const CMatrix4& m) { return m.data(); }

CMatrix4 unvectorize(const StateVector& v) {
  CMatrix4 m;
  m.data() = v;
  return m;
}

StateVector matvec(const CMatrix<16>& op, const StateVector& v) {
  StateVector r{};
  for (std::size_t i = 0; i < 16; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < 16; ++j) s += op(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Liouvillian::Liouvillian(const ModelParams& p) {
  for (std::size_t j = 0; j < 16; ++j) {
    StateVector e{};
    e[j] = 1.0;
    const StateVector column = vectorize(lindblad_generator(unvectorize(e), p));
    for (std::size_t i = 0; i < 16; ++i) l_(i, j) = column[i];
  }
}

CMatrix<16> Liouvillian::propagator(double dt) const {
  CMatrix<16> a = l_ * Complex(dt);
  double norm1 = 0.0;
  for (std::size_t j = 0; j < 16; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < 16; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  a *= Complex(std::ldexp(1.0, -squarings));

  CMatrix<16> result = CMatrix<16>::identity();
  CMatrix<16> term = CMatrix<16>::identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * a;
    term *= Complex(1.0 / k);
    result += term;
    if (term.max_abs() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace qmemory::dynamics
