#pragma once

// Composite systems: Kronecker products of states and operators, and the
// bipartite partial trace. Index convention is row-major pair order
// throughout: subsystem indices (i1, i2) combine to i1 * d2 + i2.

#include <sstream>
#include <utility>

#include "densim/observables.hpp"

namespace densim {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

inline ComplexMatrix tensor_operator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron(a, b);
}

inline Observable tensor_observable(const Observable& a, const Observable& b) {
  return Observable(kron(a.matrix(), b.matrix()), a.label() + "*" + b.label());
}

// Product state. Basis x basis lands at combined index i*d2 + j.
inline DensityMatrix tensor_state(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return DensityMatrix(kron(rho1.matrix(), rho2.matrix()));
}

enum class Keep { First, Second };

// Reduced state of one factor of a d1 x d2 bipartition, by index summation.
inline DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index d1,
                                   Eigen::Index d2, Keep keep) {
  if (d1 < 1 || d2 < 1 || rho.dim() != d1 * d2) {
    std::ostringstream msg;
    msg << "partial_trace: factor dims " << d1 << "x" << d2
        << " do not match state dim " << rho.dim();
    throw DimFactorMismatch(msg.str());
  }
  const ComplexMatrix& m = rho.matrix();
  if (keep == Keep::First) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d1; ++j)
        for (Eigen::Index k = 0; k < d2; ++k)
          out(i, j) += m(i * d2 + k, j * d2 + k);
    return DensityMatrix(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index i = 0; i < d2; ++i)
    for (Eigen::Index j = 0; j < d2; ++j)
      for (Eigen::Index k = 0; k < d1; ++k)
        out(i, j) += m(k * d2 + i, k * d2 + j);
  return DensityMatrix(out);
}

}  // namespace densim
