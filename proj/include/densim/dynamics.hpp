#pragma once

// Finite-dimensional evolution laws. The classical transition is a
// permutation acting by rho' = P rho P^T (a special unitary); the quantum
// transition is a general unitary conjugation. Both Schroedinger-picture
// state evolution and Heisenberg-picture observable evolution are generated
// from a hamiltonian through the spectral exponential.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "densim/observables.hpp"

namespace densim {

// A bijection on {0..dim-1}; index i maps to targets[i].
class PermutationMap {
 public:
  explicit PermutationMap(std::vector<Eigen::Index> targets)
      : targets_(std::move(targets)) {
    const Eigen::Index n = static_cast<Eigen::Index>(targets_.size());
    if (n < 1) throw InvalidParam("permutation: empty target list");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Eigen::Index t : targets_) {
      if (t < 0 || t >= n)
        throw InvalidParam("permutation: target index out of range");
      if (seen[static_cast<std::size_t>(t)])
        throw InvalidParam("permutation: targets are not a bijection");
      seen[static_cast<std::size_t>(t)] = true;
    }
  }

  static PermutationMap identity(Eigen::Index dim) {
    std::vector<Eigen::Index> t(static_cast<std::size_t>(dim));
    std::iota(t.begin(), t.end(), Eigen::Index{0});
    return PermutationMap(std::move(t));
  }

  static PermutationMap swap(Eigen::Index i, Eigen::Index j, Eigen::Index dim) {
    PermutationMap p = identity(dim);
    if (i < 0 || i >= dim || j < 0 || j >= dim)
      throw InvalidParam("permutation swap: index out of range");
    std::swap(p.targets_[static_cast<std::size_t>(i)],
              p.targets_[static_cast<std::size_t>(j)]);
    return p;
  }

  // i -> i+1 mod dim
  static PermutationMap cycle(Eigen::Index dim) {
    std::vector<Eigen::Index> t(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
      t[static_cast<std::size_t>(i)] = (i + 1) % dim;
    return PermutationMap(std::move(t));
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(targets_.size()); }
  Eigen::Index operator()(Eigen::Index i) const {
    return targets_[static_cast<std::size_t>(i)];
  }
  const std::vector<Eigen::Index>& targets() const { return targets_; }

  // (this o inner): first inner, then this.
  PermutationMap compose(const PermutationMap& inner) const {
    if (dim() != inner.dim())
      throw DimMismatch("permutation compose: dimensions differ");
    std::vector<Eigen::Index> t(targets_.size());
    for (Eigen::Index i = 0; i < dim(); ++i)
      t[static_cast<std::size_t>(i)] = (*this)(inner(i));
    return PermutationMap(std::move(t));
  }

  // Matrix with P e_i = e_{targets[i]}.
  ComplexMatrix to_matrix() const {
    ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < dim(); ++i) m((*this)(i), i) = 1.0;
    return m;
  }

 private:
  std::vector<Eigen::Index> targets_;
};

// rho' = P rho P^T, computed as an exact index relabeling. Preserves the
// state class: basis states map to basis states, diagonal to diagonal.
inline DensityMatrix apply_permutation(const DensityMatrix& rho,
                                       const PermutationMap& p) {
  if (rho.dim() != p.dim())
    throw DimMismatch("apply_permutation: dimensions differ");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index i = 0; i < rho.dim(); ++i)
    for (Eigen::Index j = 0; j < rho.dim(); ++j)
      out(p(i), p(j)) = m(i, j);
  return DensityMatrix(out);
}

// rho' = U rho U^dagger. Trace, hermiticity and spectrum are preserved.
inline DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u,
                                   const Tolerance& tol = {}) {
  if (rho.dim() != u.rows())
    throw DimMismatch("apply_unitary: dimensions differ");
  if (!is_unitary(u, tol))
    throw NotUnitary("apply_unitary: matrix is not unitary within tolerance");
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

// Schroedinger picture: rho(t) = U rho U^dagger with U = exp(-iHt/hbar).
inline DensityMatrix evolve_von_neumann(const DensityMatrix& rho, const Observable& h,
                                        double t, double hbar = 1.0) {
  if (rho.dim() != h.dim())
    throw DimMismatch("evolve_von_neumann: dimensions differ");
  const ComplexMatrix u = unitary_from_hamiltonian(h.matrix(), t, hbar);
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

// Heisenberg picture: A(t) = U^dagger A U, states held fixed. Expectations
// agree with the Schroedinger picture: trace(rho(t) A) = trace(rho A(t)).
inline Observable evolve_heisenberg(const Observable& a, const Observable& h,
                                    double t, double hbar = 1.0) {
  if (a.dim() != h.dim())
    throw DimMismatch("evolve_heisenberg: dimensions differ");
  const ComplexMatrix u = unitary_from_hamiltonian(h.matrix(), t, hbar);
  ComplexMatrix evolved = u.adjoint() * a.matrix() * u;
  // Round off the anti-hermitian noise so the result validates cleanly.
  evolved = 0.5 * (evolved + ComplexMatrix(evolved.adjoint()));
  return Observable(std::move(evolved), a.label());
}

}  // namespace densim
