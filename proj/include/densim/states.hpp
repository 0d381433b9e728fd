#pragma once

// Density matrices and their classical subclasses. A DensityMatrix is
// validated on construction: hermitian, positive semidefinite and trace one.
// Basis states (a single 1 on the diagonal) and diagonal mixtures are the
// classical special cases; everything else is the quantum lift.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "densim/hilbert.hpp"

namespace densim {

enum class StateClass { BasisClassical, DiagonalClassical, PureQuantum, MixedQuantum };

inline const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::BasisClassical: return "basis_classical";
    case StateClass::DiagonalClassical: return "diagonal_classical";
    case StateClass::PureQuantum: return "pure_quantum";
    case StateClass::MixedQuantum: return "mixed_quantum";
  }
  return "unknown";
}

// Immutable validated state. The stored matrix is the symmetrized input
// (M + M^dagger)/2, which makes construction idempotent on near-hermitian
// numerical output.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw DimMismatch("density matrix must be square and nonempty");
    if (!all_entries_finite(m))
      throw NonFinite("density matrix entries must be finite");
    require_hermitian(m, tol, "density matrix");
    mat_ = 0.5 * (m + m.adjoint());
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "density matrix trace " << tr << " differs from 1 by more than 1e-9";
      throw TraceNotOne(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw Error("density matrix validation: eigensolver failed");
    const double lambda_min = solver.eigenvalues().minCoeff();
    if (lambda_min < -1e-9) {
      std::ostringstream msg;
      msg << "density matrix has eigenvalue " << lambda_min << " below -1e-9";
      throw NotPositive(msg.str());
    }
  }

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

inline DensityMatrix make_density(const ComplexMatrix& m, const Tolerance& tol = {}) {
  return DensityMatrix(m, tol);
}

// The idealized classical state: diagonal with a single 1 at (k, k).
inline DensityMatrix classical_basis_state(Eigen::Index k, Eigen::Index dim) {
  if (dim < 1) throw DimMismatch("classical_basis_state: dim must be >= 1");
  if (k < 0 || k >= dim) {
    std::ostringstream msg;
    msg << "classical_basis_state: index " << k << " out of range for dim " << dim;
    throw IndexOutOfRange(msg.str());
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

// A classical probability distribution as a diagonal density matrix.
inline DensityMatrix classical_mixture(const std::vector<double>& probs) {
  if (probs.empty()) throw EmptyList("classical_mixture: empty probability list");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p)) throw NonFinite("classical_mixture: non-finite probability");
    if (p < -1e-12) {
      std::ostringstream msg;
      msg << "classical_mixture: negative probability " << p;
      throw NegativeProbability(msg.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "classical_mixture: probabilities sum to " << sum << ", not 1";
    throw NotNormalized(msg.str());
  }
  const Eigen::Index n = static_cast<Eigen::Index>(probs.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = std::max(probs[k], 0.0);
  return DensityMatrix(m);
}

inline double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

// Classification priority: BasisClassical beats DiagonalClassical beats
// PureQuantum beats MixedQuantum. A basis state is also diagonal and pure;
// the most classical label wins.
inline StateClass classify_state(const DensityMatrix& rho, const Tolerance& tol = {}) {
  const ComplexMatrix& m = rho.matrix();
  const Eigen::Index n = rho.dim();
  const double thresh = tol.abs + tol.rel * max_abs_entry(m);
  double off_max = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) off_max = std::max(off_max, std::abs(m(i, j)));
  if (off_max <= thresh) {
    int ones = 0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (std::abs(m(k, k).real() - 1.0) <= tol.abs) ++ones;
    if (ones == 1) return StateClass::BasisClassical;
    return StateClass::DiagonalClassical;
  }
  if (std::abs(purity(rho) - 1.0) <= tol.abs) return StateClass::PureQuantum;
  return StateClass::MixedQuantum;
}

}  // namespace densim
