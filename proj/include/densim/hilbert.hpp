#pragma once

// Dense complex linear algebra kernel: norms, hermiticity/unitarity
// predicates, hermitian eigendecomposition and the spectral matrix
// exponential exp(-iHt/hbar).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "densim/errors.hpp"

namespace densim {

using ComplexScalar = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Absolute/relative tolerance pair used by all validation predicates.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
};

// Max-abs-entry norm. All "within tolerance" checks in this library
// compare entrywise against tol.abs + tol.rel * scale.
inline double max_abs_entry(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline bool all_entries_finite(const ComplexMatrix& m) { return m.allFinite(); }

inline ComplexMatrix identity_matrix(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  const ComplexScalar i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("commutator: operand dimensions differ");
  return a * b - b * a;
}

inline bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {}) {
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  return max_abs_entry(m - m.adjoint()) <= tol.abs + tol.rel * max_abs_entry(m);
}

inline void require_hermitian(const ComplexMatrix& m, const Tolerance& tol,
                              const char* what) {
  if (!is_hermitian(m, tol)) {
    std::ostringstream msg;
    msg << what << ": matrix is not hermitian within tolerance";
    throw NotHermitian(msg.str());
  }
}

inline bool is_unitary(const ComplexMatrix& u, const Tolerance& tol = {}) {
  if (u.rows() != u.cols() || u.rows() < 1) return false;
  const ComplexMatrix gram = u.adjoint() * u;
  return max_abs_entry(gram - identity_matrix(u.rows())) <= tol.abs + tol.rel;
}

// mat_close(A, A) is true; DimMismatch when shapes differ.
inline bool mat_close(const ComplexMatrix& a, const ComplexMatrix& b,
                      const Tolerance& tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("mat_close: matrix dimensions differ");
  const double scale = std::max(max_abs_entry(a), max_abs_entry(b));
  return max_abs_entry(a - b) <= tol.abs + tol.rel * scale;
}

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are the eigenvectors, unitary as a matrix
};

// Eigendecomposition of a hermitian matrix, H = V diag(values) V^dagger.
// Eigenvector phases are whatever the solver produced; callers must not
// depend on them.
inline HermitianEigen eig_hermitian(const ComplexMatrix& h, const Tolerance& tol = {}) {
  require_hermitian(h, tol, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver failed to converge");
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

// U = exp(-i H t / hbar) via the spectral decomposition of H. Exact up to
// eigensolver error for hermitian input.
inline ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t,
                                              double hbar = 1.0,
                                              const Tolerance& tol = {}) {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw InvalidParam("unitary_from_hamiltonian: hbar must be positive");
  if (!std::isfinite(t))
    throw InvalidParam("unitary_from_hamiltonian: time must be finite");
  const HermitianEigen eig = eig_hermitian(h, tol);
  const Eigen::Index n = h.rows();
  Eigen::VectorXcd phases(n);
  const ComplexScalar i(0.0, 1.0);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::exp(-i * (eig.values(k) * t / hbar));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace densim
