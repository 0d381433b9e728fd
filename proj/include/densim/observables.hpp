#pragma once

// Hermitian observables. Diagonal observables are the classical subclass:
// on a basis state they have a sharp value (zero variance). Expectations are
// trace(rho A); the Robertson check is the operator uncertainty inequality
// dA * dB >= |<[A,B]>| / 2.

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "densim/states.hpp"

namespace densim {

class Observable {
 public:
  explicit Observable(ComplexMatrix m, std::string label = "", const Tolerance& tol = {})
      : mat_(std::move(m)), label_(std::move(label)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
      throw DimMismatch("observable must be square and nonempty");
    if (!all_entries_finite(mat_))
      throw NonFinite("observable entries must be finite");
    require_hermitian(mat_, tol, "observable");
  }

  const ComplexMatrix& matrix() const { return mat_; }
  const std::string& label() const { return label_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
  std::string label_;
};

// Classical observable: the function a on the diagonal.
inline Observable diagonal_observable(const std::vector<double>& values,
                                      std::string label = "") {
  if (values.empty()) throw EmptyList("diagonal_observable: empty value list");
  const Eigen::Index n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!std::isfinite(values[k]))
      throw NonFinite("diagonal_observable: non-finite value");
    m(k, k) = values[k];
  }
  return Observable(std::move(m), std::move(label));
}

inline double expectation(const DensityMatrix& rho, const Observable& a) {
  if (rho.dim() != a.dim())
    throw DimMismatch("expectation: state and observable dimensions differ");
  const ComplexScalar tr = (rho.matrix() * a.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-9) {
    std::ostringstream msg;
    msg << "expectation: imaginary part " << tr.imag() << " exceeds 1e-9";
    throw NonRealExpectation(msg.str());
  }
  return tr.real();
}

// <A^2> - <A>^2, clamped at zero against cancellation noise.
inline double variance(const DensityMatrix& rho, const Observable& a) {
  if (rho.dim() != a.dim())
    throw DimMismatch("variance: state and observable dimensions differ");
  const double mean = expectation(rho, a);
  const double mean_sq = (rho.matrix() * a.matrix() * a.matrix()).trace().real();
  const double var = mean_sq - mean * mean;
  return var < 0.0 ? 0.0 : var;
}

struct RobertsonCheck {
  double lhs;   // sqrt(var A) * sqrt(var B)
  double rhs;   // |trace(rho [A,B])| / 2
  bool holds;   // lhs >= rhs - 1e-9
};

inline RobertsonCheck robertson_check(const DensityMatrix& rho, const Observable& a,
                                      const Observable& b) {
  if (rho.dim() != a.dim() || rho.dim() != b.dim())
    throw DimMismatch("robertson_check: dimensions differ");
  const double lhs = std::sqrt(variance(rho, a)) * std::sqrt(variance(rho, b));
  const ComplexScalar comm_mean =
      (rho.matrix() * commutator(a.matrix(), b.matrix())).trace();
  const double rhs = 0.5 * std::abs(comm_mean);
  return RobertsonCheck{lhs, rhs, lhs >= rhs - 1e-9};
}

}  // namespace densim
