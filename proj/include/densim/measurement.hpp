#pragma once

// Projective measurement: Born-rule probabilities trace(rho P_k), seeded
// deterministic sampling, and post-measurement states P rho P / trace(rho P).
// On a classical basis state the computational measurement returns the state
// unchanged, entry for entry.
//
// Randomness contract: the generator is std::mt19937_64 seeded through a
// splitmix64 finalizer, with uniform doubles taken as the top 53 bits of each
// draw. Same seed, same stream, on every platform. Child streams for
// parallel or multi-distribution sampling are derived from the base seed and
// a child index, never by sharing the parent stream.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "densim/states.hpp"

namespace densim {

struct RngSeed {
  std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(RngSeed seed) : base_(seed.value), engine_(splitmix64(seed.value)) {}

  // Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next() { return engine_(); }

  // Independent stream derived from the base seed and a child index.
  Rng child(std::uint64_t index) const {
    return Rng(RngSeed{splitmix64(base_ ^ (0x9E3779B97F4A7C15ULL * (index + 1)))});
  }

 private:
  std::uint64_t base_;
  std::mt19937_64 engine_;
};

// Complete set of orthogonal projectors: each hermitian and idempotent,
// pairwise orthogonal, summing to the identity.
class ProjectorSet {
 public:
  explicit ProjectorSet(std::vector<ComplexMatrix> projectors, const Tolerance& tol = {})
      : projectors_(std::move(projectors)) {
    if (projectors_.empty())
      throw InvalidProjectors("projector set: empty");
    const Eigen::Index n = projectors_[0].rows();
    const double thresh = tol.abs + tol.rel;
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& p : projectors_) {
      if (p.rows() != n || p.cols() != n)
        throw InvalidProjectors("projector set: mixed dimensions");
      if (!all_entries_finite(p))
        throw InvalidProjectors("projector set: non-finite entries");
      if (!is_hermitian(p, tol))
        throw InvalidProjectors("projector set: projector not hermitian");
      if (max_abs_entry(p * p - p) > thresh)
        throw InvalidProjectors("projector set: projector not idempotent");
      sum += p;
    }
    for (std::size_t a = 0; a + 1 < projectors_.size(); ++a)
      for (std::size_t b = a + 1; b < projectors_.size(); ++b)
        if (max_abs_entry(projectors_[a] * projectors_[b]) > thresh)
          throw InvalidProjectors("projector set: projectors not orthogonal");
    if (max_abs_entry(sum - identity_matrix(n)) > thresh)
      throw InvalidProjectors("projector set: projectors do not sum to identity");
  }

  static ProjectorSet computational(Eigen::Index dim) {
    std::vector<ComplexMatrix> ps;
    ps.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
      ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
      p(k, k) = 1.0;
      ps.push_back(std::move(p));
    }
    return ProjectorSet(std::move(ps));
  }

  std::size_t size() const { return projectors_.size(); }
  Eigen::Index dim() const { return projectors_[0].rows(); }
  const ComplexMatrix& operator[](std::size_t k) const { return projectors_[k]; }

 private:
  std::vector<ComplexMatrix> projectors_;
};

// Born rule: p_k = trace(rho P_k), tiny negatives clamped to zero and the
// list renormalized to sum exactly one.
inline std::vector<double> born_probabilities(const DensityMatrix& rho,
                                              const ProjectorSet& ps) {
  if (rho.dim() != ps.dim())
    throw DimMismatch("born_probabilities: dimensions differ");
  std::vector<double> probs(ps.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    double p = (rho.matrix() * ps[k]).trace().real();
    if (p < 0.0) p = 0.0;  // clamp eigensolver-scale noise
    probs[k] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw InvalidProjectors("born_probabilities: probabilities do not sum to 1");
  for (double& p : probs) p /= sum;
  return probs;
}

// Inverse-CDF draw; zero-probability outcomes are never selected.
inline std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_positive = 0;
  bool any = false;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last_positive = k;
    any = true;
    cum += probs[k];
    if (u < cum) return k;
  }
  if (!any) throw Error("sample_index: all probabilities are zero");
  return last_positive;
}

inline std::vector<long> sample_counts(const std::vector<double>& probs, long n,
                                       Rng& rng) {
  std::vector<long> counts(probs.size(), 0);
  for (long s = 0; s < n; ++s) ++counts[sample_index(probs, rng)];
  return counts;
}

struct MeasurementOutcome {
  std::size_t outcome;
  DensityMatrix post;
};

// Samples one outcome and collapses: post = P rho P / trace(rho P). The post
// state is revalidated. A classical basis state measured in the computational
// set is returned unchanged.
inline MeasurementOutcome projective_measure(const DensityMatrix& rho,
                                             const ProjectorSet& ps, Rng& rng) {
  const std::vector<double> probs = born_probabilities(rho, ps);
  const std::size_t k = sample_index(probs, rng);
  const ComplexMatrix collapsed = ps[k] * rho.matrix() * ps[k];
  const double norm = collapsed.trace().real();
  if (!(norm > 1e-15))
    throw Error("projective_measure: selected branch has vanishing probability");
  return MeasurementOutcome{k, DensityMatrix(collapsed / norm)};
}

inline MeasurementOutcome projective_measure(const DensityMatrix& rho,
                                             const ProjectorSet& ps, RngSeed seed) {
  Rng rng(seed);
  return projective_measure(rho, ps, rng);
}

}  // namespace densim
