#pragma once

// Classical transport on a discretized (q, p) rectangle. The Poisson bracket
// {a, H} = da/dq dH/dp - da/dp dH/dq is evaluated with second-order centered
// differences (periodic wrap or second-order one-sided stencils at open
// boundaries), and the Liouville equation df/dt = -{f, H} is stepped with
// classic fourth-order Runge-Kutta.

#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "densim/errors.hpp"

namespace densim {

using GridArray = Eigen::ArrayXXd;  // nq rows (q index) by np columns (p index)

struct PhaseSpaceGrid {
  int nq = 0;
  int np = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  // Boundary handling per axis. Transport problems are typically periodic in
  // q and open in p (one-sided stencils at the p edges).
  bool periodic_q = true;
  bool periodic_p = true;

  void validate() const {
    if (nq < 4 || np < 4) throw InvalidParam("grid: nq and np must be >= 4");
    if (!(q_max > q_min) || !(p_max > p_min))
      throw InvalidParam("grid: empty coordinate range");
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(p_min) ||
        !std::isfinite(p_max))
      throw InvalidParam("grid: non-finite coordinate range");
  }

  // Periodic axes omit the duplicate endpoint node; open axes include both.
  double dq() const { return (q_max - q_min) / (periodic_q ? nq : nq - 1); }
  double dp() const { return (p_max - p_min) / (periodic_p ? np : np - 1); }
  double q(int i) const { return q_min + i * dq(); }
  double p(int j) const { return p_min + j * dp(); }

  bool operator==(const PhaseSpaceGrid& o) const {
    return nq == o.nq && np == o.np && q_min == o.q_min && q_max == o.q_max &&
           p_min == o.p_min && p_max == o.p_max && periodic_q == o.periodic_q &&
           periodic_p == o.periodic_p;
  }
};

namespace detail {

inline void require_shape(const GridArray& a, const PhaseSpaceGrid& g, const char* what) {
  if (a.rows() != g.nq || a.cols() != g.np) {
    std::ostringstream msg;
    msg << what << ": field shape " << a.rows() << "x" << a.cols()
        << " does not match grid " << g.nq << "x" << g.np;
    throw GridMismatch(msg.str());
  }
}

}  // namespace detail

// d/dq with centered differences; one-sided 3-point stencils at open edges.
inline GridArray d_dq(const GridArray& f, const PhaseSpaceGrid& g) {
  detail::require_shape(f, g, "d_dq");
  const double inv2h = 1.0 / (2.0 * g.dq());
  GridArray out(g.nq, g.np);
  for (int j = 0; j < g.np; ++j) {
    for (int i = 1; i + 1 < g.nq; ++i)
      out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv2h;
    if (g.periodic_q) {
      out(0, j) = (f(1, j) - f(g.nq - 1, j)) * inv2h;
      out(g.nq - 1, j) = (f(0, j) - f(g.nq - 2, j)) * inv2h;
    } else {
      out(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * inv2h;
      out(g.nq - 1, j) =
          (3.0 * f(g.nq - 1, j) - 4.0 * f(g.nq - 2, j) + f(g.nq - 3, j)) * inv2h;
    }
  }
  return out;
}

inline GridArray d_dp(const GridArray& f, const PhaseSpaceGrid& g) {
  detail::require_shape(f, g, "d_dp");
  const double inv2h = 1.0 / (2.0 * g.dp());
  GridArray out(g.nq, g.np);
  for (int i = 0; i < g.nq; ++i) {
    for (int j = 1; j + 1 < g.np; ++j)
      out(i, j) = (f(i, j + 1) - f(i, j - 1)) * inv2h;
    if (g.periodic_p) {
      out(i, 0) = (f(i, 1) - f(i, g.np - 1)) * inv2h;
      out(i, g.np - 1) = (f(i, 0) - f(i, g.np - 2)) * inv2h;
    } else {
      out(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) * inv2h;
      out(i, g.np - 1) =
          (3.0 * f(i, g.np - 1) - 4.0 * f(i, g.np - 2) + f(i, g.np - 3)) * inv2h;
    }
  }
  return out;
}

// Sampled hamiltonian H(q, p). The partial derivative fields are cached at
// construction since every bracket evaluation needs them.
class HamiltonianField {
 public:
  HamiltonianField(const PhaseSpaceGrid& grid, GridArray h_values)
      : grid_(grid), values_(std::move(h_values)) {
    grid_.validate();
    detail::require_shape(values_, grid_, "hamiltonian");
    if (!values_.allFinite())
      throw NonFinite("hamiltonian: non-finite sample values");
    dh_dq_ = d_dq(values_, grid_);
    dh_dp_ = d_dp(values_, grid_);
  }

  template <typename F>
  static HamiltonianField from_function(const PhaseSpaceGrid& grid, F&& h) {
    grid.validate();
    GridArray v(grid.nq, grid.np);
    for (int i = 0; i < grid.nq; ++i)
      for (int j = 0; j < grid.np; ++j) v(i, j) = h(grid.q(i), grid.p(j));
    return HamiltonianField(grid, std::move(v));
  }

  const PhaseSpaceGrid& grid() const { return grid_; }
  const GridArray& values() const { return values_; }
  const GridArray& dh_dq() const { return dh_dq_; }
  const GridArray& dh_dp() const { return dh_dp_; }

 private:
  PhaseSpaceGrid grid_;
  GridArray values_;
  GridArray dh_dq_;
  GridArray dh_dp_;
};

// Nonnegative grid function with unit cell-weighted mass.
class PhaseSpaceDensity {
 public:
  PhaseSpaceDensity(const PhaseSpaceGrid& grid, GridArray values)
      : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    detail::require_shape(values_, grid_, "density");
    if (!values_.allFinite()) throw NonFinite("density: non-finite values");
    if ((values_ < 0.0).any())
      throw NegativeProbability("density: negative grid values");
    const double m = grid_.dq() * grid_.dp() * values_.sum();
    if (std::abs(m - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "density: cell-weighted mass " << m << " differs from 1 by more than 1e-6";
      throw NotNormalized(msg.str());
    }
  }

  // Samples f on the grid, clamps nothing, normalizes to unit mass.
  template <typename F>
  static PhaseSpaceDensity from_function(const PhaseSpaceGrid& grid, F&& f) {
    grid.validate();
    GridArray v(grid.nq, grid.np);
    for (int i = 0; i < grid.nq; ++i)
      for (int j = 0; j < grid.np; ++j) v(i, j) = f(grid.q(i), grid.p(j));
    const double m = grid.dq() * grid.dp() * v.sum();
    if (!(m > 0.0) || !std::isfinite(m))
      throw NotNormalized("density: sampled function has non-positive mass");
    v /= m;
    return PhaseSpaceDensity(grid, std::move(v));
  }

  const PhaseSpaceGrid& grid() const { return grid_; }
  const GridArray& values() const { return values_; }
  double mass() const { return grid_.dq() * grid_.dp() * values_.sum(); }

 private:
  PhaseSpaceGrid grid_;
  GridArray values_;
};

// {a, H} = da/dq dH/dp - da/dp dH/dq on the hamiltonian's grid.
inline GridArray poisson_bracket(const GridArray& a, const HamiltonianField& h) {
  detail::require_shape(a, h.grid(), "poisson_bracket");
  return d_dq(a, h.grid()) * h.dh_dp() - d_dp(a, h.grid()) * h.dh_dq();
}

// Largest advective rate on the grid; stable steps need dt * rate <= 1.
inline double advective_rate(const HamiltonianField& h) {
  return (h.dh_dp().abs() / h.grid().dq() + h.dh_dq().abs() / h.grid().dp()).maxCoeff();
}

struct LiouvilleResult {
  PhaseSpaceDensity density;
  double clamped_mass = 0.0;  // total mass removed by clamping negatives
  long steps = 0;
};

// Steps df/dt = -{f, H} to t_final with RK4. After each step, negative
// values (dispersive undershoot) are clamped to zero and the field is
// renormalized; the removed mass is accumulated and reported.
inline LiouvilleResult evolve_liouville(const PhaseSpaceDensity& f0,
                                        const HamiltonianField& h, double t_final,
                                        double dt) {
  if (!(f0.grid() == h.grid()))
    throw GridMismatch("evolve_liouville: density and hamiltonian grids differ");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw InvalidParam("evolve_liouville: dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw InvalidParam("evolve_liouville: t_final must be nonnegative");

  const double rate = advective_rate(h);
  if (dt * rate > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "evolve_liouville: dt " << dt << " violates the stability bound "
        << 1.0 / rate;
    throw UnstableStep(msg.str());
  }
  if (t_final == 0.0) return LiouvilleResult{f0, 0.0, 0};

  const PhaseSpaceGrid& g = f0.grid();
  const double cell = g.dq() * g.dp();
  auto rhs = [&h](const GridArray& x) -> GridArray { return -poisson_bracket(x, h); };

  GridArray f = f0.values();
  double clamped = 0.0;
  long steps = 0;
  double t = 0.0;
  while (t < t_final - 1e-12 * t_final) {
    const double step = std::min(dt, t_final - t);
    const GridArray k1 = rhs(f);
    const GridArray k2 = rhs(GridArray(f + 0.5 * step * k1));
    const GridArray k3 = rhs(GridArray(f + 0.5 * step * k2));
    const GridArray k4 = rhs(GridArray(f + step * k3));
    f += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double negative_mass = -cell * f.min(0.0).sum();
    if (negative_mass > 0.0) {
      clamped += negative_mass;
      f = f.max(0.0);
      const double m = cell * f.sum();
      if (!(m > 0.0)) throw NotNormalized("evolve_liouville: mass vanished");
      f /= m;
    }
    t += step;
    ++steps;
  }
  return LiouvilleResult{PhaseSpaceDensity(g, std::move(f)), clamped, steps};
}

}  // namespace densim
