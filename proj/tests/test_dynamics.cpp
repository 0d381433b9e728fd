#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "densim/dynamics.hpp"
#include "test_support.hpp"

using namespace densim;

TEST_CASE("apply_permutation relabels basis states") {
  const PermutationMap swap01 = PermutationMap::swap(0, 1, 2);
  const DensityMatrix moved = apply_permutation(classical_basis_state(0, 2), swap01);
  REQUIRE(max_abs_entry(moved.matrix() - classical_basis_state(1, 2).matrix()) == 0.0);

  const PermutationMap id = PermutationMap::identity(3);
  const DensityMatrix rho = classical_mixture({0.2, 0.3, 0.5});
  REQUIRE(max_abs_entry(apply_permutation(rho, id).matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("apply_permutation agrees with conjugation by the permutation matrix") {
  const PermutationMap cyc = PermutationMap::cycle(3);
  const DensityMatrix rho = classical_mixture({0.2, 0.3, 0.5});
  const DensityMatrix via_perm = apply_permutation(rho, cyc);
  const DensityMatrix via_unitary = apply_unitary(rho, cyc.to_matrix());
  REQUIRE(mat_close(via_perm.matrix(), via_unitary.matrix(), Tolerance{1e-12, 1e-12}));
  REQUIRE(via_perm.matrix()(0, 0).real() == Approx(0.5).margin(1e-15));
  REQUIRE(via_perm.matrix()(1, 1).real() == Approx(0.2).margin(1e-15));
  REQUIRE(via_perm.matrix()(2, 2).real() == Approx(0.3).margin(1e-15));
}

TEST_CASE("permutation maps validate and compose") {
  REQUIRE_THROWS_AS(PermutationMap({0, 0}), InvalidParam);
  REQUIRE_THROWS_AS(PermutationMap({0, 3}), InvalidParam);
  std::mt19937_64 rng(909);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 7);
    const PermutationMap p(testsupport::random_permutation(rng, dim));
    const PermutationMap q(testsupport::random_permutation(rng, dim));
    const DensityMatrix rho = classical_basis_state(static_cast<Eigen::Index>(rng() % dim), dim);
    const DensityMatrix two_steps = apply_permutation(apply_permutation(rho, q), p);
    const DensityMatrix composed = apply_permutation(rho, p.compose(q));
    REQUIRE(max_abs_entry(two_steps.matrix() - composed.matrix()) == 0.0);
  }
}

TEST_CASE("classical closure: permutations keep basis states classical") {
  std::mt19937_64 rng(1010);
  for (Eigen::Index dim : {2, 5, 17, 32}) {
    const PermutationMap p(testsupport::random_permutation(rng, dim));
    REQUIRE(is_unitary(p.to_matrix()));
    for (Eigen::Index k = 0; k < dim; ++k) {
      const DensityMatrix out = apply_permutation(classical_basis_state(k, dim), p);
      REQUIRE(classify_state(out) == StateClass::BasisClassical);
    }
    const DensityMatrix diag = classical_mixture(
        std::vector<double>(static_cast<std::size_t>(dim), 1.0 / static_cast<double>(dim)));
    REQUIRE(classify_state(apply_permutation(diag, p)) == StateClass::DiagonalClassical);
  }
}

TEST_CASE("apply_unitary examples") {
  const DensityMatrix rho = classical_basis_state(0, 2);
  REQUIRE(max_abs_entry(apply_unitary(rho, identity_matrix(2)).matrix() -
                        rho.matrix()) == 0.0);

  // 2x2 product oracle: H |0><0| H has every entry 1/2.
  const DensityMatrix rotated = apply_unitary(rho, hadamard());
  ComplexMatrix expected(2, 2);
  expected << 0.5, 0.5, 0.5, 0.5;
  REQUIRE(mat_close(rotated.matrix(), expected, Tolerance{1e-12, 1e-12}));

  ComplexMatrix not_unitary(2, 2);
  not_unitary << 1.0, 0.0, 0.0, 2.0;
  REQUIRE_THROWS_AS(apply_unitary(rho, not_unitary), NotUnitary);
}

TEST_CASE("apply_unitary preserves trace, hermiticity and spectrum") {
  std::mt19937_64 rng(1111);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 7);
    const DensityMatrix rho =
        make_density(testsupport::random_density_matrix(rng, dim));
    const ComplexMatrix u = testsupport::random_unitary(rng, dim);
    const DensityMatrix out = apply_unitary(rho, u);
    REQUIRE(out.matrix().trace().real() == Approx(1.0).margin(1e-9));
    REQUIRE(max_abs_entry(out.matrix() - out.matrix().adjoint()) <= 1e-12);
    const RealVector before = eig_hermitian(rho.matrix()).values;
    const RealVector after = eig_hermitian(out.matrix()).values;
    for (Eigen::Index k = 0; k < dim; ++k)
      REQUIRE(after(k) == Approx(before(k)).margin(1e-8));
  }
}

TEST_CASE("evolve_von_neumann basics") {
  const Observable h(pauli_z(), "Z");
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const DensityMatrix rho = make_density(plus);
  const DensityMatrix frozen = evolve_von_neumann(rho, h, 0.0);
  REQUIRE(mat_close(frozen.matrix(), rho.matrix(), Tolerance{1e-12, 1e-12}));

  // Diagonal hamiltonian commutes with a basis state.
  const DensityMatrix basis = classical_basis_state(1, 2);
  const DensityMatrix still = evolve_von_neumann(basis, h, 3.7);
  REQUIRE(mat_close(still.matrix(), basis.matrix(), Tolerance{1e-12, 1e-12}));

  // At t = pi/2 the +X projector rotates into the -X projector:
  // the expectation of X flips sign (trace oracle below).
  const DensityMatrix half_turn = evolve_von_neumann(rho, h, M_PI / 2.0);
  ComplexMatrix minus(2, 2);
  minus << 0.5, -0.5, -0.5, 0.5;
  REQUIRE(mat_close(half_turn.matrix(), minus, Tolerance{1e-12, 1e-12}));
  const double x_before = (rho.matrix() * pauli_x()).trace().real();
  const double x_after = (half_turn.matrix() * pauli_x()).trace().real();
  REQUIRE(x_before == Approx(1.0).margin(1e-12));
  REQUIRE(x_after == Approx(-1.0).margin(1e-12));
}

TEST_CASE("evolve_heisenberg basics") {
  const Observable x(pauli_x(), "X");
  const Observable h(pauli_z(), "Z");
  REQUIRE(mat_close(evolve_heisenberg(x, h, 0.0).matrix(), x.matrix(),
                    Tolerance{1e-12, 1e-12}));

  // Conserved observable: [A, H] = 0.
  const Observable z(pauli_z(), "Z");
  REQUIRE(mat_close(evolve_heisenberg(z, h, 2.3).matrix(), z.matrix(),
                    Tolerance{1e-12, 1e-12}));
}

TEST_CASE("evolve_heisenberg precession matches the closed form") {
  const double omega = 1.3;
  const Observable x(pauli_x(), "X");
  const Observable h(ComplexMatrix(0.5 * omega * pauli_z()), "wZ/2");
  for (double t : {0.0, 0.4, 1.1, 2.9}) {
    const Observable xt = evolve_heisenberg(x, h, t);
    const ComplexMatrix expected =
        std::cos(omega * t) * pauli_x() - std::sin(omega * t) * pauli_y();
    REQUIRE(max_abs_entry(xt.matrix() - expected) <= 1e-12);
  }
}

TEST_CASE("evolve_heisenberg derivative matches the commutator equation") {
  // Centered difference of A(t) at t = 0 against (i hbar)^-1 [A, H].
  std::mt19937_64 rng(1212);
  const ComplexMatrix a_mat = testsupport::random_hermitian(rng, 3);
  const ComplexMatrix h_mat = testsupport::random_hermitian(rng, 3);
  const Observable a(a_mat, "A");
  const Observable h(h_mat, "H");
  const double step = 1e-4;
  const ComplexMatrix forward = evolve_heisenberg(a, h, step).matrix();
  const ComplexMatrix backward = evolve_heisenberg(a, h, -step).matrix();
  const ComplexMatrix numeric = (forward - backward) / (2.0 * step);
  const ComplexMatrix analytic =
      (1.0 / ComplexScalar(0.0, 1.0)) * commutator(a_mat, h_mat);
  REQUIRE(max_abs_entry(numeric - analytic) <= 1e-6 * max_abs_entry(analytic));
}

TEST_CASE("picture duality: Schroedinger and Heisenberg expectations agree") {
  std::mt19937_64 rng(1313);
  std::uniform_int_distribution<int> dims(2, 8);
  for (int rep = 0; rep < 60; ++rep) {
    const Eigen::Index dim = dims(rng);
    const DensityMatrix rho =
        make_density(testsupport::random_density_matrix(rng, dim));
    const Observable a(testsupport::random_hermitian(rng, dim), "A");
    const Observable h(testsupport::random_hermitian(rng, dim), "H");
    for (double t : {0.1, 1.0, 5.0}) {
      const double schroedinger = expectation(evolve_von_neumann(rho, h, t), a);
      const double heisenberg = expectation(rho, evolve_heisenberg(a, h, t));
      REQUIRE(schroedinger == Approx(heisenberg).margin(1e-8));
    }
  }
}
