#include <catch2/catch.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "densim/observables.hpp"
#include "test_support.hpp"

using namespace densim;

TEST_CASE("diagonal_observable basics") {
  const Observable a = diagonal_observable({1.0, 2.0, 3.0});
  for (Eigen::Index k = 0; k < 3; ++k)
    REQUIRE(a.matrix()(k, k).real() == static_cast<double>(k + 1));
  REQUIRE(diagonal_observable({0.0}).dim() == 1);
  REQUIRE_THROWS_AS(diagonal_observable({}), EmptyList);
  REQUIRE_THROWS_AS(
      diagonal_observable({1.0, std::numeric_limits<double>::quiet_NaN()}),
      NonFinite);
}

TEST_CASE("expectation of a diagonal observable on a basis state is sharp") {
  const Observable a = diagonal_observable({2.5, -1.0, 7.25, 0.5});
  for (Eigen::Index k = 0; k < 4; ++k) {
    const DensityMatrix rho = classical_basis_state(k, 4);
    REQUIRE(expectation(rho, a) == a.matrix()(k, k).real());
    REQUIRE(variance(rho, a) == 0.0);
  }
}

TEST_CASE("expectation examples") {
  const DensityMatrix maximally_mixed = classical_mixture({0.5, 0.5});
  REQUIRE(expectation(maximally_mixed, Observable(pauli_z(), "Z")) ==
          Approx(0.0).margin(1e-12));
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const DensityMatrix rho = make_density(plus);
  // Trace oracle, written out: tr(plus * X).
  const ComplexMatrix product = plus * pauli_x();
  REQUIRE(expectation(rho, Observable(pauli_x(), "X")) ==
          Approx(product.trace().real()).margin(1e-12));
  REQUIRE(expectation(rho, Observable(pauli_x(), "X")) == Approx(1.0).margin(1e-12));
  REQUIRE_THROWS_AS(expectation(rho, diagonal_observable({1.0, 2.0, 3.0})),
                    DimMismatch);
}

TEST_CASE("variance examples") {
  const DensityMatrix maximally_mixed = classical_mixture({0.5, 0.5});
  // Trace oracle: <Z^2> = 1, <Z> = 0.
  REQUIRE(variance(maximally_mixed, Observable(pauli_z(), "Z")) ==
          Approx(1.0).margin(1e-12));
  std::mt19937_64 rng(505);
  const DensityMatrix random_rho =
      make_density(testsupport::random_density_matrix(rng, 3));
  const Observable constant(ComplexMatrix(2.5 * identity_matrix(3)), "c");
  REQUIRE(variance(random_rho, constant) == Approx(0.0).margin(1e-12));
}

TEST_CASE("robertson_check on a commuting pair is vacuous") {
  std::mt19937_64 rng(606);
  const DensityMatrix rho = make_density(testsupport::random_density_matrix(rng, 2));
  const Observable x(pauli_x(), "X");
  const RobertsonCheck check = robertson_check(rho, x, x);
  REQUIRE(check.rhs == Approx(0.0).margin(1e-12));
  REQUIRE(check.holds);
}

TEST_CASE("robertson_check equality case") {
  // rho = |0><0|, A = X, B = Y: var X = var Y = 1, [X, Y] = 2iZ, <Z> = 1.
  const DensityMatrix rho = classical_basis_state(0, 2);
  const RobertsonCheck check =
      robertson_check(rho, Observable(pauli_x(), "X"), Observable(pauli_y(), "Y"));
  REQUIRE(check.lhs == Approx(1.0).margin(1e-9));
  REQUIRE(check.rhs == Approx(1.0).margin(1e-9));
  REQUIRE(check.holds);
}

TEST_CASE("robertson inequality holds for random triples") {
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> dims(2, 8);
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::Index dim = dims(rng);
    const DensityMatrix rho =
        make_density(testsupport::random_density_matrix(rng, dim));
    const Observable a(testsupport::random_hermitian(rng, dim), "A");
    const Observable b(testsupport::random_hermitian(rng, dim), "B");
    REQUIRE(robertson_check(rho, a, b).holds);
  }
}

TEST_CASE("expectation is linear") {
  std::mt19937_64 rng(808);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix rho = make_density(testsupport::random_density_matrix(rng, 5));
    const ComplexMatrix ma = testsupport::random_hermitian(rng, 5);
    const ComplexMatrix mb = testsupport::random_hermitian(rng, 5);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const double alpha = coeff(rng), beta = coeff(rng);
    const Observable combined(ComplexMatrix(alpha * ma + beta * mb), "aA+bB");
    const double direct = expectation(rho, combined);
    const double split = alpha * expectation(rho, Observable(ma, "A")) +
                         beta * expectation(rho, Observable(mb, "B"));
    REQUIRE(direct == Approx(split).margin(1e-9));
  }
}

TEST_CASE("observable construction validates") {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  REQUIRE_THROWS_AS(Observable(m, "bad"), NotHermitian);
}
