#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "pencil/connection.hpp"

using namespace pencil;
using pencil::testing::lambda_off_poles;
using pencil::testing::random_potential;

TEST_CASE("zero potential closed forms") {
  std::mt19937_64 rng(47);
  for (double beta : {1.0, 2.0, 5.5}) {
    const FourierPotential pot = validate_potential(beta, {}, {});
    const VTable plus = build_vtable(pot, 4, Sign::plus);
    const VTable minus = build_vtable(pot, 4, Sign::minus);
    for (int i = 0; i < 6; ++i) {
      const Complex lam = lambda_off_poles(rng);
      const ConnectionCoefficients cc =
          connection_coefficients(plus, minus, beta, lam);
      CHECK(std::abs(cc.c11 - Complex{0.5, -0.5 * beta}) < 1e-12);
      CHECK(std::abs(cc.c12 - Complex{0.5, 0.5 * beta}) < 1e-12);
      CHECK(std::abs(cc.c21 - Complex{0.5, -0.5 / beta}) < 1e-12);
      CHECK(std::abs(cc.c22 - Complex{0.5, 0.5 / beta}) < 1e-12);
    }
  }
}

TEST_CASE("construction identities, potential with p present") {
  std::mt19937_64 rng(53);
  const double beta = 1.3;
  const FourierPotential pot = random_potential(rng, 3, 0.3, beta);
  const VTable plus = build_vtable(pot, 24, Sign::plus);
  const VTable minus = build_vtable(pot, 24, Sign::minus);
  for (int i = 0; i < 8; ++i) {
    const Complex lam = lambda_off_poles(rng);
    const ConnectionCoefficients cc =
        connection_coefficients(plus, minus, beta, lam);

    CHECK(std::abs(cc.c21 + (kI / beta) * cc.c12) < 1e-14);

    // c22 equals (i/beta) times the swapped-table c11 at -lambda
    const Complex rhs = (kI / beta) * c11_value(plus, minus, beta, -lam, true);
    CHECK(std::abs(cc.c22 - rhs) <= 1e-12 * std::max(1.0, std::abs(cc.c22)));

    // stored c11_neg is plain c11 at the negated argument
    CHECK(std::abs(cc.c11_neg - c11_value(plus, minus, beta, -lam)) == 0.0);
  }
}

TEST_CASE("wronskian normalizations of the two bases") {
  std::mt19937_64 rng(59);
  const double beta = 0.9;
  const FourierPotential pot = random_potential(rng, 3, 0.1, beta);
  const VTable plus = build_vtable(pot, 32, Sign::plus);
  const VTable minus = build_vtable(pot, 32, Sign::minus);
  for (int i = 0; i < 5; ++i) {
    const Complex lam = lambda_off_poles(rng);
    for (double x : pencil::testing::linear_grid(-1.5, 1.5, 7)) {
      const Evaluation f1p = eval_solution(plus, beta, SolutionKind::f1_plus, lam, x);
      const Evaluation f1m = eval_solution(minus, beta, SolutionKind::f1_minus, lam, x);
      CHECK(std::abs(wronskian(f1p, f1m) - 2.0 * kI * lam) < 1e-8);

      const Evaluation f2p = eval_solution(plus, beta, SolutionKind::f2_plus, lam, x);
      const Evaluation f2m = eval_solution(minus, beta, SolutionKind::f2_minus, lam, x);
      CHECK(std::abs(wronskian(f2p, f2m) - 2.0 * lam * beta) < 1e-8);
    }
  }
}

TEST_CASE("swapped-table entries equal flipped-potential entries") {
  std::mt19937_64 rng(61);
  const double beta = 1.6;
  const FourierPotential pot = random_potential(rng, 2, 0.3, beta);
  const VTable plus = build_vtable(pot, 16, Sign::plus);
  const VTable minus = build_vtable(pot, 16, Sign::minus);
  const FourierPotential fpot = flipped(pot);
  const VTable fplus = build_vtable(fpot, 16, Sign::plus);
  const VTable fminus = build_vtable(fpot, 16, Sign::minus);
  for (int i = 0; i < 5; ++i) {
    const Complex lam = lambda_off_poles(rng);
    CHECK(std::abs(c11_value(plus, minus, beta, lam, true) -
                   c11_value(fplus, fminus, beta, lam)) < 1e-14);
    CHECK(std::abs(c12_value(plus, minus, beta, lam, true) -
                   c12_value(fplus, fminus, beta, lam)) < 1e-14);
  }
}
