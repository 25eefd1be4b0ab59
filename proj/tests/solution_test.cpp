#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "pencil/errors.hpp"
#include "pencil/solution.hpp"

using namespace pencil;
using pencil::testing::random_potential;

namespace {
FourierPotential zero_potential(double beta) {
  return validate_potential(beta, {}, {});
}
}  // namespace

TEST_CASE("zero potential gives bare exponentials") {
  const FourierPotential pot = zero_potential(2.0);
  const VTable plus = build_vtable(pot, 4, Sign::plus);
  const VTable minus = build_vtable(pot, 4, Sign::minus);
  const Complex lam{0.7, 0.4};

  const Evaluation a = eval_solution(plus, 2.0, SolutionKind::f1_plus, lam, 1.3);
  CHECK(std::abs(a.value - std::exp(kI * lam * 1.3)) < 1e-14);
  CHECK(std::abs(a.derivative - kI * lam * std::exp(kI * lam * 1.3)) < 1e-14);

  const Evaluation b = eval_solution(minus, 2.0, SolutionKind::f2_minus, lam, -0.8);
  CHECK(std::abs(b.value - std::exp(-lam * 2.0 * -0.8)) < 1e-14);
  CHECK(std::abs(b.derivative + lam * 2.0 * std::exp(-lam * 2.0 * -0.8)) < 1e-14);
}

TEST_CASE("q = [1] series value at the origin") {
  // 1 + v11/(1+2) + v12/(1+2) + v22/(2+2) = 1 - 1/3 + 1/6 - 1/8 = 17/24
  Eigen::VectorXcd q(1);
  q[0] = 1.0;
  const FourierPotential pot = validate_potential(1.0, {}, q);
  const VTable plus = build_vtable(pot, 2, Sign::plus);
  const Evaluation e =
      eval_solution(plus, 1.0, SolutionKind::f1_plus, Complex{1, 0}, 0.0);
  CHECK(std::abs(e.value - Complex{17.0 / 24.0, 0.0}) < 1e-15);
}

TEST_CASE("series are quasi-periodic with the kind's multiplier") {
  std::mt19937_64 rng(31);
  const FourierPotential pot = random_potential(rng, 2, 0.3, 1.4);
  const VTable plus = build_vtable(pot, 12, Sign::plus);
  const VTable minus = build_vtable(pot, 12, Sign::minus);
  const Complex lam{0.31, -0.22};

  struct Case {
    const VTable* vt;
    SolutionKind kind;
    Complex kappa;
  };
  const Case cases[] = {
      {&plus, SolutionKind::f1_plus, kI * lam},
      {&minus, SolutionKind::f1_minus, -kI * lam},
      {&plus, SolutionKind::f2_plus, lam * 1.4},
      {&minus, SolutionKind::f2_minus, -lam * 1.4},
  };
  for (const Case& c : cases) {
    const Complex mult = std::exp(2.0 * kPi * c.kappa);
    const Evaluation at = eval_solution(*c.vt, 1.4, c.kind, lam, 0.4);
    const Evaluation shifted =
        eval_solution(*c.vt, 1.4, c.kind, lam, 0.4 + 2.0 * kPi);
    CHECK(std::abs(shifted.value - mult * at.value) <=
          1e-12 * std::max(1.0, std::abs(mult * at.value)));
  }
}

TEST_CASE("f2 kinds are f1 kinds at the substituted parameter") {
  std::mt19937_64 rng(37);
  const double beta = 1.7;
  const FourierPotential pot = random_potential(rng, 2, 0.3, beta);
  const VTable plus = build_vtable(pot, 10, Sign::plus);
  const Complex lam{0.4, 0.3};
  for (double x : {-1.0, 0.0, 0.9}) {
    const Evaluation a = eval_solution(plus, beta, SolutionKind::f2_plus, lam, x);
    const Evaluation b =
        eval_solution(plus, beta, SolutionKind::f1_plus, -kI * lam * beta, x);
    CHECK(std::abs(a.value - b.value) < 1e-13);
    CHECK(std::abs(a.derivative - b.derivative) < 1e-13);
  }
}

TEST_CASE("jets differentiate the series termwise") {
  std::mt19937_64 rng(41);
  const FourierPotential pot = random_potential(rng, 2, 0.3, 1.0);
  const VTable plus = build_vtable(pot, 10, Sign::plus);
  const Complex lam{0.35, 0.2};
  const double x = 0.6, h = 1e-5;
  const Jet j = eval_solution_jet(plus, 1.0, SolutionKind::f1_plus, lam, x);
  const Evaluation lo = eval_solution(plus, 1.0, SolutionKind::f1_plus, lam, x - h);
  const Evaluation hi = eval_solution(plus, 1.0, SolutionKind::f1_plus, lam, x + h);
  CHECK(std::abs((hi.value - lo.value) / (2 * h) - j.d1) < 1e-8);
  CHECK(std::abs((hi.value - 2.0 * j.value + lo.value) / (h * h) - j.d2) < 1e-5);
}

TEST_CASE("kind and table sign must pair up") {
  const VTable plus = build_vtable(zero_potential(1.0), 2, Sign::plus);
  CHECK_THROWS_AS(
      eval_solution(plus, 1.0, SolutionKind::f1_minus, Complex{1, 1}, 0.0),
      OutOfRange);
  CHECK_NOTHROW(
      eval_solution_unchecked(plus, 1.0, SolutionKind::f1_minus, Complex{1, 1}, 0.0));
}

TEST_CASE("near-pole evaluation is refused") {
  Eigen::VectorXcd q(1);
  q[0] = 1.0;
  const FourierPotential pot = validate_potential(1.0, {}, q);
  const VTable plus = build_vtable(pot, 3, Sign::plus);
  // denominator 1 + 2 lambda = 8e-9 at lambda = -0.5 + 4e-9
  CHECK_THROWS_AS(eval_solution(plus, 1.0, SolutionKind::f1_plus,
                                Complex{-0.5 + 4e-9, 0.0}, 0.0),
                  NearPole);
  CHECK_NOTHROW(eval_solution(plus, 1.0, SolutionKind::f1_plus,
                              Complex{-0.5 + 1e-6, 0.0}, 0.0));
}

TEST_CASE("residue function matches the table columns") {
  Eigen::VectorXcd q(1);
  q[0] = 1.0;
  const FourierPotential pot = validate_potential(1.0, {}, q);
  const VTable plus = build_vtable(pot, 2, Sign::plus);
  // f_1(0) = v11 + v12 = -1 + 1/2
  CHECK(std::abs(residue_function(plus, 1, 0.0) - Complex{-0.5, 0.0}) < 1e-15);
  CHECK_THROWS_AS(residue_function(plus, 3, 0.0), OutOfRange);
}

TEST_CASE("residue function is the diagonal times the opposite solution") {
  std::mt19937_64 rng(43);
  const FourierPotential pot = random_potential(rng, 3, 0.2, 1.2);
  const int M = 24;
  const VTable plus = build_vtable(pot, M, Sign::plus);
  const VTable minus = build_vtable(pot, M, Sign::minus);
  const double tail =
      10.0 * std::max(plus.column_magnitude(M), minus.column_magnitude(M)) + 1e-13;
  for (int n = 1; n <= 3; ++n) {
    for (double x : pencil::testing::linear_grid(0.0, 2.0 * kPi, 7)) {
      // f_n^+ = v_nn^+ f1_minus(x, -n/2), f_n^- = v_nn^- f1_plus(x, n/2)
      const Complex fp = residue_function(plus, n, x);
      const Evaluation g = eval_solution(minus, 1.2, SolutionKind::f1_minus,
                                         Complex{-0.5 * n, 0.0}, x);
      CHECK(std::abs(fp - plus.at(n, n) * g.value) <= tail);

      const Complex fm = residue_function(minus, n, x);
      const Evaluation h = eval_solution(plus, 1.2, SolutionKind::f1_plus,
                                         Complex{0.5 * n, 0.0}, x);
      CHECK(std::abs(fm - minus.at(n, n) * h.value) <= tail);
    }
  }
}
