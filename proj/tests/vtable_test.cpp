#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "pencil/errors.hpp"
#include "pencil/vtable.hpp"

using namespace pencil;
using pencil::testing::random_potential;

namespace {
FourierPotential one_harmonic(Complex p1, Complex q1, double beta = 1.0) {
  Eigen::VectorXcd p(1), q(1);
  p[0] = p1;
  q[0] = q1;
  return validate_potential(beta, p, q);
}
}  // namespace

TEST_CASE("hand values for q = [1]") {
  const FourierPotential pot = one_harmonic(0.0, 1.0);
  const VTable plus = build_vtable(pot, 2, Sign::plus);
  CHECK(std::abs(plus.at(1, 1) - Complex{-1, 0}) < 1e-15);
  CHECK(std::abs(plus.at(1, 2) - Complex{0.5, 0}) < 1e-15);
  CHECK(std::abs(plus.at(2, 2) - Complex{-0.5, 0}) < 1e-15);
  CHECK(std::abs(plus.single_at(1)) < 1e-15);
  CHECK(std::abs(plus.single_at(2)) < 1e-15);

  const VTable minus = build_vtable(pot, 2, Sign::minus);
  CHECK(std::abs(minus.at(1, 1) - Complex{-1, 0}) < 1e-15);
}

TEST_CASE("hand values for p = [1]") {
  const FourierPotential pot = one_harmonic(1.0, 0.0);
  const VTable plus = build_vtable(pot, 1, Sign::plus);
  CHECK(std::abs(plus.single_at(1) - Complex{-1, 0}) < 1e-15);
  CHECK(std::abs(plus.at(1, 1) - Complex{1, 0}) < 1e-15);

  const VTable minus = build_vtable(pot, 1, Sign::minus);
  CHECK(std::abs(minus.single_at(1) - Complex{1, 0}) < 1e-15);
  CHECK(std::abs(minus.at(1, 1) - Complex{-1, 0}) < 1e-15);
}

TEST_CASE("first column closes as v_11 = -v_1 - q_1 exactly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    const FourierPotential pot = one_harmonic(
        pencil::testing::draw_in_disk(rng, 1.0),
        pencil::testing::draw_in_disk(rng, 1.0));
    for (Sign s : {Sign::plus, Sign::minus}) {
      const VTable vt = build_vtable(pot, 1, s);
      CHECK(std::abs(vt.at(1, 1) + vt.single_at(1) + pot.q_at(1)) < 1e-15);
    }
  }
}

TEST_CASE("the two signs coincide when p vanishes") {
  std::mt19937_64 rng(11);
  Eigen::VectorXcd q(3);
  for (int i = 0; i < 3; ++i) q[i] = pencil::testing::draw_in_disk(rng, 0.8);
  const FourierPotential pot = validate_potential(1.0, {}, q);
  const VTable a = build_vtable(pot, 8, Sign::plus);
  const VTable b = build_vtable(pot, 8, Sign::minus);
  for (int alpha = 1; alpha <= 8; ++alpha) {
    CHECK(std::abs(a.single_at(alpha) - b.single_at(alpha)) < 1e-15);
    for (int n = 1; n <= alpha; ++n) {
      CHECK(std::abs(a.at(n, alpha) - b.at(n, alpha)) < 1e-15);
    }
  }
}

TEST_CASE("minus tables equal plus tables of the flipped potential") {
  std::mt19937_64 rng(13);
  const FourierPotential pot = random_potential(rng, 3, 0.5, 1.3);
  const VTable minus = build_vtable(pot, 10, Sign::minus);
  const VTable plus_flipped = build_vtable(flipped(pot), 10, Sign::plus);
  for (int alpha = 1; alpha <= 10; ++alpha) {
    CHECK(std::abs(minus.single_at(alpha) - plus_flipped.single_at(alpha)) < 1e-15);
    for (int n = 1; n <= alpha; ++n) {
      CHECK(std::abs(minus.at(n, alpha) - plus_flipped.at(n, alpha)) < 1e-15);
    }
  }
}

TEST_CASE("forward tables satisfy the defining relations to roundoff") {
  std::mt19937_64 rng(17);
  const FourierPotential pot = random_potential(rng, 3, 0.5, 0.8);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const VTable vt = build_vtable(pot, 16, s);
    CHECK(max_recurrence_residual(vt, pot) < 1e-12);
  }
}

TEST_CASE("residual check requires single-index entries") {
  const VTable vt = build_vtable(one_harmonic(0.0, 1.0), 2, Sign::plus);
  VTable stripped = vt;
  stripped.single.resize(0);
  CHECK_THROWS_AS(max_recurrence_residual(stripped, one_harmonic(0.0, 1.0)),
                  IncompleteTable);
}

TEST_CASE("inversion recovers the potential from both tables") {
  std::mt19937_64 rng(19);
  const FourierPotential pot = random_potential(rng, 3, 0.5, 1.1);
  const VTable plus = build_vtable(pot, 8, Sign::plus);
  const VTable minus = build_vtable(pot, 8, Sign::minus);
  const auto [p, q] = invert_recurrences(plus, minus, 8);
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(p[n - 1] - pot.p_at(n)) < 1e-9);
    CHECK(std::abs(q[n - 1] - pot.q_at(n)) < 1e-9);
  }
}

TEST_CASE("inversion works without single-index entries") {
  std::mt19937_64 rng(23);
  const FourierPotential pot = random_potential(rng, 2, 0.4, 1.0);
  VTable plus = build_vtable(pot, 6, Sign::plus);
  VTable minus = build_vtable(pot, 6, Sign::minus);
  plus.single.resize(0);
  minus.single.resize(0);
  const auto [p, q] = invert_recurrences(plus, minus, 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs(p[n - 1] - pot.p_at(n)) < 1e-9);
    CHECK(std::abs(q[n - 1] - pot.q_at(n)) < 1e-9);
  }
}

TEST_CASE("tampered single-index entries are rejected") {
  const FourierPotential pot = one_harmonic(0.3, 0.7);
  VTable plus = build_vtable(pot, 4, Sign::plus);
  const VTable minus = build_vtable(pot, 4, Sign::minus);
  plus.single[2] += 1e-3;
  CHECK_THROWS_AS(invert_recurrences(plus, minus, 4), ConsistencyMismatch);
}

TEST_CASE("short tables are reported incomplete") {
  const FourierPotential pot = one_harmonic(0.3, 0.7);
  const VTable plus = build_vtable(pot, 4, Sign::plus);
  const VTable minus = build_vtable(pot, 4, Sign::minus);
  CHECK_THROWS_AS(invert_recurrences(plus, minus, 5), IncompleteTable);
}

TEST_CASE("column growth diagnostic") {
  // modest coefficients: no flag
  std::mt19937_64 rng(29);
  const FourierPotential small = random_potential(rng, 3, 0.2, 1.0);
  CHECK_FALSE(build_vtable(small, 32, Sign::plus).divergence_suspected);

  // huge first harmonics: columns blow up and the flag trips
  const FourierPotential big = one_harmonic(160.0, 160.0);
  CHECK(build_vtable(big, 32, Sign::plus).divergence_suspected);
}

TEST_CASE("accessors reject out-of-range indices") {
  const VTable vt = build_vtable(one_harmonic(0.0, 1.0), 3, Sign::plus);
  CHECK_THROWS_AS(vt.at(0, 1), OutOfRange);
  CHECK_THROWS_AS(vt.at(2, 1), OutOfRange);
  CHECK_THROWS_AS(vt.at(1, 4), OutOfRange);
  CHECK_THROWS_AS(vt.single_at(0), OutOfRange);
  CHECK_THROWS_AS(vt.single_at(4), OutOfRange);
  CHECK_THROWS_AS(vt.column_magnitude(0), OutOfRange);
}
