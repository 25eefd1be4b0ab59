#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "pencil/potential.hpp"
#include "pencil/types.hpp"

namespace pencil {

enum class Sign { plus, minus };

inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// Coefficient tables v_alpha, v_{n,alpha} (1 <= n <= alpha <= M) defining the
// series corrections of the four fundamental solutions. The two signs differ
// by the sign of every p-term in the defining relations; minus tables equal
// plus tables of the flipped potential.
struct VTable {
  Sign sign = Sign::plus;
  int M = 0;
  Eigen::VectorXcd single;              // v_alpha at index alpha-1; may be empty
  std::vector<Eigen::VectorXcd> dbl;    // dbl[alpha-1][n-1] = v_{n,alpha}
  bool divergence_suspected = false;

  bool has_singles() const { return single.size() == M; }
  Complex single_at(int alpha) const;        // 1-based, OutOfRange checked
  Complex at(int n, int alpha) const;        // v_{n,alpha}, OutOfRange checked
  double column_magnitude(int alpha) const;  // max_n |v_{n,alpha}|
};

struct BuildOptions {
  // divergence diagnostic: flag if the column magnitude grows by more than
  // this factor over the final 5 columns
  double growth_factor = 1e6;
};

// Forward construction by increasing column index: the linear relation gives
// v_alpha, the off-diagonal relation gives v_{n,alpha} for n < alpha, and the
// diagonal relation is solved for v_{alpha,alpha}. Coefficients beyond the
// potential's harmonic count are zero.
VTable build_vtable(const FourierPotential& pot, int M, Sign sign,
                    const BuildOptions& opts = {});

// Largest relative residual of the three defining relations over all columns;
// forward-built tables satisfy them to roundoff.
double max_recurrence_residual(const VTable& vt, const FourierPotential& pot);

// Recovers p_1..q_Nout from complete double-index tables of both signs by a
// per-column 4-equation elimination in (v_alpha^+, v_alpha^-, p_alpha,
// q_alpha): the sum of the two linear relations gives v^+ + v^-, the
// difference of the two diagonal relations gives v^+ - v^-, then the plus
// relations yield p_alpha and q_alpha. Single-index entries are re-derived;
// if the tables carry them, they must agree to 1e-9 (ConsistencyMismatch).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> invert_recurrences(
    const VTable& vplus, const VTable& vminus, int Nout);

}  // namespace pencil
