#pragma once

#include "pencil/solution.hpp"
#include "pencil/types.hpp"
#include "pencil/vtable.hpp"

namespace pencil {

// Scalars connecting the two half-line bases across x = 0 (value and slope
// matched there):
//   f2_plus  extended to x > 0:  c11 f1_plus + c12 f1_minus
//   f1_plus  extended to x < 0:  c22 f2_plus + c21 f2_minus
// Constructed identities: c21 = -(i/beta) c12 exactly, and c22 equals
// (i/beta) times the c11 of the flipped potential at -lambda (the flipped
// tables are the sign-swapped ones, so both sides are computable here).
struct ConnectionCoefficients {
  Complex lambda;
  Complex c11, c12, c21, c22;
  Complex c11_neg;  // c11 at -lambda, same potential (kept for the beta formula)
};

inline Complex wronskian(const Evaluation& u, const Evaluation& v) {
  return u.derivative * v.value - u.value * v.derivative;
}

ConnectionCoefficients connection_coefficients(const VTable& vplus,
                                               const VTable& vminus,
                                               double beta, Complex lambda,
                                               const EvalOptions& opts = {});

// Individual entries, optionally with the roles of the two tables swapped
// (equivalent to evaluating the flipped potential).
Complex c11_value(const VTable& vplus, const VTable& vminus, double beta,
                  Complex lambda, bool swap_tables = false,
                  const EvalOptions& opts = {});
Complex c12_value(const VTable& vplus, const VTable& vminus, double beta,
                  Complex lambda, bool swap_tables = false,
                  const EvalOptions& opts = {});

}  // namespace pencil
