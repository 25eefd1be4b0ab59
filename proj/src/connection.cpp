#include "pencil/connection.hpp"

namespace pencil {

namespace {

// Evaluates the four solutions at x = 0 with an optional table swap: the
// swapped evaluation is exactly the same series with the roles of the two
// sign tables exchanged, i.e. the solutions of the flipped potential.
struct BasisAtZero {
  Evaluation f1p, f1m, f2p, f2m;
};

BasisAtZero basis_at_zero(const VTable& vplus, const VTable& vminus,
                          double beta, Complex lambda, bool swap_tables,
                          const EvalOptions& opts) {
  const VTable& tp = swap_tables ? vminus : vplus;
  const VTable& tm = swap_tables ? vplus : vminus;
  BasisAtZero b;
  b.f1p = eval_solution_unchecked(tp, beta, SolutionKind::f1_plus, lambda, 0.0, opts);
  b.f1m = eval_solution_unchecked(tm, beta, SolutionKind::f1_minus, lambda, 0.0, opts);
  b.f2p = eval_solution_unchecked(tp, beta, SolutionKind::f2_plus, lambda, 0.0, opts);
  b.f2m = eval_solution_unchecked(tm, beta, SolutionKind::f2_minus, lambda, 0.0, opts);
  return b;
}

}  // namespace

Complex c11_value(const VTable& vplus, const VTable& vminus, double beta,
                  Complex lambda, bool swap_tables, const EvalOptions& opts) {
  const VTable& tp = swap_tables ? vminus : vplus;
  const VTable& tm = swap_tables ? vplus : vminus;
  const Evaluation f2p =
      eval_solution_unchecked(tp, beta, SolutionKind::f2_plus, lambda, 0.0, opts);
  const Evaluation f1m =
      eval_solution_unchecked(tm, beta, SolutionKind::f1_minus, lambda, 0.0, opts);
  return wronskian(f2p, f1m) / (2.0 * kI * lambda);
}

Complex c12_value(const VTable& vplus, const VTable& vminus, double beta,
                  Complex lambda, bool swap_tables, const EvalOptions& opts) {
  const VTable& tp = swap_tables ? vminus : vplus;
  const Evaluation f1p =
      eval_solution_unchecked(tp, beta, SolutionKind::f1_plus, lambda, 0.0, opts);
  const Evaluation f2p =
      eval_solution_unchecked(tp, beta, SolutionKind::f2_plus, lambda, 0.0, opts);
  return wronskian(f1p, f2p) / (2.0 * kI * lambda);
}

ConnectionCoefficients connection_coefficients(const VTable& vplus,
                                               const VTable& vminus,
                                               double beta, Complex lambda,
                                               const EvalOptions& opts) {
  const BasisAtZero b = basis_at_zero(vplus, vminus, beta, lambda, false, opts);

  ConnectionCoefficients cc;
  cc.lambda = lambda;
  cc.c11 = wronskian(b.f2p, b.f1m) / (2.0 * kI * lambda);
  cc.c12 = wronskian(b.f1p, b.f2p) / (2.0 * kI * lambda);
  cc.c21 = -(kI / beta) * cc.c12;
  cc.c22 = wronskian(b.f1p, b.f2m) / (2.0 * lambda * beta);
  cc.c11_neg = c11_value(vplus, vminus, beta, -lambda, false, opts);
  return cc;
}

}  // namespace pencil
