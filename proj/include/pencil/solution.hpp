#pragma once

#include "pencil/types.hpp"
#include "pencil/vtable.hpp"

namespace pencil {

// The four fundamental solutions:
//   f1_plus  = e^{ i lam x} (1 + sum v_a e^{iax} + sum v_{na}/(n+2lam)      e^{iax})
//   f1_minus = e^{-i lam x} (...,                  denominators n-2lam)
//   f2_plus  = e^{ lam b x} (...,                  denominators n-2i lam b)
//   f2_minus = e^{-lam b x} (...,                  denominators n+2i lam b)
// f1 kinds use plus/minus tables respectively and represent the solution on
// x >= 0; f2 kinds likewise on x < 0. Every series evaluates at any real x;
// callers pick the half-line.
enum class SolutionKind { f1_plus, f1_minus, f2_plus, f2_minus };

inline Sign table_sign_for(SolutionKind k) {
  return (k == SolutionKind::f1_plus || k == SolutionKind::f2_plus)
             ? Sign::plus
             : Sign::minus;
}

struct Evaluation {
  Complex value;
  Complex derivative;
};

// value, d/dx and d2/dx2 (termwise)
struct Jet {
  Complex value;
  Complex d1;
  Complex d2;
};

struct EvalOptions {
  double epsilon_pole = 1e-8;  // NearPole when min_n |denominator| <= this
};

// Requires vt.sign == table_sign_for(kind); Kahan-compensated column sums.
Evaluation eval_solution(const VTable& vt, double beta, SolutionKind kind,
                         Complex lambda, double x, const EvalOptions& opts = {});

Jet eval_solution_jet(const VTable& vt, double beta, SolutionKind kind,
                      Complex lambda, double x, const EvalOptions& opts = {});

// Same arithmetic without the sign pairing check: pairing a kind with the
// opposite tables evaluates the corresponding solution of the flipped
// potential, which is what the cross-lambda connection identities and the
// sector detectors for negative-real-part eigenvalues need.
Evaluation eval_solution_unchecked(const VTable& vt, double beta,
                                   SolutionKind kind, Complex lambda, double x,
                                   const EvalOptions& opts = {});

// f_n(x) = e^{-inx/2} sum_{alpha=n}^{M} v_{n,alpha} e^{i alpha x}: the limit
// of (n +- 2 lam) f1(x, lam) at lam = -+ n/2, proportional to the opposite
// solution at lam = -+ n/2.
Complex residue_function(const VTable& vt, int n, double x);

}  // namespace pencil
