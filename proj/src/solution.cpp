#include "pencil/solution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pencil/errors.hpp"

namespace pencil {

namespace {

Complex kind_kappa(SolutionKind k, Complex lambda, double beta) {
  switch (k) {
    case SolutionKind::f1_plus:
      return kI * lambda;
    case SolutionKind::f1_minus:
      return -kI * lambda;
    case SolutionKind::f2_plus:
      return lambda * beta;
    case SolutionKind::f2_minus:
    default:
      return -lambda * beta;
  }
}

Complex kind_denominator_shift(SolutionKind k, Complex lambda, double beta) {
  switch (k) {
    case SolutionKind::f1_plus:
      return 2.0 * lambda;
    case SolutionKind::f1_minus:
      return -2.0 * lambda;
    case SolutionKind::f2_plus:
      return -2.0 * kI * lambda * beta;
    case SolutionKind::f2_minus:
    default:
      return 2.0 * kI * lambda * beta;
  }
}

struct KahanSum {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

Jet eval_jet_impl(const VTable& vt, double beta, SolutionKind kind,
                  Complex lambda, double x, const EvalOptions& opts) {
  const Complex kappa = kind_kappa(kind, lambda, beta);
  const Complex shift = kind_denominator_shift(kind, lambda, beta);

  double min_den = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= vt.M; ++n) {
    min_den = std::min(min_den, std::abs(static_cast<double>(n) + shift));
  }
  if (min_den <= opts.epsilon_pole) {
    throw NearPole("series denominator " + std::to_string(min_den) +
                   " within epsilon_pole of zero; evaluate the residue "
                   "function instead");
  }

  KahanSum u, u1, u2;
  u.add(Complex{1.0, 0.0});
  for (int alpha = 1; alpha <= vt.M; ++alpha) {
    KahanSum inner;
    if (vt.has_singles()) inner.add(vt.single[alpha - 1]);
    for (int n = 1; n <= alpha; ++n) {
      inner.add(vt.dbl[alpha - 1][n - 1] / (static_cast<double>(n) + shift));
    }
    const Complex e = std::exp(Complex{0.0, alpha * x});
    const Complex term = inner.sum * e;
    const Complex ia{0.0, static_cast<double>(alpha)};
    u.add(term);
    u1.add(ia * term);
    u2.add(ia * ia * term);
  }

  const Complex E = std::exp(kappa * x);
  Jet j;
  j.value = E * u.sum;
  j.d1 = E * (kappa * u.sum + u1.sum);
  j.d2 = E * (kappa * kappa * u.sum + 2.0 * kappa * u1.sum + u2.sum);
  return j;
}

}  // namespace

Evaluation eval_solution(const VTable& vt, double beta, SolutionKind kind,
                         Complex lambda, double x, const EvalOptions& opts) {
  if (vt.sign != table_sign_for(kind)) {
    throw OutOfRange("table sign does not match the solution kind");
  }
  const Jet j = eval_jet_impl(vt, beta, kind, lambda, x, opts);
  return Evaluation{j.value, j.d1};
}

Jet eval_solution_jet(const VTable& vt, double beta, SolutionKind kind,
                      Complex lambda, double x, const EvalOptions& opts) {
  if (vt.sign != table_sign_for(kind)) {
    throw OutOfRange("table sign does not match the solution kind");
  }
  return eval_jet_impl(vt, beta, kind, lambda, x, opts);
}

Evaluation eval_solution_unchecked(const VTable& vt, double beta,
                                   SolutionKind kind, Complex lambda, double x,
                                   const EvalOptions& opts) {
  const Jet j = eval_jet_impl(vt, beta, kind, lambda, x, opts);
  return Evaluation{j.value, j.d1};
}

Complex residue_function(const VTable& vt, int n, double x) {
  if (n < 1 || n > vt.M) {
    throw OutOfRange("residue function order " + std::to_string(n) +
                     " outside table of order " + std::to_string(vt.M));
  }
  KahanSum acc;
  for (int alpha = n; alpha <= vt.M; ++alpha) {
    acc.add(vt.dbl[alpha - 1][n - 1] * std::exp(Complex{0.0, alpha * x}));
  }
  return std::exp(Complex{0.0, -0.5 * n * x}) * acc.sum;
}

}  // namespace pencil
