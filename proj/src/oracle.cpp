#include "pencil/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pencil/connection.hpp"
#include "pencil/errors.hpp"

namespace pencil {

namespace {

// y'' = c(x) y as a first order pair (y, y')
struct State {
  Complex y;
  Complex yp;
};

// Coefficient of the half-line equation; the negative branch carries the
// -2 i lambda beta p term matching the series exponents there.
Complex branch_coeff(const FourierPotential& pot, Complex lambda, double x,
                     bool negative_branch) {
  const PotentialSample s = evaluate_potential(pot, x);
  if (negative_branch) {
    const double b = pot.beta;
    return -2.0 * kI * lambda * b * s.p + s.q + lambda * lambda * b * b;
  }
  return 2.0 * lambda * s.p + s.q - lambda * lambda;
}

// Coefficient of the equation the given series kind satisfies at every x
// (f2 kinds are f1 kinds at the substituted spectral parameter, so their
// equation keeps its negative-branch form on the whole line).
Complex kind_coeff(const FourierPotential& pot, Complex lambda,
                   SolutionKind kind, double x) {
  const bool f2 =
      kind == SolutionKind::f2_plus || kind == SolutionKind::f2_minus;
  return branch_coeff(pot, lambda, x, f2);
}

// Dormand-Prince 5(4) step with the classic accept/reject controller.
State integrate_branch(const FourierPotential& pot, Complex lambda, State st,
                       double x0, double x1, bool negative_branch,
                       const IntegrateOptions& opts) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  auto rhs = [&](double x, const State& s) -> State {
    return {s.yp, branch_coeff(pot, lambda, x, negative_branch) * s.y};
  };
  auto axpy = [](const State& s, double a, const State& k) -> State {
    return {s.y + a * k.y, s.yp + a * k.yp};
  };

  const double span = x1 - x0;
  if (span == 0.0) return st;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  double x = x0;
  double h = dir * std::min(0.05, std::abs(span));

  while (dir * (x1 - x) > 0.0) {
    if (dir * (x + h - x1) > 0.0) h = x1 - x;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
      throw StepSizeUnderflow("step collapsed at x = " + std::to_string(x));
    }
    const State k1 = rhs(x, st);
    const State k2 = rhs(x + c2 * h, axpy(st, h * a21, k1));
    State s3 = axpy(st, h * a31, k1);
    s3 = axpy(s3, h * a32, k2);
    const State k3 = rhs(x + c3 * h, s3);
    State s4 = axpy(st, h * a41, k1);
    s4 = axpy(s4, h * a42, k2);
    s4 = axpy(s4, h * a43, k3);
    const State k4 = rhs(x + c4 * h, s4);
    State s5 = axpy(st, h * a51, k1);
    s5 = axpy(s5, h * a52, k2);
    s5 = axpy(s5, h * a53, k3);
    s5 = axpy(s5, h * a54, k4);
    const State k5 = rhs(x + c5 * h, s5);
    State s6 = axpy(st, h * a61, k1);
    s6 = axpy(s6, h * a62, k2);
    s6 = axpy(s6, h * a63, k3);
    s6 = axpy(s6, h * a64, k4);
    s6 = axpy(s6, h * a65, k5);
    const State k6 = rhs(x + h, s6);
    State s7 = axpy(st, h * b1, k1);
    s7 = axpy(s7, h * b3, k3);
    s7 = axpy(s7, h * b4, k4);
    s7 = axpy(s7, h * b5, k5);
    s7 = axpy(s7, h * b6, k6);
    const State k7 = rhs(x + h, s7);

    Complex err_y = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y +
                         e6 * k6.y + e7 * k7.y);
    Complex err_yp = h * (e1 * k1.yp + e3 * k3.yp + e4 * k4.yp + e5 * k5.yp +
                          e6 * k6.yp + e7 * k7.yp);
    const double sy =
        opts.tol + opts.tol * std::max(std::abs(st.y), std::abs(s7.y));
    const double syp =
        opts.tol + opts.tol * std::max(std::abs(st.yp), std::abs(s7.yp));
    const double err = std::sqrt(0.5 * (std::norm(err_y / sy) +
                                        std::norm(err_yp / syp)));

    if (err <= 1.0) {
      x += h;
      st = s7;
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return st;
}

State integrate_state(const FourierPotential& pot, Complex lambda, State st,
                      double x0, double x1, const IntegrateOptions& opts) {
  // split exactly at 0 so each branch sees a smooth coefficient
  if (x0 < 0.0 && x1 > 0.0) {
    st = integrate_branch(pot, lambda, st, x0, 0.0, true, opts);
    return integrate_branch(pot, lambda, st, 0.0, x1, false, opts);
  }
  if (x0 > 0.0 && x1 < 0.0) {
    st = integrate_branch(pot, lambda, st, x0, 0.0, false, opts);
    return integrate_branch(pot, lambda, st, 0.0, x1, true, opts);
  }
  const bool negative = 0.5 * (x0 + x1) < 0.0;
  return integrate_branch(pot, lambda, st, x0, x1, negative, opts);
}

Complex kind_kappa(SolutionKind kind, Complex lambda, double beta) {
  switch (kind) {
    case SolutionKind::f1_plus: return kI * lambda;
    case SolutionKind::f1_minus: return -kI * lambda;
    case SolutionKind::f2_plus: return lambda * beta;
    default: return -lambda * beta;
  }
}

constexpr double kVerifyEpsilonPole = 1e-4;  // series accuracy dies near poles

}  // namespace

IVPState integrate(const FourierPotential& pot, Complex lambda, IVPState from,
                   double x_target, const IntegrateOptions& opts) {
  const State out = integrate_state(pot, lambda, State{from.y, from.yprime},
                                    from.x, x_target, opts);
  return {x_target, out.y, out.yp};
}

SolutionReport verify_solution(const FourierPotential& pot, const VTable& vt,
                               SolutionKind kind, Complex lambda,
                               const std::vector<double>& x_grid,
                               const IntegrateOptions& opts) {
  if (x_grid.empty()) throw OutOfRange("verification grid is empty");
  const EvalOptions eopts{kVerifyEpsilonPole};
  const double beta = pot.beta;

  std::vector<Jet> jets;
  jets.reserve(x_grid.size());
  double sup = 0.0;
  for (double x : x_grid) {
    jets.push_back(eval_solution_jet(vt, beta, kind, lambda, x, eopts));
    sup = std::max(sup, std::abs(jets.back().value));
  }
  if (sup == 0.0) sup = 1.0;

  SolutionReport rep;
  for (size_t k = 0; k < x_grid.size(); ++k) {
    const Complex c = kind_coeff(pot, lambda, kind, x_grid[k]);
    const double res = std::abs(jets[k].d2 - c * jets[k].value) /
                       (sup * (1.0 + std::abs(c)));
    rep.ode_residual = std::max(rep.ode_residual, res);
  }

  State st{jets[0].value, jets[0].d1};
  double x = x_grid[0];
  for (size_t k = 1; k < x_grid.size(); ++k) {
    st = integrate_state(pot, lambda, st, x, x_grid[k], opts);
    x = x_grid[k];
    const double d = std::max(std::abs(st.y - jets[k].value),
                              std::abs(st.yp - jets[k].d1));
    rep.propagation_mismatch = std::max(rep.propagation_mismatch, d / sup);
  }

  const double x0 = x_grid[0];
  const Complex mult = std::exp(2.0 * kPi * kind_kappa(kind, lambda, beta));
  const State end = integrate_state(pot, lambda, State{jets[0].value, jets[0].d1},
                                    x0, x0 + 2.0 * kPi, opts);
  rep.quasi_periodicity_defect =
      std::max(std::abs(end.y - mult * jets[0].value),
               std::abs(end.yp - mult * jets[0].d1)) /
      (sup * std::max(1.0, std::abs(mult)));
  return rep;
}

ConnectionReport verify_connection(const FourierPotential& pot,
                                   const VTable& vplus, const VTable& vminus,
                                   Complex lambda,
                                   const std::vector<double>& x_grid_pos,
                                   const std::vector<double>& x_grid_neg,
                                   const IntegrateOptions& opts) {
  const EvalOptions eopts{kVerifyEpsilonPole};
  const double beta = pot.beta;
  const ConnectionCoefficients cc =
      connection_coefficients(vplus, vminus, beta, lambda, eopts);

  ConnectionReport rep;

  // f2_plus continued across 0 into x > 0 must equal c11 f1+ + c12 f1-
  {
    const Evaluation f0 =
        eval_solution(vplus, beta, SolutionKind::f2_plus, lambda, 0.0, eopts);
    State st{f0.value, f0.derivative};
    double x = 0.0;
    double sup = 0.0;
    std::vector<Evaluation> combo;
    combo.reserve(x_grid_pos.size());
    for (double xg : x_grid_pos) {
      const Evaluation a =
          eval_solution(vplus, beta, SolutionKind::f1_plus, lambda, xg, eopts);
      const Evaluation b =
          eval_solution(vminus, beta, SolutionKind::f1_minus, lambda, xg, eopts);
      combo.push_back({cc.c11 * a.value + cc.c12 * b.value,
                       cc.c11 * a.derivative + cc.c12 * b.derivative});
      sup = std::max(sup, std::abs(combo.back().value));
    }
    if (sup == 0.0) sup = 1.0;
    for (size_t k = 0; k < x_grid_pos.size(); ++k) {
      st = integrate_state(pot, lambda, st, x, x_grid_pos[k], opts);
      x = x_grid_pos[k];
      const double d = std::max(std::abs(st.y - combo[k].value),
                                std::abs(st.yp - combo[k].derivative));
      rep.extension_defect_pos = std::max(rep.extension_defect_pos, d / sup);
    }
  }

  // f1_plus continued across 0 into x < 0 must equal c22 f2+ + c21 f2-
  {
    const Evaluation f0 =
        eval_solution(vplus, beta, SolutionKind::f1_plus, lambda, 0.0, eopts);
    State st{f0.value, f0.derivative};
    double x = 0.0;
    double sup = 0.0;
    std::vector<Evaluation> combo;
    combo.reserve(x_grid_neg.size());
    for (double xg : x_grid_neg) {
      const Evaluation a =
          eval_solution(vplus, beta, SolutionKind::f2_plus, lambda, xg, eopts);
      const Evaluation b =
          eval_solution(vminus, beta, SolutionKind::f2_minus, lambda, xg, eopts);
      combo.push_back({cc.c22 * a.value + cc.c21 * b.value,
                       cc.c22 * a.derivative + cc.c21 * b.derivative});
      sup = std::max(sup, std::abs(combo.back().value));
    }
    if (sup == 0.0) sup = 1.0;
    for (size_t k = 0; k < x_grid_neg.size(); ++k) {
      st = integrate_state(pot, lambda, st, x, x_grid_neg[k], opts);
      x = x_grid_neg[k];
      const double d = std::max(std::abs(st.y - combo[k].value),
                                std::abs(st.yp - combo[k].derivative));
      rep.extension_defect_neg = std::max(rep.extension_defect_neg, d / sup);
    }
  }
  return rep;
}

}  // namespace pencil
