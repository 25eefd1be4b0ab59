#include "pencil/vtable.hpp"

#include <algorithm>
#include <cmath>

#include "pencil/errors.hpp"

namespace pencil {

Complex VTable::single_at(int alpha) const {
  if (alpha < 1 || alpha > M || !has_singles()) {
    throw OutOfRange("single-index entry v_" + std::to_string(alpha) +
                     " not stored (M=" + std::to_string(M) + ")");
  }
  return single[alpha - 1];
}

Complex VTable::at(int n, int alpha) const {
  if (alpha < 1 || alpha > M || n < 1 || n > alpha) {
    throw OutOfRange("v_{" + std::to_string(n) + "," + std::to_string(alpha) +
                     "} outside triangular range (M=" + std::to_string(M) + ")");
  }
  return dbl[alpha - 1][n - 1];
}

double VTable::column_magnitude(int alpha) const {
  if (alpha < 1 || alpha > M) {
    throw OutOfRange("column " + std::to_string(alpha) + " outside table");
  }
  double m = 0.0;
  for (int n = 1; n <= alpha; ++n) m = std::max(m, std::abs(dbl[alpha - 1][n - 1]));
  return m;
}

// The three defining relations with s = +-1 on the p-terms:
//  (L)  alpha v_alpha + s (p_alpha + sum_{t<alpha} v_t p_{alpha-t}) = 0
//  (O)  alpha (alpha-n) v_{n,alpha}
//         + sum_{t=n}^{alpha-1} (q_{alpha-t} - s n p_{alpha-t}) v_{n,t} = 0
//  (D)  alpha^2 v_alpha + alpha sum_{n<=alpha} v_{n,alpha} + q_alpha
//         + sum_{t<alpha} ( q_{alpha-t} v_t + s p_{alpha-t} K_t ) = 0,
//       K_t = sum_{n<=t} v_{n,t}
// (D) is solved for the diagonal entry, the only v_{n,alpha} it contains
// that (O) cannot supply.

VTable build_vtable(const FourierPotential& pot, int M, Sign sign,
                    const BuildOptions& opts) {
  if (M < 1) throw OutOfRange("table order must be >= 1");

  VTable vt;
  vt.sign = sign;
  vt.M = M;
  vt.single = Eigen::VectorXcd::Zero(M);
  vt.dbl.reserve(M);
  const double s = (sign == Sign::plus) ? 1.0 : -1.0;

  std::vector<Complex> colsum(M + 1);  // K_t
  for (int alpha = 1; alpha <= M; ++alpha) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(alpha);

    Complex acc = pot.p_at(alpha);
    for (int t = 1; t < alpha; ++t) acc += vt.single[t - 1] * pot.p_at(alpha - t);
    vt.single[alpha - 1] = -s * acc / static_cast<double>(alpha);

    for (int n = alpha - 1; n >= 1; --n) {
      Complex a{0.0, 0.0};
      for (int t = n; t < alpha; ++t) {
        a += (pot.q_at(alpha - t) - s * static_cast<double>(n) * pot.p_at(alpha - t)) *
             vt.dbl[t - 1][n - 1];
      }
      col[n - 1] = -a / static_cast<double>(alpha * (alpha - n));
    }

    Complex d = static_cast<double>(alpha) * static_cast<double>(alpha) *
                    vt.single[alpha - 1] +
                pot.q_at(alpha);
    for (int n = 1; n < alpha; ++n) d += static_cast<double>(alpha) * col[n - 1];
    for (int t = 1; t < alpha; ++t) {
      d += pot.q_at(alpha - t) * vt.single[t - 1] +
           s * pot.p_at(alpha - t) * colsum[t];
    }
    col[alpha - 1] = -d / static_cast<double>(alpha);

    colsum[alpha] = col.sum();
    vt.dbl.push_back(std::move(col));
  }

  if (M >= 6) {
    const double tail = vt.column_magnitude(M);
    const double base = vt.column_magnitude(M - 5);
    if (base > 0.0 && tail / base > opts.growth_factor) {
      vt.divergence_suspected = true;
    }
  }
  return vt;
}

double max_recurrence_residual(const VTable& vt, const FourierPotential& pot) {
  if (!vt.has_singles()) {
    throw IncompleteTable("residual check needs single-index entries");
  }
  const double s = (vt.sign == Sign::plus) ? 1.0 : -1.0;
  double worst = 0.0;
  auto update = [&worst](Complex residual, double scale) {
    worst = std::max(worst, std::abs(residual) / std::max(1.0, scale));
  };

  std::vector<Complex> colsum(vt.M + 1);
  for (int t = 1; t <= vt.M; ++t) colsum[t] = vt.dbl[t - 1].sum();

  for (int alpha = 1; alpha <= vt.M; ++alpha) {
    Complex rl = static_cast<double>(alpha) * vt.single[alpha - 1] +
                 s * pot.p_at(alpha);
    for (int t = 1; t < alpha; ++t) {
      rl += s * vt.single[t - 1] * pot.p_at(alpha - t);
    }
    update(rl, std::abs(vt.single[alpha - 1]) * alpha);

    for (int n = 1; n < alpha; ++n) {
      Complex ro = static_cast<double>(alpha * (alpha - n)) * vt.at(n, alpha);
      for (int t = n; t < alpha; ++t) {
        ro += (pot.q_at(alpha - t) - s * static_cast<double>(n) * pot.p_at(alpha - t)) *
              vt.at(n, t);
      }
      update(ro, std::abs(vt.at(n, alpha)) * alpha * (alpha - n));
    }

    Complex rd = static_cast<double>(alpha) * static_cast<double>(alpha) *
                     vt.single[alpha - 1] +
                 static_cast<double>(alpha) * colsum[alpha] + pot.q_at(alpha);
    for (int t = 1; t < alpha; ++t) {
      rd += pot.q_at(alpha - t) * vt.single[t - 1] +
            s * pot.p_at(alpha - t) * colsum[t];
    }
    update(rd, std::abs(colsum[alpha]) * alpha);
  }
  return worst;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> invert_recurrences(
    const VTable& vplus, const VTable& vminus, int Nout) {
  if (Nout < 1) throw OutOfRange("inversion order must be >= 1");
  if (vplus.M < Nout || vminus.M < Nout) {
    throw IncompleteTable("tables reach column " +
                          std::to_string(std::min(vplus.M, vminus.M)) +
                          ", need " + std::to_string(Nout));
  }
  for (int alpha = 1; alpha <= Nout; ++alpha) {
    if (vplus.dbl[alpha - 1].size() != alpha || vminus.dbl[alpha - 1].size() != alpha) {
      throw IncompleteTable("double-index column " + std::to_string(alpha) +
                            " incomplete");
    }
  }

  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(Nout);
  Eigen::VectorXcd q = Eigen::VectorXcd::Zero(Nout);
  Eigen::VectorXcd sp = Eigen::VectorXcd::Zero(Nout);  // derived v_alpha^+
  Eigen::VectorXcd sm = Eigen::VectorXcd::Zero(Nout);  // derived v_alpha^-

  for (int alpha = 1; alpha <= Nout; ++alpha) {
    const double a = static_cast<double>(alpha);

    // sum of the two linear relations: a (v+ + v-) + sum (v+_t - v-_t) p_{a-t} = 0
    Complex sum_rhs{0.0, 0.0};
    for (int t = 1; t < alpha; ++t) {
      sum_rhs += (sp[t - 1] - sm[t - 1]) * p[alpha - t - 1];
    }
    const Complex S = -sum_rhs / a;  // v_alpha^+ + v_alpha^-

    // difference of the two diagonal relations:
    // a^2 (v+ - v-) + a (K+_a - K-_a)
    //   + sum_t [ q_{a-t} (v+_t - v-_t) + p_{a-t} (K+_t + K-_t) ] = 0
    Complex diff_rhs = a * (vplus.dbl[alpha - 1].sum() - vminus.dbl[alpha - 1].sum());
    for (int t = 1; t < alpha; ++t) {
      diff_rhs += q[alpha - t - 1] * (sp[t - 1] - sm[t - 1]) +
                  p[alpha - t - 1] *
                      (vplus.dbl[t - 1].sum() + vminus.dbl[t - 1].sum());
    }
    const Complex D = -diff_rhs / (a * a);  // v_alpha^+ - v_alpha^-

    sp[alpha - 1] = (S + D) / 2.0;
    sm[alpha - 1] = (S - D) / 2.0;

    // plus linear relation for p_alpha
    Complex pacc{0.0, 0.0};
    for (int t = 1; t < alpha; ++t) pacc += sp[t - 1] * p[alpha - t - 1];
    p[alpha - 1] = -a * sp[alpha - 1] - pacc;

    // plus diagonal relation for q_alpha
    Complex qacc = a * a * sp[alpha - 1] + a * vplus.dbl[alpha - 1].sum();
    for (int t = 1; t < alpha; ++t) {
      qacc += q[alpha - t - 1] * sp[t - 1] +
              p[alpha - t - 1] * vplus.dbl[t - 1].sum();
    }
    q[alpha - 1] = -qacc;
  }

  auto check_supplied = [&](const VTable& vt, const Eigen::VectorXcd& derived) {
    if (!vt.has_singles()) return;
    for (int alpha = 1; alpha <= Nout; ++alpha) {
      const double scale = std::max(1.0, std::abs(vt.single[alpha - 1]));
      if (std::abs(vt.single[alpha - 1] - derived[alpha - 1]) > 1e-9 * scale) {
        throw ConsistencyMismatch(
            "supplied v_" + std::to_string(alpha) +
            " disagrees with the value derived from the double-index entries");
      }
    }
  };
  check_supplied(vplus, sp);
  check_supplied(vminus, sm);

  return {p, q};
}

}  // namespace pencil
