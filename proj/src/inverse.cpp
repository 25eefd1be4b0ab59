#include "pencil/inverse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "pencil/errors.hpp"

namespace pencil {

namespace {

const CircleData& circle_at(const SpectralData& sd, Complex center) {
  for (const CircleData& cd : sd.circles) {
    if (std::abs(cd.center - center) < 1e-9) return cd;
  }
  throw MissingCircle("no stored circle around (" +
                      std::to_string(center.real()) + ", " +
                      std::to_string(center.imag()) + ")");
}

// (1/2 pi i) contour integral of g by the trapezoid rule; e^{i theta_j} is
// reconstructed from the stored sample locations.
Complex circle_residue(const CircleData& cd, bool c11_over_c12) {
  Complex acc = 0.0;
  for (const CircleSample& s : cd.samples) {
    const Complex num = c11_over_c12 ? s.c11 : s.c12;
    const Complex den = c11_over_c12 ? s.c12 : s.c11;
    if (std::abs(den) < 1e-10) {
      throw IllConditionedRatio("connection ratio denominator below 1e-10 on "
                                "the circle around (" +
                                std::to_string(cd.center.real()) + ", " +
                                std::to_string(cd.center.imag()) + ")");
    }
    acc += (num / den) * (s.lambda - cd.center);
  }
  return acc / static_cast<double>(cd.samples.size());
}

}  // namespace

std::pair<Complex, Complex> extract_diagonal(const SpectralData& sd, int n) {
  if (n < 1) throw OutOfRange("diagonal index must be positive");
  const CircleData& right = circle_at(sd, Complex{0.5 * n, 0.0});
  const CircleData& left = circle_at(sd, Complex{-0.5 * n, 0.0});
  const Complex vnn_minus = 2.0 * circle_residue(right, true);
  const Complex vnn_plus = -2.0 * circle_residue(left, false);
  return {vnn_plus, vnn_minus};
}

DiagonalSet extract_diagonals(const SpectralData& sd, int n_max) {
  DiagonalSet out;
  out.n_max = n_max;
  out.vnn_plus.resize(n_max);
  out.vnn_minus.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const auto [vp, vm] = extract_diagonal(sd, n);
    out.vnn_plus[n - 1] = vp;
    out.vnn_minus[n - 1] = vm;
    if (std::abs(vp) <= 1e-10 || std::abs(vm) <= 1e-10) {
      out.genericity_failures.push_back(n);
    }
  }
  return out;
}

std::pair<VTable, VTable> reconstruct_tables(const DiagonalSet& diag, int N) {
  if (N > diag.n_max) throw OutOfRange("requested order beyond extracted diagonals");
  for (int n = 1; n <= N; ++n) {
    if (std::abs(diag.vnn_plus[n - 1]) <= 1e-10 ||
        std::abs(diag.vnn_minus[n - 1]) <= 1e-10) {
      throw GenericityFailure(
          n, "diagonal " + std::to_string(n) +
                 " vanishes; the product formula cannot seed this column");
    }
  }

  VTable tp, tm;
  tp.sign = Sign::plus;
  tm.sign = Sign::minus;
  tp.M = tm.M = N;
  tp.single = Eigen::VectorXcd::Zero(N);
  tm.single = Eigen::VectorXcd::Zero(N);
  for (int a = 1; a <= N; ++a) {
    tp.dbl.push_back(Eigen::VectorXcd::Zero(a));
    tm.dbl.push_back(Eigen::VectorXcd::Zero(a));
  }

  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(N);
  Eigen::VectorXcd q = Eigen::VectorXcd::Zero(N);
  // column sums K_t = sum_n v_{n,t}, maintained as columns close
  Eigen::VectorXcd Kp = Eigen::VectorXcd::Zero(N);
  Eigen::VectorXcd Km = Eigen::VectorXcd::Zero(N);

  for (int a = 1; a <= N; ++a) {
    // off-diagonal entries from the product formula (columns < a only)
    for (int m = 1; m < a; ++m) {
      const int r = a - m;  // resolvent column of the opposite sign
      Complex sp = tm.single[r - 1];
      Complex sm = tp.single[r - 1];
      for (int n = 1; n <= r; ++n) {
        sp += tm.dbl[r - 1][n - 1] / static_cast<double>(n + m);
        sm += tp.dbl[r - 1][n - 1] / static_cast<double>(n + m);
      }
      tp.dbl[a - 1][m - 1] = diag.vnn_plus[m - 1] * sp;
      tm.dbl[a - 1][m - 1] = diag.vnn_minus[m - 1] * sm;
    }
    tp.dbl[a - 1][a - 1] = diag.vnn_plus[a - 1];
    tm.dbl[a - 1][a - 1] = diag.vnn_minus[a - 1];
    Kp[a - 1] = tp.dbl[a - 1].sum();
    Km[a - 1] = tm.dbl[a - 1].sum();

    // close the column: sum of the linear relations and difference of the
    // diagonal relations give v_a^+ +- v_a^-, then the plus relations give
    // p_a and q_a
    const double da = a;
    Complex S = 0.0;
    for (int t = 1; t < a; ++t) {
      S += (tp.single[t - 1] - tm.single[t - 1]) * p[a - t - 1];
    }
    S = -S / da;

    Complex D = da * (Kp[a - 1] - Km[a - 1]);
    for (int t = 1; t < a; ++t) {
      D += q[a - t - 1] * (tp.single[t - 1] - tm.single[t - 1]);
      D += p[a - t - 1] * (Kp[t - 1] + Km[t - 1]);
    }
    D = -D / (da * da);

    tp.single[a - 1] = 0.5 * (S + D);
    tm.single[a - 1] = 0.5 * (S - D);

    Complex pa = -da * tp.single[a - 1];
    for (int t = 1; t < a; ++t) pa -= tp.single[t - 1] * p[a - t - 1];
    p[a - 1] = pa;

    Complex qa = -da * da * tp.single[a - 1] - da * Kp[a - 1];
    for (int t = 1; t < a; ++t) {
      qa -= q[a - t - 1] * tp.single[t - 1] + p[a - t - 1] * Kp[t - 1];
    }
    q[a - 1] = qa;
  }
  return {std::move(tp), std::move(tm)};
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> recover_potential(
    const VTable& vplus, const VTable& vminus, int N) {
  return invert_recurrences(vplus, vminus, N);
}

namespace {

// residual of the best linear fit of the probe data by the pole lattice
// s = n/(2 beta) plus a cubic background. the residues and the background
// are linear unknowns, so only beta needs a search
double lattice_misfit(const std::vector<const AxisProbe*>& probes,
                      double beta) {
  const double s_max = std::abs(probes.back()->lambda);
  const int npol = static_cast<int>(std::ceil(2.0 * beta * s_max)) + 1;
  const int cols = npol + 4;
  const int rows = static_cast<int>(probes.size());
  Eigen::MatrixXcd A(rows, cols);
  Eigen::VectorXcd b(rows);
  for (int r = 0; r < rows; ++r) {
    const double s = -probes[r]->lambda.imag();
    for (int n = 1; n <= npol; ++n) {
      double d = s - n / (2.0 * beta);
      if (std::abs(d) < 1e-12) d = 1e-12;
      A(r, n - 1) = 1.0 / d;
    }
    A(r, npol + 0) = 1.0;
    A(r, npol + 1) = s;
    A(r, npol + 2) = s * s;
    A(r, npol + 3) = s * s * s;
    b[r] = probes[r]->c11;
  }
  const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
  return (A * x - b).norm();
}

double refine_beta_on_lattice(const std::vector<const AxisProbe*>& probes,
                              double beta0) {
  const double s_max = std::abs(probes.back()->lambda);
  const int npol = static_cast<int>(std::ceil(2.0 * beta0 * s_max)) + 1;
  if (static_cast<int>(probes.size()) < npol + 12) return beta0;
  // golden section over a bracket comfortably wider than the seed error
  // (a few 1e-3 relative) yet well inside the lattice aliasing distance
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = beta0 * 0.97, d = beta0 * 1.03;
  double b = d - gr * (d - a), c = a + gr * (d - a);
  double fb = lattice_misfit(probes, b), fc = lattice_misfit(probes, c);
  for (int it = 0; it < 80 && d - a > 1e-10; ++it) {
    if (fb < fc) {
      d = c;
      c = b;
      fc = fb;
      b = d - gr * (d - a);
      fb = lattice_misfit(probes, b);
    } else {
      a = b;
      b = c;
      fb = fc;
      c = a + gr * (d - a);
      fc = lattice_misfit(probes, c);
    }
  }
  return (a + d) / 2.0;
}

}  // namespace

BetaRecovery recover_beta(const SpectralData& sd) {
  for (const EigenvalueRecord& rec : sd.eigenvalues) {
    if (rec.sector != 0) continue;
    const Complex P = kI * rec.c11_plus * rec.c11_minus;
    if (P.real() > 0.0 && std::abs(P.imag()) <= 1e-6 * std::abs(P)) {
      return {P.real(), BetaRecovery::eigenvalue};
    }
  }

  // fallback: the dominant axis pole sits at -i/(2 beta). 1/c11 vanishes
  // linearly there and stays smooth across the window, so fit a local
  // quadratic to the reciprocal around the strongest probe and take its
  // nearest root. (fitting c11 itself on the five globally largest samples
  // is ill-posed: they routinely straddle two different poles)
  std::vector<const AxisProbe*> probes;
  probes.reserve(sd.axis_probes.size());
  for (const AxisProbe& ap : sd.axis_probes) {
    if (std::isfinite(std::abs(ap.c11)) && std::abs(ap.c11) > 0.0) {
      probes.push_back(&ap);
    }
  }
  if (probes.size() >= 5) {
    std::sort(probes.begin(), probes.end(),
              [](const AxisProbe* a, const AxisProbe* b) {
                return std::abs(a->lambda) < std::abs(b->lambda);
              });

    // |c11| peaks at every pole -i n/(2 beta); only at the first one is the
    // harmonic index known (n=1, nonvanishing by the genericity condition),
    // so scan outward for the first prominent local maximum rather than the
    // globally strongest response, which often belongs to a higher n
    std::vector<double> mags(probes.size());
    for (size_t j = 0; j < probes.size(); ++j) {
      mags[j] = std::abs(probes[j]->c11);
    }
    std::vector<double> tmp = mags;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
    const double background = tmp[tmp.size() / 2];
    size_t peak = probes.size();
    for (size_t j = 1; j + 1 < probes.size(); ++j) {
      if (mags[j] >= mags[j - 1] && mags[j] >= mags[j + 1] &&
          mags[j] >= 2.0 * background) {
        peak = j;
        break;
      }
    }
    if (peak == probes.size()) {
      peak = static_cast<size_t>(
          std::max_element(mags.begin(), mags.end()) - mags.begin());
    }

    size_t lo = peak >= 2 ? peak - 2 : 0;
    lo = std::min(lo, probes.size() - 5);
    const Complex lam0 = probes[peak]->lambda;

    Eigen::MatrixXcd A(5, 3);
    Eigen::VectorXcd b(5);
    for (int k = 0; k < 5; ++k) {
      const Complex u = probes[lo + k]->lambda - lam0;
      A(k, 0) = u * u;
      A(k, 1) = u;
      A(k, 2) = 1.0;
      b[k] = 1.0 / probes[lo + k]->c11;
    }
    const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    const Complex c2 = c[0], c1 = c[1], c0 = c[2];

    Complex root;
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    const Complex qa = std::abs(-c1 + disc) >= std::abs(-c1 - disc)
                           ? -c1 + disc
                           : -c1 - disc;
    if (std::abs(c2) > 0.0 && std::abs(qa) > 0.0) {
      const Complex ra = qa / (2.0 * c2);
      const Complex rb = c0 / (c2 * ra);  // via the product of the roots
      root = std::abs(ra) <= std::abs(rb) ? ra : rb;
    } else {
      root = -c0 / c1;
    }

    const Complex pole = lam0 + root;
    const Complex beta_c = -kI / (2.0 * pole);
    // the seed fit carries a few 1e-3 of noise in both components, so this
    // only rejects layouts with no credible pole on the axis at all
    if (!(beta_c.real() > 0.0) ||
        std::abs(beta_c.imag()) > 5e-2 * std::abs(beta_c)) {
      throw NonPhysicalBeta("axis pole fit gave beta = (" +
                            std::to_string(beta_c.real()) + ", " +
                            std::to_string(beta_c.imag()) + ")");
    }
    // the local fit tops out near 4e-3 relative error. every axis pole sits
    // on the lattice -i n/(2 beta), so refine by sweeping beta over a small
    // bracket and keeping the value whose lattice best explains all the
    // probes at once
    return {refine_beta_on_lattice(probes, beta_c.real()),
            BetaRecovery::pole_scan};
  }

  throw NoBetaSource(
      "no first-sector eigenvalue passed the reality guard and fewer than 5 "
      "usable axis probes are stored");
}

InversionResult invert(const SpectralData& sd, int N) {
  const DiagonalSet diag = extract_diagonals(sd, N);
  auto [tp, tm] = reconstruct_tables(diag, N);
  auto [p, q] = recover_potential(tp, tm, N);
  const BetaRecovery br = recover_beta(sd);

  InversionResult out;
  out.potential = validate_potential(br.beta, p, q);
  out.report.beta_method =
      br.method == BetaRecovery::eigenvalue ? "eigenvalue" : "pole_scan";
  out.report.genericity_warnings = diag.genericity_failures;
  out.report.residuals["recurrence_plus"] =
      max_recurrence_residual(tp, out.potential);
  out.report.residuals["recurrence_minus"] =
      max_recurrence_residual(tm, out.potential);
  return out;
}

}  // namespace pencil
