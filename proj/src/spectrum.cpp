#include "pencil/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pencil/errors.hpp"

namespace pencil {

namespace {

using Target = std::function<Complex(Complex)>;

std::string zstr(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Signed phase change of f along [z0, z1]: increments are refined until each
// is below pi/2, so a jump cannot hide a winding. A zero or pole close to the
// edge exhausts the depth budget.
double phase_change(const Target& f, Complex z0, Complex z1, Complex v0,
                    Complex v1, int depth, int max_depth) {
  const double d = std::arg(v1 / v0);
  if (std::abs(d) < kPi / 2.0 && std::abs(z1 - z0) < 0.2) return d;
  if (depth >= max_depth) {
    throw ContourThroughPole("phase unresolved along contour edge near " +
                             zstr(0.5 * (z0 + z1)));
  }
  const Complex zm = 0.5 * (z0 + z1);
  const Complex vm = f(zm);
  if (vm == Complex{0.0, 0.0}) {
    throw ContourThroughPole("target vanishes on the contour at " + zstr(zm));
  }
  return phase_change(f, z0, zm, v0, vm, depth + 1, max_depth) +
         phase_change(f, zm, z1, vm, v1, depth + 1, max_depth);
}

struct Rect {
  double x0, x1, y0, y1;
  Complex corner(int i) const {
    switch (i & 3) {
      case 0: return {x0, y0};
      case 1: return {x1, y0};
      case 2: return {x1, y1};
      default: return {x0, y1};
    }
  }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

int winding_number(const Target& f, const Rect& r, int max_depth) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Complex a = r.corner(i);
    const Complex b = r.corner(i + 1);
    const Complex va = f(a);
    const Complex vb = f(b);
    if (va == Complex{0.0, 0.0} || vb == Complex{0.0, 0.0}) {
      throw ContourThroughPole("target vanishes at a contour corner " + zstr(a));
    }
    total += phase_change(f, a, b, va, vb, 0, max_depth);
  }
  const double w = total / (2.0 * kPi);
  const int k = static_cast<int>(std::lround(w));
  if (std::abs(w - k) > 0.25) {
    throw NonConvergence("inconsistent winding " + std::to_string(w) +
                         " over rectangle at " + zstr(r.corner(0)));
  }
  if (k < 0) {
    throw NonConvergence("negative winding (unexpected pole) in rectangle at " +
                         zstr(r.corner(0)));
  }
  return k;
}

Complex polish(const Target& f, Complex z, double tol, double leash) {
  const Complex z0 = z;
  for (int it = 0; it < 80; ++it) {
    if (std::abs(z - z0) > leash) break;  // runaway; the zero is not here
    const Complex fz = f(z);
    if (std::abs(fz) <= tol) return z;
    const double h = 1e-7 * std::max(1.0, std::abs(z));
    const Complex d = (f(z + h) - f(z - h)) / (2.0 * h);
    if (d == Complex{0.0, 0.0}) break;
    z -= fz / d;
  }
  if (std::abs(z - z0) <= leash && std::abs(f(z)) <= tol) return z;
  throw NonConvergence("root polishing stalled near " + zstr(z));
}

void collect_zeros(const Target& f, const Rect& r, const FinderOptions& opts,
                   std::vector<Complex>& out, int depth) {
  if (depth > 64) {
    throw NonConvergence("rectangle subdivision exceeded depth budget");
  }
  const int w = winding_number(f, r, opts.max_edge_depth);
  if (w == 0) return;

  if (r.width() <= opts.min_box && r.height() <= opts.min_box) {
    // polish from the center; with multiplicity > 1 also try offset seeds
    std::vector<Complex> seeds{{0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)}};
    if (w > 1) {
      for (int i = 0; i < 4; ++i) {
        seeds.push_back(0.75 * seeds[0] + 0.25 * r.corner(i));
      }
    }
    const double leash = 8.0 * std::hypot(r.width(), r.height());
    bool landed = false;
    for (const Complex& s : seeds) {
      Complex z;
      try {
        z = polish(f, s, opts.target_tol, leash);
      } catch (const NonConvergence&) {
        continue;  // a runaway seed does not invalidate the others
      }
      bool dup = false;
      for (const Complex& z0 : out) dup = dup || std::abs(z - z0) < 1e-7;
      if (!dup) out.push_back(z);
      landed = true;
    }
    if (landed) return;
    if (r.width() <= opts.min_box / 64.0) {
      throw NonConvergence("no polish seed converged in the rectangle at " +
                           zstr(r.corner(0)));
    }
    // fall through and split again: a tighter box seeds Newton better
  }

  // split the longer side; jitter the ratio if a split line hits a zero
  const double ratios[] = {0.5, 0.5307, 0.4635};
  for (const double ratio : ratios) {
    std::vector<Complex> found;
    try {
      Rect a = r, b = r;
      if (r.width() >= r.height()) {
        const double xm = r.x0 + ratio * r.width();
        a.x1 = xm;
        b.x0 = xm;
      } else {
        const double ym = r.y0 + ratio * r.height();
        a.y1 = ym;
        b.y0 = ym;
      }
      collect_zeros(f, a, opts, found, depth + 1);
      collect_zeros(f, b, opts, found, depth + 1);
    } catch (const ContourThroughPole&) {
      continue;  // split line too close to a zero; try the next ratio
    }
    for (const Complex& z : found) {
      bool dup = false;
      for (const Complex& z0 : out) dup = dup || std::abs(z - z0) < 1e-7;
      if (!dup) out.push_back(z);
    }
    return;
  }
  throw ContourThroughPole("could not isolate zeros in rectangle at " +
                           zstr(r.corner(0)) + " after split retries");
}

}  // namespace

std::vector<Complex> find_eigenvalues(const VTable& vplus, const VTable& vminus,
                                      double beta, double R, int sector,
                                      const FinderOptions& opts) {
  if (sector < 0 || sector > 3) throw OutOfRange("sector index must be 0..3");
  if (!(R > 0.0)) throw OutOfRange("search radius must be positive");

  // Sector detectors, all reduced to first/fourth-quadrant searches:
  //   S0: c12(z)            z in Q0, lambda = z
  //   S1: c11_swap(z)       z in Q3, lambda = -z
  //   S2: c12_swap(z)       z in Q0, lambda = -z
  //   S3: c11(z)            z in Q3, lambda = z
  const bool swap_tables = (sector == 1 || sector == 2);
  const bool use_c12 = (sector == 0 || sector == 2);
  const bool negate = (sector == 1 || sector == 2);
  const bool q0 = use_c12;

  const EvalOptions eopts;
  Target f = [&](Complex z) {
    return use_c12 ? c12_value(vplus, vminus, beta, z, swap_tables, eopts)
                   : c11_value(vplus, vminus, beta, z, swap_tables, eopts);
  };

  const double m = opts.margin;
  Rect box = q0 ? Rect{m, R, m, R} : Rect{m, R, -R, -m};

  std::vector<Complex> zeros;
  collect_zeros(f, box, opts, zeros, 0);

  std::vector<Complex> lambdas;
  for (const Complex& z : zeros) {
    if (std::abs(z) > R) continue;  // box corner reaches past the radius
    lambdas.push_back(negate ? -z : z);
  }
  std::sort(lambdas.begin(), lambdas.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return lambdas;
}

std::vector<Singularity> spectral_singularities(const VTable& vplus,
                                                const VTable& vminus,
                                                double beta, int M) {
  if (M > vplus.M || M > vminus.M) {
    throw OutOfRange("singularity enumeration beyond table order");
  }
  std::vector<Singularity> out;
  out.reserve(4 * M);
  for (int n = 1; n <= M; ++n) {
    const double sm = std::abs(vminus.at(n, n));
    const double sp = std::abs(vplus.at(n, n));
    const double half_n = 0.5 * n;
    const double imag_loc = n / (2.0 * beta);
    out.push_back({Complex{half_n, 0.0}, sm, Singularity::real_axis, sm <= 1e-12});
    out.push_back({Complex{-half_n, 0.0}, sp, Singularity::real_axis, sp <= 1e-12});
    out.push_back({Complex{0.0, imag_loc}, sm, Singularity::imaginary_axis, sm <= 1e-12});
    out.push_back({Complex{0.0, -imag_loc}, sp, Singularity::imaginary_axis, sp <= 1e-12});
  }
  return out;
}

SpectralData assemble_spectral_data(const FourierPotential& pot, int M,
                                    double R, int N,
                                    const AssembleOptions& opts) {
  if (N > M) throw OutOfRange("spectral order N must not exceed table order M");

  const VTable vplus = build_vtable(pot, M, Sign::plus);
  const VTable vminus = build_vtable(pot, M, Sign::minus);
  const double beta = pot.beta;

  SpectralData sd;
  sd.order = N;
  sd.beta_hint = beta;

  for (int k = 0; k < 4; ++k) {
    for (const Complex& lam : find_eigenvalues(vplus, vminus, beta, R, k, opts.finder)) {
      EigenvalueRecord rec;
      rec.sector = k;
      rec.lambda = lam;
      rec.c11_plus = c11_value(vplus, vminus, beta, lam);
      rec.c11_minus = c11_value(vplus, vminus, beta, -lam);
      sd.eigenvalues.push_back(rec);
    }
  }

  // singular points the circle samples must stay away from
  std::vector<Complex> avoid;
  const int m_real = static_cast<int>(std::ceil(2.0 * R)) + 1;
  const int m_imag = static_cast<int>(std::ceil(2.0 * beta * R)) + 1;
  for (int m = 1; m <= m_real; ++m) {
    avoid.push_back(Complex{0.5 * m, 0.0});
    avoid.push_back(Complex{-0.5 * m, 0.0});
  }
  for (int m = 1; m <= m_imag; ++m) {
    avoid.push_back(Complex{0.0, m / (2.0 * beta)});
    avoid.push_back(Complex{0.0, -m / (2.0 * beta)});
  }
  for (const auto& rec : sd.eigenvalues) avoid.push_back(rec.lambda);

  for (int n = 1; n <= N; ++n) {
    for (const double sgn : {1.0, -1.0}) {
      const Complex center{sgn * 0.5 * n, 0.0};
      double r = opts.circle_radius;
      auto ok = [&](double radius) {
        for (int j = 0; j < opts.circle_points; ++j) {
          const double th = 2.0 * kPi * j / opts.circle_points;
          const Complex lam = center + radius * std::exp(Complex{0.0, th});
          for (const Complex& a : avoid) {
            if (a == center) continue;
            if (std::abs(lam - a) < 0.5 * radius) return false;
          }
        }
        return true;
      };
      while (!ok(r) && r > 1e-4) r *= 0.5;
      if (r <= 1e-4) {
        throw RadiusConflict(
            n, "cannot place a sample circle around " + zstr(center));
      }
      CircleData cd;
      cd.center = center;
      cd.radius = r;
      cd.samples.reserve(opts.circle_points);
      for (int j = 0; j < opts.circle_points; ++j) {
        const double th = 2.0 * kPi * j / opts.circle_points;
        const Complex lam = center + r * std::exp(Complex{0.0, th});
        CircleSample smp;
        smp.lambda = lam;
        smp.c11 = c11_value(vplus, vminus, beta, lam);
        smp.c12 = c12_value(vplus, vminus, beta, lam);
        cd.samples.push_back(smp);
      }
      sd.circles.push_back(std::move(cd));
    }
  }

  const double lo = opts.axis_min_abs;
  for (int k = 0; k < opts.axis_points; ++k) {
    const double s = lo * std::pow(R / lo, static_cast<double>(k) /
                                               (opts.axis_points - 1));
    const Complex lam{0.0, -s};
    try {
      AxisProbe probe;
      probe.lambda = lam;
      probe.c11 = c11_value(vplus, vminus, beta, lam);
      probe.c12 = c12_value(vplus, vminus, beta, lam);
      sd.axis_probes.push_back(probe);
    } catch (const NearPole&) {
      // probe sits on a series pole; skip it
    }
  }
  return sd;
}

}  // namespace pencil
