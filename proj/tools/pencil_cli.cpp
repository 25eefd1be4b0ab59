#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "pencil/errors.hpp"
#include "pencil/inverse.hpp"
#include "pencil/io.hpp"
#include "pencil/oracle.hpp"
#include "pencil/potential.hpp"
#include "pencil/solution.hpp"
#include "pencil/spectrum.hpp"
#include "pencil/vtable.hpp"

namespace {

using namespace pencil;

struct RunConfig {
  int order = 32;          // table order M
  int inverse_order = 8;   // recovered harmonic count N
  double radius = 6.0;     // eigenvalue search radius R
  unsigned seed = 1;
  std::string input;
  std::string out;
};

void check_config(const RunConfig& cfg) {
  if (cfg.order < 1) throw OutOfRange("--order must be >= 1");
  if (cfg.inverse_order < 1 || cfg.inverse_order > cfg.order) {
    throw OutOfRange("--inverse-order must lie in [1, order]");
  }
  if (!(cfg.radius > 0.0)) throw OutOfRange("--radius must be positive");
}

// test lambdas kept off the axes (0.15 both ways clears every pole by 0.15)
// and small enough that neither multiplier overwhelms the propagation checks
std::vector<Complex> draw_lambdas(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> mag(0.15, 0.35);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Complex> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double re = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    const double im = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    out.push_back({re, im});
  }
  return out;
}

std::vector<double> linear_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

int cmd_forward(const RunConfig& cfg) {
  const FourierPotential pot = read_potential_file(cfg.input);
  const VTable plus = build_vtable(pot, cfg.order, Sign::plus);
  const VTable minus = build_vtable(pot, cfg.order, Sign::minus);
  const std::string prefix = cfg.out.empty() ? "vtable" : cfg.out;
  write_file(prefix + ".plus.json", to_json(plus));
  write_file(prefix + ".minus.json", to_json(minus));
  std::printf("order %d, p-norm %s, q-norm %s\n", cfg.order,
              format_double(pot.p_norm).c_str(),
              format_double(pot.q_norm).c_str());
  std::printf("column magnitude at M: plus %s, minus %s\n",
              format_double(plus.column_magnitude(cfg.order)).c_str(),
              format_double(minus.column_magnitude(cfg.order)).c_str());
  if (plus.divergence_suspected || minus.divergence_suspected) {
    std::printf("divergence suspected: column growth exceeded the budget\n");
    return 3;
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const FourierPotential pot = read_potential_file(cfg.input);
  const SpectralData sd =
      assemble_spectral_data(pot, cfg.order, cfg.radius, cfg.inverse_order);
  write_file(cfg.out.empty() ? "spectral.json" : cfg.out, to_json(sd));
  std::printf("eigenvalues %zu, circles %zu, axis probes %zu\n",
              sd.eigenvalues.size(), sd.circles.size(), sd.axis_probes.size());
  return 0;
}

int cmd_invert(const RunConfig& cfg) {
  const SpectralData sd = read_spectral_file(cfg.input);
  const int N = std::min(cfg.inverse_order, sd.order);
  const InversionResult res = invert(sd, N);
  write_file(cfg.out.empty() ? "recovered.json" : cfg.out,
             to_json(res.potential));
  std::printf("beta %s via %s\n", format_double(res.potential.beta).c_str(),
              res.report.beta_method.c_str());
  for (const auto& [name, value] : res.report.residuals) {
    std::printf("%s %s\n", name.c_str(), format_double(value).c_str());
  }
  return 0;
}

int cmd_roundtrip(const RunConfig& cfg) {
  const FourierPotential pot = read_potential_file(cfg.input);
  const int N = cfg.inverse_order;
  const SpectralData sd =
      assemble_spectral_data(pot, cfg.order, cfg.radius, N);
  const InversionResult res = invert(sd, N);

  std::string report = "{\"beta_method\":\"" + res.report.beta_method + "\"";
  double worst = 0.0;
  // relative against the true coefficient; absolute when the truth is zero
  // (a recovered stray 1e-12 on an absent harmonic is success, not failure)
  auto compare = [&](const char* name, Complex truth, Complex got) {
    const double scale = std::abs(truth) > 0.0 ? std::abs(truth) : 1.0;
    const double rel = std::abs(got - truth) / scale;
    worst = std::max(worst, rel);
    report += ",\"" + std::string(name) + "\":" + format_double(rel);
  };
  for (int n = 1; n <= N; ++n) {
    const std::string pn = "p" + std::to_string(n);
    const std::string qn = "q" + std::to_string(n);
    if (std::abs(pot.p_at(n)) > 0.0 || std::abs(res.potential.p_at(n)) > 0.0) {
      compare(pn.c_str(), pot.p_at(n), res.potential.p_at(n));
    }
    if (std::abs(pot.q_at(n)) > 0.0 || std::abs(res.potential.q_at(n)) > 0.0) {
      compare(qn.c_str(), pot.q_at(n), res.potential.q_at(n));
    }
  }
  const double beta_err = std::abs(res.potential.beta - pot.beta) / pot.beta;
  const double beta_bound =
      res.report.beta_method == "eigenvalue" ? 1e-6 : 1e-3;
  report += ",\"beta_error\":" + format_double(beta_err) + "}";
  if (!cfg.out.empty()) write_file(cfg.out, report);
  std::printf("%s\n", report.c_str());
  return (worst <= 1e-6 && beta_err <= beta_bound) ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  const FourierPotential pot = read_potential_file(cfg.input);
  const VTable plus = build_vtable(pot, cfg.order, Sign::plus);
  const VTable minus = build_vtable(pot, cfg.order, Sign::minus);
  std::mt19937_64 rng(cfg.seed);

  const std::vector<double> grid_pos = linear_grid(0.0, 2.0 * kPi, 17);
  const std::vector<double> grid_neg = linear_grid(-2.0 * kPi, 0.0, 17);

  double worst = 0.0;
  std::string report = "{";
  const SolutionKind kinds[] = {SolutionKind::f1_plus, SolutionKind::f1_minus,
                                SolutionKind::f2_plus, SolutionKind::f2_minus};
  const char* names[] = {"f1_plus", "f1_minus", "f2_plus", "f2_minus"};
  for (int k = 0; k < 4; ++k) {
    const bool neg = k >= 2;
    const VTable& vt = table_sign_for(kinds[k]) == Sign::plus ? plus : minus;
    double ode = 0.0, prop = 0.0, quasi = 0.0;
    for (const Complex lam : draw_lambdas(rng, 5)) {
      const SolutionReport r =
          verify_solution(pot, vt, kinds[k], lam, neg ? grid_neg : grid_pos);
      ode = std::max(ode, r.ode_residual);
      prop = std::max(prop, r.propagation_mismatch);
      quasi = std::max(quasi, r.quasi_periodicity_defect);
    }
    worst = std::max({worst, ode, prop, quasi});
    report += std::string(k ? "," : "") + "\"" + names[k] + "\":{\"ode\":" +
              format_double(ode) + ",\"propagation\":" + format_double(prop) +
              ",\"quasi_periodicity\":" + format_double(quasi) + "}";
  }

  double ext_pos = 0.0, ext_neg = 0.0;
  const std::vector<double> half_pos = linear_grid(kPi / 8, kPi, 8);
  const std::vector<double> half_neg = linear_grid(-kPi / 8, -kPi, 8);
  for (const Complex lam : draw_lambdas(rng, 3)) {
    const ConnectionReport r =
        verify_connection(pot, plus, minus, lam, half_pos, half_neg);
    ext_pos = std::max(ext_pos, r.extension_defect_pos);
    ext_neg = std::max(ext_neg, r.extension_defect_neg);
  }
  worst = std::max({worst, ext_pos, ext_neg});
  report += ",\"extension_pos\":" + format_double(ext_pos);
  report += ",\"extension_neg\":" + format_double(ext_neg);
  report += ",\"divergence_suspected\":";
  report += (plus.divergence_suspected || minus.divergence_suspected)
                ? "true"
                : "false";
  report += ",\"worst\":" + format_double(worst) + "}";
  if (!cfg.out.empty()) write_file(cfg.out, report);
  std::printf("%s\n", report.c_str());
  return worst <= 1e-6 ? 0 : 1;
}

int cmd_eval(const RunConfig& cfg, const std::string& kind_name,
             double lam_re, double lam_im, double x) {
  const FourierPotential pot = read_potential_file(cfg.input);
  SolutionKind kind;
  if (kind_name == "f1+") kind = SolutionKind::f1_plus;
  else if (kind_name == "f1-") kind = SolutionKind::f1_minus;
  else if (kind_name == "f2+") kind = SolutionKind::f2_plus;
  else if (kind_name == "f2-") kind = SolutionKind::f2_minus;
  else throw OutOfRange("--kind must be one of f1+ f1- f2+ f2-");
  const VTable vt = build_vtable(pot, cfg.order, table_sign_for(kind));
  const Evaluation ev =
      eval_solution(vt, pot.beta, kind, Complex{lam_re, lam_im}, x);
  const std::string line = "{\"value\":" + json_complex(ev.value) +
                           ",\"derivative\":" + json_complex(ev.derivative) +
                           "}";
  if (!cfg.out.empty()) write_file(cfg.out, line);
  std::printf("%s\n", line.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic pencil forward/inverse spectral toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string kind_name = "f1+";
  double lam_re = 0.25, lam_im = 0.25, x = 0.0;

  auto add_common = [&](CLI::App* sc, bool wants_input = true) {
    if (wants_input) {
      sc->add_option("input", cfg.input, "input JSON file")->required();
    }
    sc->add_option("--order", cfg.order, "series table order M");
    sc->add_option("--inverse-order", cfg.inverse_order,
                   "recovered harmonic count N");
    sc->add_option("--radius", cfg.radius, "eigenvalue search radius");
    sc->add_option("--seed", cfg.seed, "seed for randomized verification");
    sc->add_option("--out", cfg.out, "output path (prefix for forward)");
  };

  CLI::App* forward = app.add_subcommand("forward", "potential -> v-tables");
  add_common(forward);
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "potential -> spectral data");
  add_common(spectrum);
  CLI::App* invert_cmd =
      app.add_subcommand("invert", "spectral data -> potential");
  add_common(invert_cmd);
  CLI::App* roundtrip =
      app.add_subcommand("roundtrip", "forward -> spectrum -> invert, report");
  add_common(roundtrip);
  CLI::App* verify =
      app.add_subcommand("verify", "integration checks of the series");
  add_common(verify);
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one solution");
  add_common(eval_cmd);
  eval_cmd->add_option("--kind", kind_name, "f1+ f1- f2+ f2-");
  eval_cmd->add_option("--lambda-re", lam_re, "Re lambda");
  eval_cmd->add_option("--lambda-im", lam_im, "Im lambda");
  eval_cmd->add_option("--x", x, "evaluation point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  // the default N must not invalidate an explicitly lowered M
  const CLI::App* active = app.get_subcommands().front();
  if (active->count("--inverse-order") == 0) {
    cfg.inverse_order = std::min(cfg.inverse_order, cfg.order);
  }

  try {
    check_config(cfg);
    if (*forward) return cmd_forward(cfg);
    if (*spectrum) return cmd_spectrum(cfg);
    if (*invert_cmd) return cmd_invert(cfg);
    if (*roundtrip) return cmd_roundtrip(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*eval_cmd) return cmd_eval(cfg, kind_name, lam_re, lam_im, x);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const OutOfRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const MissingCircle& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const RadiusConflict& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ContourThroughPole& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const GenericityFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const NoBetaSource& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 6;
  } catch (const NonPhysicalBeta& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 6;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
