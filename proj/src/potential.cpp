#include "pencil/potential.hpp"

#include <cmath>

#include "pencil/errors.hpp"

namespace pencil {

namespace {

Eigen::VectorXcd trim_trailing_zeros(const Eigen::VectorXcd& v) {
  Eigen::Index n = v.size();
  while (n > 0 && v[n - 1] == Complex{0.0, 0.0}) --n;
  return v.head(n);
}

void check_finite(const Eigen::VectorXcd& v, const char* name) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw NonFiniteCoefficient(std::string(name) + "[" +
                                 std::to_string(i + 1) + "] is not finite");
    }
  }
}

}  // namespace

FourierPotential validate_potential(double beta, const Eigen::VectorXcd& p,
                                    const Eigen::VectorXcd& q) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw NonPositiveBeta("beta must be positive and finite, got " +
                          std::to_string(beta));
  }
  check_finite(p, "p");
  check_finite(q, "q");

  FourierPotential pot;
  pot.beta = beta;
  pot.p = trim_trailing_zeros(p);
  pot.q = trim_trailing_zeros(q);
  for (Eigen::Index i = 0; i < pot.p.size(); ++i) {
    pot.p_norm += static_cast<double>(i + 1) * std::abs(pot.p[i]);
  }
  for (Eigen::Index i = 0; i < pot.q.size(); ++i) {
    pot.q_norm += std::abs(pot.q[i]);
  }
  return pot;
}

PotentialSample evaluate_potential(const FourierPotential& pot, double x) {
  PotentialSample s{Complex{0.0, 0.0}, Complex{0.0, 0.0},
                    x >= 0.0 ? 1.0 : -pot.beta * pot.beta};
  // Horner in e^{ix}, highest harmonic first
  const Complex e = std::exp(Complex{0.0, x});
  const int np = static_cast<int>(pot.p.size());
  const int nq = static_cast<int>(pot.q.size());
  for (int n = np; n >= 1; --n) s.p = (s.p + pot.p[n - 1]) * e;
  for (int n = nq; n >= 1; --n) s.q = (s.q + pot.q[n - 1]) * e;
  return s;
}

FourierPotential flipped(const FourierPotential& pot) {
  FourierPotential out = pot;
  out.p = -pot.p;
  return out;
}

}  // namespace pencil
