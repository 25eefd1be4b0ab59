#pragma once

#include <Eigen/Dense>

#include "pencil/types.hpp"

namespace pencil {

// 2pi-periodic potential pair with positive harmonics only,
//   p(x) = sum_{n>=1} p_n e^{inx},  q(x) = sum_{n>=1} q_n e^{inx},
// together with the step weight rho(x) = 1 (x >= 0), -beta^2 (x < 0).
struct FourierPotential {
  double beta = 1.0;
  Eigen::VectorXcd p;  // harmonic n stored at index n-1
  Eigen::VectorXcd q;
  double p_norm = 0.0;  // sum of n*|p_n|
  double q_norm = 0.0;  // sum of |q_n|

  int harmonics() const {
    return static_cast<int>(std::max(p.size(), q.size()));
  }
  Complex p_at(int n) const {
    return (n >= 1 && n <= p.size()) ? p[n - 1] : Complex{0.0, 0.0};
  }
  Complex q_at(int n) const {
    return (n >= 1 && n <= q.size()) ? q[n - 1] : Complex{0.0, 0.0};
  }
};

struct PotentialSample {
  Complex p;
  Complex q;
  double rho;
};

// Validates raw input: beta > 0, finite entries. Trailing zero coefficients
// are trimmed so the harmonic count is canonical; the diagnostic norms
// sum n|p_n| and sum |q_n| are attached.
FourierPotential validate_potential(double beta, const Eigen::VectorXcd& p,
                                    const Eigen::VectorXcd& q);

// p(x), q(x) and the weight branch; x = 0 takes rho = 1.
PotentialSample evaluate_potential(const FourierPotential& pot, double x);

// Same q with the sign of every p_n flipped. The minus-sign coefficient
// tables of a potential coincide with the plus tables of its flip, which is
// how all "opposite sign" quantities are evaluated here.
FourierPotential flipped(const FourierPotential& pot);

}  // namespace pencil
