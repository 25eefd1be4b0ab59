#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pencil/potential.hpp"
#include "pencil/spectrum.hpp"
#include "pencil/vtable.hpp"

namespace pencil {

struct DiagonalSet {
  int n_max = 0;
  Eigen::VectorXcd vnn_plus;   // index n-1
  Eigen::VectorXcd vnn_minus;
  std::vector<int> genericity_failures;  // indices with |v_nn| <= 1e-10
};

// Step 1: diagonals from contour residues of the stored circle samples.
//   v_nn^minus = +2 * Res_{lambda =  n/2} [ c11/c12 ]
//   v_nn^plus  = -2 * Res_{lambda = -n/2} [ c12/c11 ]
// (residues by the trapezoid rule over the 64 stored points, spectrally
// accurate; the factors -+2 convert the residue to the defining limits of
// (n -+ 2 lambda) c11/c12 at lambda = +- n/2).
std::pair<Complex, Complex> extract_diagonal(const SpectralData& sd, int n);

DiagonalSet extract_diagonals(const SpectralData& sd, int n_max);

// Step 2 + 3 merged induction on the column index: off-diagonal entries of
// column alpha come from the product formula
//   v_{m,alpha}^{+-} = v_mm^{+-} (v_{alpha-m}^{-+} + sum_n v_{n,alpha-m}^{-+}/(n+m))
// whose right side only involves columns < alpha, after which the 4-equation
// elimination of the recurrences yields (v_alpha^+, v_alpha^-, p_alpha,
// q_alpha) and closes the column. Requires every diagonal through N to be
// nonvanishing (GenericityFailure otherwise, naming the index).
std::pair<VTable, VTable> reconstruct_tables(const DiagonalSet& diag, int N);

// Step 3 as a standalone call: delegates to invert_recurrences.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> recover_potential(
    const VTable& vplus, const VTable& vminus, int N);

struct BetaRecovery {
  double beta = 0.0;
  enum Method { eigenvalue, pole_scan } method = eigenvalue;
};

// Step 4: beta = i * c11(lambda_0) * c11(-lambda_0) at a sector-0 eigenvalue,
// accepted only when the product is real positive to 1e-6 relative (the
// formula inherits a flipped-potential identity and is exact only when p is
// absent); otherwise a flagged fallback fits a simple pole plus constant
// background to the 5 largest axis probes of c11 and reads beta off the pole
// location -i/(2 beta).
BetaRecovery recover_beta(const SpectralData& sd);

struct InversionReport {
  std::map<std::string, double> residuals;
  std::string beta_method;
  std::vector<int> genericity_warnings;
};

struct InversionResult {
  FourierPotential potential;
  InversionReport report;
};

// Full inverse run: extract_diagonals -> reconstruct_tables ->
// recover_potential -> recover_beta.
InversionResult invert(const SpectralData& sd, int N);

}  // namespace pencil
