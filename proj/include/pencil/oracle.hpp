#pragma once

#include <vector>

#include "pencil/potential.hpp"
#include "pencil/solution.hpp"
#include "pencil/types.hpp"

namespace pencil {

// Independent verification layer. Nothing in the forward or inverse pipeline
// links against this translation unit; the build enforces the direction.

struct IVPState {
  double x = 0.0;
  Complex y;
  Complex yprime;
};

struct IntegrateOptions {
  double tol = 1e-11;  // both relative and absolute per step
};

// Adaptive embedded 5(4) pair integrating y'' = c(x, lambda) y with
//   c = 2 lambda p(x) + q(x) - lambda^2          on x >= 0,
//   c = -2 i lambda beta p(x) + q(x) + lambda^2 beta^2   on x < 0;
// on the negative half-line the p term carries the same square root of the
// weight that scales the exponentials, which is the equation the series
// solutions satisfy there. A path straddling 0 is split exactly at 0 with y
// and y' carried across unchanged.
IVPState integrate(const FourierPotential& pot, Complex lambda, IVPState from,
                   double x_target, const IntegrateOptions& opts = {});

struct SolutionReport {
  double ode_residual = 0.0;           // termwise series residual, sup-relative
  double propagation_mismatch = 0.0;   // series vs integration from grid start
  double quasi_periodicity_defect = 0.0;
};

// Verifies one series solution on a grid: (a) plugs the termwise derivatives
// into the ODE, (b) propagates the grid-start state to every grid point and
// compares with the series, (c) propagates one full period forward and
// compares with the multiplier times the start value. All three defects are
// normalized by the largest solution magnitude on the grid (the honest scale
// when one basis element decays while its partner grows).
SolutionReport verify_solution(const FourierPotential& pot, const VTable& vt,
                               SolutionKind kind, Complex lambda,
                               const std::vector<double>& x_grid,
                               const IntegrateOptions& opts = {});

struct ConnectionReport {
  double extension_defect_pos = 0.0;  // f2_plus into x>0 vs c11 f1+ + c12 f1-
  double extension_defect_neg = 0.0;  // f1_plus into x<0 vs c22 f2+ + c21 f2-
};

ConnectionReport verify_connection(const FourierPotential& pot,
                                   const VTable& vplus, const VTable& vminus,
                                   Complex lambda,
                                   const std::vector<double>& x_grid_pos,
                                   const std::vector<double>& x_grid_neg,
                                   const IntegrateOptions& opts = {});

}  // namespace pencil
