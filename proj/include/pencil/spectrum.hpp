#pragma once

#include <optional>
#include <vector>

#include "pencil/connection.hpp"
#include "pencil/potential.hpp"
#include "pencil/vtable.hpp"

namespace pencil {

// Open quarter-planes S_k = { k pi/2 < arg lambda < (k+1) pi/2 }, k = 0..3.
// Eigenvalues in S_k are the zeros of the coefficient pairing the two
// solutions that decay at the two infinities:
//   S0: c12(lambda)          S3: c11(lambda)
//   S1: c22(lambda) = 0  <=> swapped-table c11(-lambda) = 0
//   S2: W[f1_minus, f2_minus] = 0  <=> swapped-table c12(-lambda) = 0
// so every sector reduces to a c11/c12 zero search in the first or fourth
// open quadrant, with the swapped tables standing in for the flipped
// potential on k = 1, 2.
struct EigenvalueRecord {
  int sector = 0;
  Complex lambda;
  Complex c11_plus;   // c11(lambda)
  Complex c11_minus;  // c11(-lambda)
};

struct CircleSample {
  Complex lambda;
  Complex c11;
  Complex c12;
};

struct CircleData {
  Complex center;
  double radius = 0.0;
  std::vector<CircleSample> samples;
};

struct AxisProbe {
  Complex lambda;
  Complex c11;
  Complex c12;
};

struct SpectralData {
  int order = 0;
  std::optional<double> beta_hint;
  std::vector<EigenvalueRecord> eigenvalues;
  std::vector<CircleData> circles;
  std::vector<AxisProbe> axis_probes;
};

struct FinderOptions {
  double margin = 1e-3;     // distance kept from the axes (open sectors)
  double target_tol = 1e-10;
  double min_box = 0.02;    // rectangles smaller than this get polished
  int max_edge_depth = 48;  // phase-increment refinement cap
};

// All zeros of the sector's detector inside S_k intersected with |lambda| <= R,
// each polished until |detector| <= target_tol, sorted lexicographically by
// (Re, Im). Winding numbers are computed from phase increments along
// rectangle edges, refined until each increment is below pi/2; rectangles are
// subdivided until they isolate single zeros. The detectors have no poles in
// the open quadrants (all pole candidates sit on the axes, excluded by the
// margin), so the winding count equals the zero count directly.
std::vector<Complex> find_eigenvalues(const VTable& vplus, const VTable& vminus,
                                      double beta, double R, int sector,
                                      const FinderOptions& opts = {});

struct Singularity {
  Complex location;
  double strength;
  enum Axis { real_axis, imaginary_axis } axis;
  bool removable;  // strength <= 1e-12
};

// Candidate continuous-spectrum singularities: +-n/2 on the real axis and
// +-in/(2 beta) on the imaginary axis, n = 1..M, with strengths given by the
// corresponding diagonal table entries.
std::vector<Singularity> spectral_singularities(const VTable& vplus,
                                                const VTable& vminus,
                                                double beta, int M);

struct AssembleOptions {
  double circle_radius = 0.125;  // shrunk automatically if samples crowd poles
  int circle_points = 64;
  int axis_points = 128;
  double axis_min_abs = 0.05;
  FinderOptions finder;
};

// Runs the eigenvalue finder over all four sectors within radius R, records
// c11 at +-lambda_n, samples c11/c12 on circles around +-n/2 for n <= N and
// on log-spaced negative-imaginary-axis probes. This is the complete
// black-box input of the inverse problem.
SpectralData assemble_spectral_data(const FourierPotential& pot, int M,
                                    double R, int N,
                                    const AssembleOptions& opts = {});

}  // namespace pencil
