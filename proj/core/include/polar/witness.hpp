#pragma once

#include <Eigen/Dense>

#include <vector>

#include "polar/ellipsoid.hpp"
#include "polar/spectrum.hpp"

namespace polar {

// One level of the recursive slicing descent. At dimension k the descent
// slices through the center (volume factor slice_volume), steps out by
// step = volume / (slice_volume * sqrt(k)) on the side of the center's sign,
// fixes coordinate = center_last +/- step, and recurses on that slice. The
// base level k = 1 records the interval endpoint (slice_volume 1, step equal
// to the half-length).
struct DescentLevel {
  int dim;
  double center_last;   // last coordinate of the center, c_k
  double volume;        // volume factor of the level's ellipsoid, V_k
  double slice_volume;  // volume factor of the central slice, S_k
  double step;          // h_k = V_k / (S_k sqrt(k))
  double coordinate;    // chosen z_k = c_k +/- h_k
  bool reflected;       // stepped on the negative side (c_k < 0)
};

struct DescentResult {
  Eigen::VectorXd point;             // z with |prod z_j| >= V * k^{-k/2}
  std::vector<DescentLevel> levels;  // from the top dimension down to 1
};

// Walks an ellipsoid of volume factor V down to a point z in E with
// |prod_j z_j| >= V * k^{-k/2}, certifying each level as it goes. Throws
// NumericalFailure if a requested slice comes back empty or the per-level
// telescoping inequality
//   V_k k^{-k/2} <= |z_k| * V_{k-1} (k-1)^{-(k-1)/2}
// degrades beyond 1e-8 in log space.
DescentResult descend(const Ellipsoid& e);

// The constructed witness: a unit vector y whose factor product certifies
// the geometric-mean bound for its system.
struct WitnessResult {
  Eigen::VectorXd y;        // unit vector
  Eigen::VectorXd factors;  // <x_j, y>
  double log_product;       // sum_j log |factors_j|
  double log_bound;         // geometric_bound of the system
  double slack;             // log_product - log_bound, >= 0 up to 1e-8
  double prenormalization_norm;      // ||y0|| <= 1 before the final rescale
  std::vector<DescentLevel> trace;
};

// Builds E = X[B^n] (volume factor (prod lambda_j)^{1/2}), descends to
// z in E intersected with H_V, and recovers y0 = X^{-1} z, so that
// <x_j, y0> = z_j and ||y0|| <= 1. Returning y = y0/||y0|| can only grow
// each factor, so the certificate survives normalization.
//
// Throws DegenerateSystem when the smallest Gram eigenvalue is below 1e-10
// and NumericalFailure when the recovered point fails its certificate
// re-check.
WitnessResult find_witness(const VectorSystem& x);

// From-scratch re-check of a witness against its system; failures are
// reported in the record, never thrown.
struct VerificationRecord {
  bool pass;
  bool norm_ok;   // ||y|| = 1 within 1e-8
  bool bound_ok;  // log_product >= log_bound - 1e-8
  double y_norm;
  double log_product;  // recomputed from y
  double log_bound;    // recomputed from the system
  double slack;
};

VerificationRecord verify_witness(const VectorSystem& x,
                                  const WitnessResult& w);

}  // namespace polar
