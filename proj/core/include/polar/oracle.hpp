#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "polar/spectrum.hpp"

namespace polar {

// Lower estimation of sup_{|y|=1} |<x_1,y> ... <x_n,y>|. Every method here
// estimates from below by construction; no certified upper bound is
// attempted.

enum class OracleMethod { multistart_gradient, grid_2d, monte_carlo };

struct OracleConfig {
  int starts = 32;          // random starts; must be >= 1
  std::uint64_t seed = 0;   // per-start seeds are derived from this
  int max_iterations = 500;
  double gradient_tolerance = 1e-10;
  int threads = 1;          // start optimization may run concurrently;
                            // results are identical to the sequential run
};

struct OracleResult {
  Eigen::VectorXd best_y;  // unit vector
  double log_value;        // sum_j log |<x_j, best_y>|, recomputed from best_y
  int starts;              // starts actually optimized / points evaluated
  int converged;           // starts that met the gradient tolerance
  OracleMethod method;
};

// Multistart projected gradient ascent of f(y) = sum_j log |<x_j, y>| on the
// unit sphere: gradient sum_j x_j / <x_j, y> projected to the tangent space,
// backtracking from step 1.0 with halving, re-projecting each step;
// convergence at projected-gradient norm < 1e-10 or max_iterations.
//
// Starts are cfg.starts seeded random unit vectors (redrawn while they sit
// within 1e-12 of a zero factor), plus the constructed witness and the
// normalized all-ones vector. Deterministic for a fixed (instance, cfg):
// per-start seeds are derived from cfg.seed by index and ties break on the
// lower start index. Throws InvalidConfig for starts < 1.
//
// Rank-deficient systems are allowed (the witness start is skipped); callers
// that care should warn, since a dense set of directions then meets a zero
// factor.
OracleResult sup_product(const VectorSystem& x, const OracleConfig& cfg);

// Brute-force oracle for n = 2: evaluates y(a) = (cos a, sin a) on a uniform
// grid over [0, pi) and polishes the best cell with golden-section search.
// Throws WrongDimension for n != 2 and InvalidConfig for grid_points < 1000.
OracleResult grid_oracle_2d(const VectorSystem& x, int grid_points);

// Best of `samples` uniform random unit vectors; a deterministic sanity
// floor, not a serious optimizer. Throws InvalidConfig for samples < 1.
OracleResult monte_carlo_oracle(const VectorSystem& x, int samples,
                                std::uint64_t seed);

}  // namespace polar
