#pragma once

#include <Eigen/Dense>

#include "polar/ellipsoid.hpp"
#include "polar/random.hpp"
#include "polar/spectrum.hpp"

namespace polar {

// Seeded generators for problem instances and test geometry.

// The rows of the identity matrix.
VectorSystem orthonormal_system(int n);

// n = 2 system at a prescribed angle: (1, 0) and (cos theta, sin theta).
VectorSystem angle_system(double theta);

// n vectors drawn independently and uniformly from the unit sphere.
VectorSystem random_system(int n, Rng& rng);

// Random orthonormal rows with the last vector tilted toward the first so
// the smallest Gram eigenvalue is exactly lambda_min (in exact arithmetic);
// requires 0 < lambda_min < 1 and n >= 2.
VectorSystem nearly_dependent_system(int n, double lambda_min, Rng& rng);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign fixed).
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

// Random ellipsoid whose axis ratio is bounded by max_condition, with a
// Gaussian center scaled by center_scale.
Ellipsoid random_ellipsoid(int dim, double max_condition, Rng& rng,
                           double center_scale = 1.0);

}  // namespace polar
