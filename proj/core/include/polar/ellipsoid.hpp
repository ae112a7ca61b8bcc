#pragma once

#include <Eigen/Dense>

#include <optional>

namespace polar {

// Full-dimensional ellipsoid E = {z : (z - c)^T M (z - c) <= 1}, stored as
// center c and symmetric positive definite shape matrix M.
//
// Volumes are handled throughout as dimensionless factors vol(E) / b_k, where
// b_k is the k-dimensional unit-ball volume; b_k cancels out of every formula
// used here and is never computed. Factors are carried in log space so deep
// slicing chains cannot underflow.
class Ellipsoid {
 public:
  // Validates the invariants: center/shape dimensions agree and are >= 1,
  // shape is symmetric to 1e-12 entrywise, and shape is positive definite
  // (every Cholesky pivot above 1e-12 relative to the largest diagonal
  // entry). Throws InvalidArgument otherwise. The factorization run for
  // validation also fixes log det M, so volume factors are free afterwards.
  Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape);

  int dim() const { return static_cast<int>(center_.size()); }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& shape() const { return shape_; }
  double log_shape_determinant() const { return log_det_shape_; }

  // (z - c)^T M (z - c)
  double quadratic_form(const Eigen::VectorXd& z) const;

  // Membership up to an additive tolerance on the quadratic form.
  bool contains(const Eigen::VectorXd& z, double tol = 1e-9) const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd shape_;
  double log_det_shape_;
};

// The ellipsoid {center + A u : ||u|| <= 1}; its shape matrix is (A A^T)^{-1},
// assembled from the SVD of A. Throws DegenerateTransform when the smallest
// to largest singular value ratio is not above 1e-10.
Ellipsoid from_linear_image(const Eigen::MatrixXd& a,
                            const Eigen::VectorXd& center);

// log of vol(E) / b_k = -1/2 log det M. For E = A[B^k] this is log |det A|.
double log_volume_factor(const Ellipsoid& e);

// exp of the above; underflows to 0 only for extremely flat high-dimensional
// ellipsoids (log factor below roughly -690).
double volume_factor(const Ellipsoid& e);

// Intersection of E with the hyperplane {last coordinate = t}, as an
// ellipsoid in the first k-1 coordinates. With the shape in blocks
// M = [[M11, m], [m^T, mu]] and d = t - c_k, the slice has
//   center  c' = c_{1..k-1} - d * M11^{-1} m
//   shape   M' = M11 / (1 - rho),   rho = d^2 (mu - m^T M11^{-1} m).
// Returns nullopt when rho >= 1 - 1e-14 (empty or single-point slice);
// emptiness is not an error.
std::optional<Ellipsoid> slice(const Ellipsoid& e, double t);

// (k-1)-dimensional volume factor of the slice at signed offset h from the
// center, for an ellipsoid of volume factor v whose central slice has factor
// s:
//   s * (1 - (s h / v)^2)^{(k-1)/2}   when |h| <= v/s,   0 beyond.
// The point of the formula is that it depends on the ellipsoid only through
// v and s, never on the actual shape.
double slice_volume_formula(double v, double s, double h, int k);

// Membership in H_alpha = {z in R^n : |prod_j z_j| >= alpha * n^{-n/2}},
// evaluated in log space (boundary inclusive to 1e-12 in the log). A zero
// coordinate always fails for alpha > 0.
bool h_alpha_contains(const Eigen::VectorXd& z, double alpha);

// Same predicate with alpha given as log(alpha), for callers whose alpha
// lives outside the representable linear range.
bool h_alpha_contains_log(const Eigen::VectorXd& z, double log_alpha);

}  // namespace polar
