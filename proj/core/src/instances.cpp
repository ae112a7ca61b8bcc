#include "polar/instances.hpp"

#include <cmath>
#include <string>

#include "polar/errors.hpp"

namespace polar {

VectorSystem orthonormal_system(int n) {
  return VectorSystem(Eigen::MatrixXd::Identity(n, n));
}

VectorSystem angle_system(double theta) {
  Eigen::MatrixXd rows(2, 2);
  rows << 1.0, 0.0, std::cos(theta), std::sin(theta);
  return VectorSystem(rows);
}

VectorSystem random_system(int n, Rng& rng) {
  Eigen::MatrixXd rows(n, n);
  for (int i = 0; i < n; ++i) rows.row(i) = rng.unit_vector(n).transpose();
  return VectorSystem(rows);
}

VectorSystem nearly_dependent_system(int n, double lambda_min, Rng& rng) {
  if (n < 2) {
    throw InvalidConfig("nearly_dependent_system needs n >= 2");
  }
  if (!(lambda_min > 0.0) || !(lambda_min < 1.0)) {
    throw InvalidConfig("lambda_min must lie in (0, 1)");
  }
  const Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::MatrixXd rows(n, n);
  for (int i = 0; i < n - 1; ++i) rows.row(i) = q.row(i);
  // Gram spectrum becomes {1, ..., 1, 1 - cos d, 1 + cos d}.
  const double delta = std::acos(1.0 - lambda_min);
  rows.row(n - 1) =
      std::cos(delta) * q.row(0) + std::sin(delta) * q.row(n - 1);
  return VectorSystem(rows);
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Ellipsoid random_ellipsoid(int dim, double max_condition, Rng& rng,
                           double center_scale) {
  if (dim < 1) {
    throw InvalidConfig("random_ellipsoid needs dim >= 1");
  }
  if (!(max_condition >= 1.0)) {
    throw InvalidConfig("max_condition must be >= 1");
  }
  const double half_span = 0.5 * std::log(max_condition);
  Eigen::VectorXd axes(dim);
  for (int i = 0; i < dim; ++i) {
    axes(i) = std::exp(rng.uniform(-half_span, half_span));
  }
  const Eigen::MatrixXd a = random_orthogonal(dim, rng) * axes.asDiagonal() *
                            random_orthogonal(dim, rng);
  const Eigen::VectorXd center = center_scale * rng.gaussian_vector(dim);
  return from_linear_image(a, center);
}

}  // namespace polar
