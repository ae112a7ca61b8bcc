#include "polar/ellipsoid.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "polar/errors.hpp"

namespace polar {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPivotRelTol = 1e-12;
constexpr double kSliceBoundaryTol = 1e-14;
constexpr double kLogMembershipTol = 1e-12;

// Unblocked Cholesky used only to certify positive definiteness and price
// log det M in one pass. Pivots are measured against the largest diagonal
// entry; returns nullopt when any pivot falls below that threshold.
std::optional<double> spd_log_det(const Eigen::MatrixXd& m) {
  const int k = static_cast<int>(m.rows());
  const double max_diag = m.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) return std::nullopt;
  const double pivot_tol = kPivotRelTol * max_diag;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k, k);
  double log_det = 0.0;
  for (int i = 0; i < k; ++i) {
    double d = m(i, i);
    for (int j = 0; j < i; ++j) d -= l(i, j) * l(i, j);
    if (!(d > pivot_tol)) return std::nullopt;
    log_det += std::log(d);
    l(i, i) = std::sqrt(d);
    for (int r = i + 1; r < k; ++r) {
      double v = m(r, i);
      for (int j = 0; j < i; ++j) v -= l(r, j) * l(i, j);
      l(r, i) = v / l(i, i);
    }
  }
  return log_det;
}

}  // namespace

Ellipsoid::Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
  const auto k = center_.size();
  if (k < 1) {
    throw InvalidArgument("ellipsoid dimension must be at least 1");
  }
  if (shape_.rows() != k || shape_.cols() != k) {
    throw InvalidArgument(
        "ellipsoid shape must be " + std::to_string(k) + "x" +
        std::to_string(k) + ", got " + std::to_string(shape_.rows()) + "x" +
        std::to_string(shape_.cols()));
  }
  const double asym = (shape_ - shape_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTol)) {
    throw InvalidArgument("ellipsoid shape is not symmetric (max |M - M^T| = " +
                          std::to_string(asym) + ")");
  }
  shape_ = ((shape_ + shape_.transpose()) * 0.5).eval();
  const auto log_det = spd_log_det(shape_);
  if (!log_det) {
    throw InvalidArgument("ellipsoid shape is not positive definite");
  }
  log_det_shape_ = *log_det;
}

double Ellipsoid::quadratic_form(const Eigen::VectorXd& z) const {
  if (z.size() != center_.size()) {
    throw WrongDimension("point has dimension " + std::to_string(z.size()) +
                         ", ellipsoid has dimension " +
                         std::to_string(center_.size()));
  }
  const Eigen::VectorXd w = z - center_;
  return w.dot(shape_ * w);
}

bool Ellipsoid::contains(const Eigen::VectorXd& z, double tol) const {
  return quadratic_form(z) <= 1.0 + tol;
}

Ellipsoid from_linear_image(const Eigen::MatrixXd& a,
                            const Eigen::VectorXd& center) {
  if (a.rows() != a.cols() || a.rows() != center.size() || a.rows() < 1) {
    throw WrongDimension("from_linear_image needs a square matrix matching "
                         "the center dimension");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  if (!(largest > 0.0) || !(smallest / largest > 1e-10)) {
    throw DegenerateTransform("transform is numerically rank deficient "
                              "(singular value ratio " +
                              std::to_string(smallest / largest) + ")");
  }
  // (A A^T)^{-1} = U diag(sigma^{-2}) U^T
  const Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd m =
      u * sv.array().square().inverse().matrix().asDiagonal() * u.transpose();
  m = ((m + m.transpose()) * 0.5).eval();
  return {center, std::move(m)};
}

double log_volume_factor(const Ellipsoid& e) {
  return -0.5 * e.log_shape_determinant();
}

double volume_factor(const Ellipsoid& e) {
  return std::exp(log_volume_factor(e));
}

std::optional<Ellipsoid> slice(const Ellipsoid& e, double t) {
  const int k = e.dim();
  if (k < 2) {
    throw WrongDimension("slice requires dimension >= 2");
  }
  const Eigen::MatrixXd& m = e.shape();
  const Eigen::MatrixXd m11 = m.topLeftCorner(k - 1, k - 1);
  const Eigen::VectorXd mcol = m.topRightCorner(k - 1, 1);
  const double mu = m(k - 1, k - 1);
  const double d = t - e.center()(k - 1);

  Eigen::LLT<Eigen::MatrixXd> llt(m11);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("leading block of the shape matrix lost positive "
                           "definiteness while slicing");
  }
  const Eigen::VectorXd w = llt.solve(mcol);
  // Schur complement of M11 in M; positive for SPD M, clamp roundoff.
  const double schur = std::max(mu - mcol.dot(w), 0.0);
  const double rho = d * d * schur;
  if (rho >= 1.0 - kSliceBoundaryTol) return std::nullopt;

  Eigen::VectorXd c = e.center().head(k - 1) - d * w;
  Eigen::MatrixXd shape = m11 / (1.0 - rho);
  return Ellipsoid(std::move(c), std::move(shape));
}

double slice_volume_formula(double v, double s, double h, int k) {
  if (!(v > 0.0) || !(s > 0.0)) {
    throw InvalidArgument("slice_volume_formula needs positive volume factors");
  }
  if (k < 2) {
    throw InvalidArgument("slice_volume_formula needs dimension >= 2");
  }
  const double r = (s * h) / v;
  const double u = r * r;
  if (u >= 1.0) return 0.0;  // |h| >= v/s
  return s * std::pow(1.0 - u, 0.5 * (k - 1));
}

bool h_alpha_contains_log(const Eigen::VectorXd& z, double log_alpha) {
  const auto n = z.size();
  if (n < 1) {
    throw WrongDimension("h_alpha_contains needs a nonempty vector");
  }
  double log_prod = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (z(j) == 0.0) return false;
    log_prod += std::log(std::abs(z(j)));
  }
  const double threshold =
      log_alpha - 0.5 * static_cast<double>(n) * std::log(static_cast<double>(n));
  return log_prod >= threshold - kLogMembershipTol;
}

bool h_alpha_contains(const Eigen::VectorXd& z, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("alpha must be positive and finite");
  }
  return h_alpha_contains_log(z, std::log(alpha));
}

}  // namespace polar
