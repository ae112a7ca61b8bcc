#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "polar/ellipsoid.hpp"
#include "polar/errors.hpp"
#include "polar/instances.hpp"
#include "polar/random.hpp"

using namespace polar;

namespace {

bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

Ellipsoid unit_ball(int k) {
  return Ellipsoid(Eigen::VectorXd::Zero(k), Eigen::MatrixXd::Identity(k, k));
}

}  // namespace

TEST_CASE("constructor enforces the type invariants") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = 1e-6;  // asymmetric beyond 1e-12
  CHECK_THROWS_AS(Ellipsoid(Eigen::VectorXd::Zero(2), bad), InvalidArgument);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;  // eigenvalues -1, 3
  CHECK_THROWS_AS(Ellipsoid(Eigen::VectorXd::Zero(2), indefinite),
                  InvalidArgument);

  CHECK_THROWS_AS(
      Ellipsoid(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(2, 2)),
      InvalidArgument);
  CHECK_THROWS_AS(Ellipsoid(Eigen::VectorXd(), Eigen::MatrixXd()),
                  InvalidArgument);
}

TEST_CASE("from_linear_image: identity gives the unit ball") {
  const auto e =
      from_linear_image(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3));
  CHECK(e.dim() == 3);
  CHECK((e.shape() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(e.center().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("from_linear_image: diagonal transform inverts squared") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 0.0, 0.0, 0.5;
  const auto e = from_linear_image(a, Eigen::VectorXd::Zero(2));
  CHECK(near_abs(e.shape()(0, 0), 0.25, 1e-14));
  CHECK(near_abs(e.shape()(1, 1), 4.0, 1e-14));
  CHECK(near_abs(e.shape()(0, 1), 0.0, 1e-14));
}

TEST_CASE("from_linear_image: boundary images have unit quadratic form") {
  Rng rng(20240811);
  const int k = 4;
  const Eigen::MatrixXd a = random_orthogonal(k, rng) *
                            Eigen::Vector4d(3.0, 1.2, 0.7, 0.1).asDiagonal() *
                            random_orthogonal(k, rng);
  const auto e = from_linear_image(a, Eigen::VectorXd::Zero(k));
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd u = rng.unit_vector(k);
    CHECK(near_abs(e.quadratic_form(a * u), 1.0, 1e-9));
  }
}

TEST_CASE("from_linear_image: interior points satisfy the form") {
  Rng rng(7);
  const int k = 5;
  const Eigen::VectorXd center = rng.gaussian_vector(k);
  const Eigen::MatrixXd a = random_orthogonal(k, rng) *
                            (Eigen::VectorXd::LinSpaced(k, 0.2, 2.0))
                                .asDiagonal()
                                .toDenseMatrix() *
                            random_orthogonal(k, rng);
  const auto e = from_linear_image(a, center);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd u =
        rng.unit_vector(k) * std::pow(rng.uniform(), 1.0 / k);
    CHECK(e.quadratic_form(center + a * u) <= 1.0 + 1e-9);
  }
}

TEST_CASE("from_linear_image rejects rank-deficient transforms") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;  // third singular value 0
  CHECK_THROWS_AS(from_linear_image(a, Eigen::VectorXd::Zero(3)),
                  DegenerateTransform);
  CHECK_THROWS_AS(
      from_linear_image(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)),
      DegenerateTransform);
}

TEST_CASE("volume_factor: unit ball is 1 in every dimension") {
  for (int k = 1; k <= 6; ++k) {
    CHECK(near_abs(volume_factor(unit_ball(k)), 1.0, 1e-14));
    CHECK(near_abs(log_volume_factor(unit_ball(k)), 0.0, 1e-14));
  }
}

TEST_CASE("volume_factor: diag(1/4, 4) has determinant one") {
  Eigen::MatrixXd m(2, 2);
  m << 0.25, 0.0, 0.0, 4.0;
  CHECK(near_abs(volume_factor(Ellipsoid(Eigen::VectorXd::Zero(2), m)), 1.0,
                 1e-14));
}

TEST_CASE("volume_factor equals |det A| for linear images") {
  Rng rng(99);
  for (int k = 2; k <= 7; ++k) {
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a(i, j) = rng.gaussian();
    double det = a.determinant();
    if (std::abs(det) < 1e-3) continue;  // keep the oracle well conditioned
    const auto e = from_linear_image(a, Eigen::VectorXd::Zero(k));
    CHECK(near_rel(volume_factor(e), std::abs(det), 1e-9));
  }
}

TEST_CASE("slice: unit disk worked examples") {
  const auto disk = unit_ball(2);

  const auto equator = slice(disk, 0.0);
  REQUIRE(equator.has_value());
  CHECK(equator->dim() == 1);
  CHECK(near_abs(equator->center()(0), 0.0, 1e-15));
  CHECK(near_abs(equator->shape()(0, 0), 1.0, 1e-14));

  // x^2 + 1/2 <= 1 leaves half-length 1/sqrt(2), i.e. shape [2]
  const auto high = slice(disk, 1.0 / std::sqrt(2.0));
  REQUIRE(high.has_value());
  CHECK(near_abs(high->center()(0), 0.0, 1e-15));
  CHECK(near_abs(high->shape()(0, 0), 2.0, 1e-12));

  CHECK_FALSE(slice(disk, 1.5).has_value());
  CHECK_THROWS_AS(slice(unit_ball(1), 0.0), WrongDimension);
}

TEST_CASE("slice_volume_formula worked examples") {
  CHECK(near_abs(slice_volume_formula(1.0, 1.0, 0.0, 2), 1.0, 1e-15));
  CHECK(near_abs(slice_volume_formula(1.0, 1.0, 0.0, 7), 1.0, 1e-15));
  CHECK(near_abs(slice_volume_formula(1.0, 1.0, 1.0 / std::sqrt(2.0), 2),
                 1.0 / std::sqrt(2.0), 1e-12));
  CHECK(slice_volume_formula(1.0, 2.0, 0.6, 3) == 0.0);  // |h| > v/s = 0.5
  CHECK_THROWS_AS(slice_volume_formula(0.0, 1.0, 0.0, 2), InvalidArgument);
  CHECK_THROWS_AS(slice_volume_formula(1.0, 1.0, 0.0, 1), InvalidArgument);
}

TEST_CASE("h_alpha_contains worked examples") {
  Eigen::VectorXd z(2);
  z << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(h_alpha_contains(z, 1.0));  // product exactly 1/2 = 1 * 2^{-1}

  Eigen::VectorXd zero_coord(2);
  zero_coord << 1.0, 0.0;
  CHECK_FALSE(h_alpha_contains(zero_coord, 0.1));

  Eigen::VectorXd z2(2);
  z2 << 0.9, 0.3;
  CHECK(h_alpha_contains(z2, 0.5));        // 0.27 >= 0.25
  CHECK_FALSE(h_alpha_contains(z2, 1.2));  // 0.27 < 0.30

  CHECK_THROWS_AS(h_alpha_contains(z, 0.0), InvalidArgument);
  CHECK_THROWS_AS(h_alpha_contains(Eigen::VectorXd(), 1.0), WrongDimension);
}

// The shape-independence claim: the slice volume depends on the ellipsoid
// only through V, S and the offset h.
TEST_CASE("slice volume matches the closed formula on random ellipsoids") {
  Rng rng(123456);
  int tested = 0;
  while (tested < 200) {
    const int k = 2 + static_cast<int>(rng.uniform() * 7.0);  // 2..8
    const Ellipsoid e = random_ellipsoid(k, 100.0, rng);
    const double v = volume_factor(e);
    const auto central = slice(e, e.center()(k - 1));
    REQUIRE(central.has_value());
    const double s = volume_factor(*central);

    const double h = rng.uniform(-0.999, 0.999) * (v / s);
    const double predicted = slice_volume_formula(v, s, h, k);
    const auto cut = slice(e, e.center()(k - 1) + h);
    REQUIRE(cut.has_value());
    CHECK(near_rel(volume_factor(*cut), predicted, 1e-8));
    ++tested;
  }
}

TEST_CASE("slicing commutes with translation") {
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform() * 5.0);  // 2..6
    const Ellipsoid e = random_ellipsoid(k, 50.0, rng);
    const Eigen::VectorXd w = rng.gaussian_vector(k);
    const Ellipsoid shifted(e.center() + w, e.shape());

    const double v = volume_factor(e);
    const auto central = slice(e, e.center()(k - 1));
    REQUIRE(central.has_value());
    const double h =
        rng.uniform(-0.9, 0.9) * (v / volume_factor(*central));
    const double t = e.center()(k - 1) + h;

    const auto a = slice(e, t);
    const auto b = slice(shifted, t + w(k - 1));
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK((b->center() - (a->center() + w.head(k - 1))).cwiseAbs().maxCoeff() <=
          1e-10);
    CHECK((b->shape() - a->shape()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("slice emptiness agrees with the formula zero set") {
  Rng rng(777);
  const double ratios[] = {0.3, 0.9, 0.999, 1.001, 1.1, 1.5, 3.0};
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform() * 7.0);
    const Ellipsoid e = random_ellipsoid(k, 100.0, rng);
    const double v = volume_factor(e);
    const auto central = slice(e, e.center()(k - 1));
    REQUIRE(central.has_value());
    const double s = volume_factor(*central);
    for (const double ratio : ratios) {
      for (const double sign : {-1.0, 1.0}) {
        const double h = sign * ratio * (v / s);
        const bool formula_zero = slice_volume_formula(v, s, h, k) == 0.0;
        const bool absent = !slice(e, e.center()(k - 1) + h).has_value();
        CHECK(absent == formula_zero);
      }
    }
  }
}
