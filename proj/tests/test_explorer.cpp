#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "polar/errors.hpp"
#include "polar/explorer.hpp"
#include "polar/instances.hpp"
#include "polar/oracle.hpp"
#include "polar/random.hpp"
#include "polar/spectrum.hpp"

using namespace polar;

namespace {

bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

OracleConfig effort(int starts, std::uint64_t seed = 0) {
  OracleConfig cfg;
  cfg.starts = starts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("normalized_value: orthonormal systems sit exactly at 1") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(near_abs(normalized_value(orthonormal_system(n), effort(8)), 1.0,
                   1e-8));
  }
}

TEST_CASE("normalized_value: closed forms at n = 2") {
  // v(theta) = 2 * (1 + cos theta) / 2 = 1 + cos theta
  CHECK(near_abs(normalized_value(angle_system(M_PI / 3.0), effort(16)), 1.5,
                 1e-6));
  const double theta = 1e-3;
  CHECK(near_abs(normalized_value(angle_system(theta), effort(16)),
                 1.0 + std::cos(theta), 1e-6));
}

TEST_CASE("explore validates its configuration") {
  CHECK_THROWS_AS(explore(1, 100, 0), InvalidConfig);
  CHECK_THROWS_AS(explore(9, 100, 0), InvalidConfig);
  CHECK_THROWS_AS(explore(2, 0, 0), InvalidConfig);
}

TEST_CASE("explore: budget 1 falls back to the orthonormal baseline") {
  const auto report = explore(2, 1, 99);
  CHECK(report.n == 2);
  CHECK(report.iterations == 1);
  CHECK(near_abs(report.normalized_value, 1.0, 1e-9));
  CHECK_FALSE(report.anomaly);
  // Gram of the reported system is the identity
  const auto gram = gram_spectrum(report.best_system).gram;
  CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
        1e-9);
}

TEST_CASE("explore: modest n = 2 run stays inside the conjectured range") {
  for (const std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    const auto report = explore(2, 200, seed);
    CHECK(report.normalized_value >= 1.0 - 1e-4);
    CHECK(report.normalized_value <= 1.0 + 1e-6);
    CHECK_FALSE(report.anomaly);
    CHECK(!report.history.empty());
    // the reported value is recomputable from the reported system
    const double again =
        normalized_value(report.best_system, effort(128, derive_seed(seed, 2)));
    CHECK(near_abs(again, report.normalized_value, 1e-6));
  }
}

TEST_CASE("explore: n = 3 run ends near the orthonormal configuration") {
  const auto report = explore(3, 300, 5);
  CHECK(report.normalized_value >= 1.0 - 1e-3);
  CHECK(report.normalized_value <= 1.0 + 1e-6);
  const auto gram = gram_spectrum(report.best_system).gram;
  // near orthonormal: off-diagonal stays small once the search settles
  MESSAGE("n=3 best gram off-diagonal max: ",
          (gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
}

TEST_CASE("explore is deterministic for a fixed seed") {
  const auto a = explore(2, 60, 4242);
  const auto b = explore(2, 60, 4242);
  CHECK(a.normalized_value == b.normalized_value);
  CHECK((a.best_system.matrix() - b.best_system.matrix())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(a.history.size() == b.history.size());
}

TEST_CASE("re-scoring the winner with 10x effort barely moves it") {
  const auto report = explore(2, 150, 21);
  const double heavy = normalized_value(report.best_system,
                                        effort(1280, derive_seed(21, 2)));
  CHECK(std::abs(heavy - report.normalized_value) < 1e-4);
}

TEST_CASE("normalized values dominate the geometric bound reference") {
  Rng rng(8899);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7.0);  // 2..8
    const VectorSystem sys = random_system(n, rng);
    const auto s = gram_spectrum(sys);
    if (s.rank_deficient) continue;
    const double v = normalized_value(sys, effort(16, trial));
    const double reference =
        std::exp(geometric_bound(s) + 0.5 * n * std::log(double(n)));
    CHECK(std::log(v) >= std::log(reference) - 1e-6);
  }
}

TEST_CASE("conjecture check at n = 2 by brute force over angles") {
  // v(theta) = 1 + |cos theta| over a 10^4 grid: minimum 1 at theta = pi/2
  double min_v = 1e300;
  double argmin = 0.0;
  const int grid = 10000;
  for (int i = 1; i < grid; ++i) {
    const double theta = M_PI * i / grid;
    const auto r = grid_oracle_2d(angle_system(theta), 2000);
    const double v = std::exp(r.log_value) * 2.0;
    if (v < min_v) {
      min_v = v;
      argmin = theta;
    }
  }
  CHECK(near_abs(min_v, 1.0, 1e-6));
  CHECK(near_abs(argmin, M_PI / 2.0, 1e-3));
}
