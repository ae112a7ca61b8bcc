#include "polar/witness.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "polar/errors.hpp"

namespace polar {

namespace {

constexpr double kLevelCertTol = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_abs_product(const Eigen::VectorXd& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v(j) == 0.0) return -kInf;
    s += std::log(std::abs(v(j)));
  }
  return s;
}

}  // namespace

DescentResult descend(const Ellipsoid& e) {
  const int top = e.dim();
  DescentResult result;
  result.point = Eigen::VectorXd::Zero(top);
  result.levels.reserve(top);

  std::optional<Ellipsoid> cur = e;
  for (int k = top; k >= 2; --k) {
    const double log_v = log_volume_factor(*cur);
    const double ck = cur->center()(k - 1);
    const bool reflected = ck < 0.0;

    const auto central = slice(*cur, ck);
    if (!central) {
      throw NumericalFailure("central slice vanished at dimension " +
                             std::to_string(k));
    }
    const double log_s = log_volume_factor(*central);
    const double h = std::exp(log_v - log_s) / std::sqrt(static_cast<double>(k));
    const double zk = ck + (reflected ? -h : h);

    auto sub = slice(*cur, zk);
    if (!sub) {
      throw NumericalFailure("descent slice came back empty at dimension " +
                             std::to_string(k));
    }

    // Telescoping certificate for this level, checked on the measured
    // volume of the slice actually taken:
    //   V_k k^{-k/2} <= |z_k| V_{k-1} (k-1)^{-(k-1)/2}
    const double log_v_sub = log_volume_factor(*sub);
    const double lhs = log_v - 0.5 * k * std::log(static_cast<double>(k));
    const double rhs = std::log(std::abs(zk)) + log_v_sub -
                       0.5 * (k - 1) * std::log(static_cast<double>(k - 1));
    if (lhs > rhs + kLevelCertTol) {
      throw NumericalFailure("per-level certificate degraded at dimension " +
                             std::to_string(k) + " (" + std::to_string(lhs) +
                             " > " + std::to_string(rhs) + ")");
    }

    result.point(k - 1) = zk;
    result.levels.push_back({k, ck,
                             std::exp(log_v), std::exp(log_s), h, zk,
                             reflected});
    cur = std::move(sub);
  }

  // Base interval [c - a, c + a], a = V_1; take the endpoint away from 0.
  {
    const double a = volume_factor(*cur);
    const double c = cur->center()(0);
    const bool reflected = c < 0.0;
    const double z = c + (reflected ? -a : a);
    result.point(0) = z;
    result.levels.push_back({1, c, a, 1.0, a, z, reflected});
  }

  // Whole-descent guarantees: z stays in E and the product clears
  // V * k^{-k/2} up to a 1e-10 relative allowance.
  const double log_v_top = log_volume_factor(e);
  const double bound = log_v_top -
                       0.5 * top * std::log(static_cast<double>(top)) +
                       std::log1p(-1e-10);
  if (log_abs_product(result.point) < bound) {
    throw NumericalFailure("descent product fell below its certified bound");
  }
  if (!e.contains(result.point, 1e-9)) {
    throw NumericalFailure("descent point left the ellipsoid");
  }
  return result;
}

WitnessResult find_witness(const VectorSystem& x) {
  const GramSpectrum spectrum = gram_spectrum(x);
  if (spectrum.rank_deficient) {
    throw DegenerateSystem("system is linearly dependent (smallest Gram "
                           "eigenvalue below 1e-10); the geometric bound is "
                           "zero and no witness is constructed");
  }
  const Eigen::MatrixXd& mat = x.matrix();
  const int n = x.n();

  const Ellipsoid image =
      from_linear_image(mat, Eigen::VectorXd::Zero(n));
  DescentResult descent = descend(image);

  // y0 = X^{-1} z with one step of iterative refinement; the certificate
  // rests on <x_j, y0> = z_j holding to high accuracy.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(mat);
  Eigen::VectorXd y0 = lu.solve(descent.point);
  y0 += lu.solve(descent.point - mat * y0);

  const double y0_norm = y0.norm();
  if (!(y0_norm <= 1.0 + 1e-9)) {
    throw NumericalFailure("recovered point left the unit ball (norm " +
                           std::to_string(y0_norm) + ")");
  }
  const double log_v = log_volume_factor(image);
  if (!h_alpha_contains_log(mat * y0, log_v + std::log1p(-1e-8))) {
    throw NumericalFailure("recovered factors fell outside the certified "
                           "product region");
  }

  WitnessResult w;
  w.y = y0 / y0_norm;
  w.factors = mat * w.y;
  w.log_product = log_abs_product(w.factors);
  w.log_bound = geometric_bound(spectrum);
  w.slack = w.log_product - w.log_bound;
  w.prenormalization_norm = y0_norm;
  w.trace = std::move(descent.levels);
  if (!(w.slack >= -1e-8)) {
    throw NumericalFailure("witness slack " + std::to_string(w.slack) +
                           " below -1e-8");
  }
  return w;
}

VerificationRecord verify_witness(const VectorSystem& x,
                                  const WitnessResult& w) {
  if (w.y.size() != x.n()) {
    throw WrongDimension("witness dimension " + std::to_string(w.y.size()) +
                         " does not match system dimension " +
                         std::to_string(x.n()));
  }
  VerificationRecord r;
  r.y_norm = w.y.norm();
  r.log_product = log_abs_product(x.matrix() * w.y);
  r.log_bound = geometric_bound(gram_spectrum(x));
  r.slack = r.log_product - r.log_bound;
  r.norm_ok = std::abs(r.y_norm - 1.0) <= 1e-8;
  r.bound_ok = r.log_product >= r.log_bound - 1e-8;
  r.pass = r.norm_ok && r.bound_ok;
  return r;
}

}  // namespace polar
