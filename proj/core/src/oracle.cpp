#include "polar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "polar/errors.hpp"
#include "polar/random.hpp"
#include "polar/witness.hpp"

namespace polar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroFactorTol = 1e-12;
constexpr int kMaxRedraws = 128;
constexpr int kMaxHalvings = 60;

double log_abs_product(const Eigen::VectorXd& factors) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < factors.size(); ++j) {
    if (factors(j) == 0.0) return -kInf;
    s += std::log(std::abs(factors(j)));
  }
  return s;
}

double min_abs_factor(const Eigen::MatrixXd& mat, const Eigen::VectorXd& y) {
  return (mat * y).cwiseAbs().minCoeff();
}

struct AscentOutcome {
  Eigen::VectorXd y;
  double value;
  bool converged;
};

// Projected gradient ascent from one start. f stays finite along the path:
// only improving steps are taken, so zero-factor hyperplanes are never
// crossed.
AscentOutcome ascend(const Eigen::MatrixXd& mat, Eigen::VectorXd y,
                     int max_iterations, double gradient_tolerance) {
  double f = log_abs_product(mat * y);
  if (f == -kInf) return {std::move(y), f, false};

  bool converged = false;
  for (int iter = 0; iter < max_iterations; ++iter) {
    const Eigen::VectorXd factors = mat * y;
    const Eigen::VectorXd grad = mat.transpose() * factors.cwiseInverse();
    const Eigen::VectorXd dir = grad - grad.dot(y) * y;
    const double dir_norm = dir.norm();
    if (dir_norm < gradient_tolerance) {
      converged = true;
      break;
    }
    double step = 1.0;
    bool improved = false;
    for (int half = 0; half < kMaxHalvings; ++half) {
      const Eigen::VectorXd cand = (y + step * dir).normalized();
      const double fc = log_abs_product(mat * cand);
      // strong sufficient-increase constant: a plain improving overshoot
      // lands on the far side of the maximum and zigzags forever
      if (fc > f + 0.5 * step * dir_norm * dir_norm) {
        y = cand;
        f = fc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      // f changes less than its own ulp here; with a small gradient this is
      // convergence at machine resolution
      converged = dir_norm < 1e-6;
      break;
    }
  }
  return {std::move(y), f, converged};
}

OracleResult reduce_best(const Eigen::MatrixXd& mat,
                         std::vector<AscentOutcome> outcomes,
                         OracleMethod method, int starts_reported) {
  int best = 0;
  int converged = 0;
  for (int i = 0; i < static_cast<int>(outcomes.size()); ++i) {
    if (outcomes[i].converged) ++converged;
    if (outcomes[i].value > outcomes[best].value) best = i;
  }
  OracleResult r;
  r.best_y = std::move(outcomes[best].y);
  r.log_value = log_abs_product(mat * r.best_y);
  r.starts = starts_reported;
  r.converged = converged;
  r.method = method;
  return r;
}

}  // namespace

OracleResult sup_product(const VectorSystem& x, const OracleConfig& cfg) {
  if (cfg.starts < 1) {
    throw InvalidConfig("oracle needs at least one start");
  }
  if (cfg.threads < 1) {
    throw InvalidConfig("threads must be >= 1");
  }
  const Eigen::MatrixXd& mat = x.matrix();
  const int n = x.n();

  std::vector<Eigen::VectorXd> starts;
  starts.reserve(cfg.starts + 2);
  for (int i = 0; i < cfg.starts; ++i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd y = rng.unit_vector(n);
    for (int redraw = 0;
         redraw < kMaxRedraws && min_abs_factor(mat, y) < kZeroFactorTol;
         ++redraw) {
      y = rng.unit_vector(n);
    }
    starts.push_back(std::move(y));
  }
  // Two deterministic extra starts: the constructed witness (skipped for
  // degenerate systems) and the normalized all-ones vector.
  try {
    starts.push_back(find_witness(x).y);
  } catch (const DegenerateSystem&) {
  } catch (const NumericalFailure&) {
  }
  {
    Eigen::VectorXd ones =
        Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    if (min_abs_factor(mat, ones) >= kZeroFactorTol) {
      starts.push_back(std::move(ones));
    }
  }

  const int total = static_cast<int>(starts.size());
  std::vector<AscentOutcome> outcomes(total);
  const int workers = std::min(cfg.threads, total);
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) {
      outcomes[i] =
          ascend(mat, starts[i], cfg.max_iterations, cfg.gradient_tolerance);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < total; i += workers) {
          outcomes[i] = ascend(mat, starts[i], cfg.max_iterations,
                               cfg.gradient_tolerance);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return reduce_best(mat, std::move(outcomes),
                     OracleMethod::multistart_gradient, total);
}

OracleResult grid_oracle_2d(const VectorSystem& x, int grid_points) {
  if (x.n() != 2) {
    throw WrongDimension("grid oracle handles n = 2 only, got n = " +
                         std::to_string(x.n()));
  }
  if (grid_points < 1000) {
    throw InvalidConfig("grid oracle needs at least 1000 points");
  }
  const Eigen::MatrixXd& mat = x.matrix();
  const auto value_at = [&mat](double a) {
    Eigen::VectorXd y(2);
    y << std::cos(a), std::sin(a);
    return log_abs_product(mat * y);
  };

  double best_a = 0.0;
  double best_v = -kInf;
  for (int i = 0; i < grid_points; ++i) {
    const double a = M_PI * i / grid_points;
    const double v = value_at(a);
    if (v > best_v) {
      best_v = v;
      best_a = a;
    }
  }

  // Golden-section polish of the winning cell.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_a - M_PI / grid_points;
  double hi = best_a + M_PI / grid_points;
  double m1 = hi - invphi * (hi - lo);
  double m2 = lo + invphi * (hi - lo);
  double f1 = value_at(m1);
  double f2 = value_at(m2);
  while (hi - lo > 1e-13) {
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + invphi * (hi - lo);
      f2 = value_at(m2);
      if (f2 > best_v) {
        best_v = f2;
        best_a = m2;
      }
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - invphi * (hi - lo);
      f1 = value_at(m1);
      if (f1 > best_v) {
        best_v = f1;
        best_a = m1;
      }
    }
  }

  OracleResult r;
  r.best_y = Eigen::VectorXd(2);
  r.best_y << std::cos(best_a), std::sin(best_a);
  r.log_value = log_abs_product(mat * r.best_y);
  r.starts = grid_points;
  r.converged = 1;
  r.method = OracleMethod::grid_2d;
  return r;
}

OracleResult monte_carlo_oracle(const VectorSystem& x, int samples,
                                std::uint64_t seed) {
  if (samples < 1) {
    throw InvalidConfig("monte carlo oracle needs at least one sample");
  }
  const Eigen::MatrixXd& mat = x.matrix();
  Rng rng(seed);

  Eigen::VectorXd best_y = rng.unit_vector(x.n());
  double best_v = log_abs_product(mat * best_y);
  for (int i = 1; i < samples; ++i) {
    Eigen::VectorXd y = rng.unit_vector(x.n());
    const double v = log_abs_product(mat * y);
    if (v > best_v) {
      best_v = v;
      best_y = std::move(y);
    }
  }

  OracleResult r;
  r.best_y = std::move(best_y);
  r.log_value = log_abs_product(mat * r.best_y);
  r.starts = samples;
  r.converged = 0;
  r.method = OracleMethod::monte_carlo;
  return r;
}

}  // namespace polar
