#include "polar/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "polar/errors.hpp"
#include "polar/instances.hpp"
#include "polar/random.hpp"

namespace polar {

namespace {

constexpr int kCheapStarts = 8;
constexpr int kVerifyStarts = 128;
constexpr double kScaleHigh = 0.3;
constexpr double kScaleLow = 1e-3;
constexpr double kAnomalyThreshold = 1.0 - 1e-4;

double log_scale_factor(int n) {
  return 0.5 * n * std::log(static_cast<double>(n));
}

// Tangent-space perturbation of every row, renormalized, so the unit-vector
// constraint is preserved exactly.
VectorSystem perturb(const VectorSystem& x, double scale, Rng& rng) {
  Eigen::MatrixXd rows = x.matrix();
  const int n = x.n();
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = rows.row(i).transpose();
    Eigen::VectorXd g = rng.gaussian_vector(n);
    Eigen::VectorXd tangent = g - g.dot(v) * v;
    v += scale * tangent;
    const double norm = v.norm();
    if (norm > 1e-12) rows.row(i) = (v / norm).transpose();
  }
  return VectorSystem(std::move(rows));
}

}  // namespace

double normalized_value(const VectorSystem& x, const OracleConfig& effort) {
  const OracleResult r = sup_product(x, effort);
  return std::exp(r.log_value + log_scale_factor(x.n()));
}

ExplorerReport explore(int n, long budget, std::uint64_t seed, int threads) {
  if (n < 2 || n > 8) {
    throw InvalidConfig("explore supports 2 <= n <= 8, got n = " +
                        std::to_string(n));
  }
  if (budget < 1) {
    throw InvalidConfig("budget must be >= 1");
  }

  Rng rng(derive_seed(seed, 0));
  OracleConfig cheap;
  cheap.starts = kCheapStarts;
  cheap.seed = derive_seed(seed, 1);
  cheap.threads = threads;
  OracleConfig verify;
  verify.starts = kVerifyStarts;
  verify.seed = derive_seed(seed, 2);
  verify.threads = threads;

  const double scale_n = log_scale_factor(n);
  const auto cheap_score = [&](const VectorSystem& s) {
    return sup_product(s, cheap).log_value + scale_n;  // log v(X)
  };

  VectorSystem current = random_system(n, rng);
  double current_score = cheap_score(current);
  VectorSystem best = current;
  double best_score = current_score;

  std::vector<std::pair<long, double>> history;
  history.emplace_back(0, std::exp(best_score));

  for (long it = 1; it <= budget; ++it) {
    const double progress =
        budget > 1 ? static_cast<double>(it - 1) / (budget - 1) : 0.0;
    const double scale =
        kScaleHigh * std::pow(kScaleLow / kScaleHigh, progress);
    VectorSystem candidate = perturb(current, scale, rng);
    const double score = cheap_score(candidate);
    if (score < current_score) {
      current = std::move(candidate);
      current_score = score;
      if (score < best_score) {
        best = current;
        best_score = score;
        history.emplace_back(it, std::exp(best_score));
      }
    }
  }

  // Cheap inner maximization biases scores low; re-verify the candidate and
  // fall back to the orthonormal baseline when it does not really beat it.
  const double verified = normalized_value(best, verify);
  const double baseline = normalized_value(orthonormal_system(n), verify);
  double value = verified;
  if (baseline <= verified) {
    best = orthonormal_system(n);
    value = baseline;
  }

  ExplorerReport report{n,
                        std::move(best),
                        value,
                        budget,
                        seed,
                        std::move(history),
                        value < kAnomalyThreshold};
  return report;
}

}  // namespace polar
