#include "polar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "polar/errors.hpp"

namespace polar {

namespace {

constexpr double kNormTol = 1e-6;
constexpr double kEigenvalueFloor = 1e-10;
constexpr double kChainTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_n(const GramSpectrum& s) {
  return std::log(static_cast<double>(s.n()));
}

}  // namespace

VectorSystem::VectorSystem(Eigen::MatrixXd rows) : x_(std::move(rows)) {
  if (x_.rows() < 1 || x_.rows() != x_.cols()) {
    throw InvalidArgument("vector system must be square (n vectors in R^n), "
                          "got " + std::to_string(x_.rows()) + " vectors of "
                          "dimension " + std::to_string(x_.cols()));
  }
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    const double norm = x_.row(i).norm();
    if (!(std::abs(norm - 1.0) <= kNormTol)) {
      throw InvalidArgument("vectors[" + std::to_string(i) + "] has norm " +
                            std::to_string(norm) +
                            "; expected a unit vector (tolerance 1e-6)");
    }
    x_.row(i) /= norm;
  }
}

GramSpectrum gram_spectrum(const VectorSystem& x) {
  const Eigen::MatrixXd& mat = x.matrix();
  const int n = x.n();

  // Eigenvalues are computed on a canonical (lexicographic) row order so that
  // permuting the input vectors cannot change any reported bound, not even in
  // the last bit.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&mat, n](int a, int b) {
    for (int c = 0; c < n; ++c) {
      if (mat(a, c) != mat(b, c)) return mat(a, c) < mat(b, c);
    }
    return false;
  });
  Eigen::MatrixXd canonical(n, n);
  for (int i = 0; i < n; ++i) canonical.row(i) = mat.row(order[i]);

  Eigen::MatrixXd gram_canonical = canonical * canonical.transpose();
  gram_canonical = ((gram_canonical + gram_canonical.transpose()) * 0.5).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram_canonical,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("symmetric eigendecomposition of the Gram matrix "
                           "did not converge");
  }

  GramSpectrum s;
  s.gram = mat * mat.transpose();
  s.gram = ((s.gram + s.gram.transpose()) * 0.5).eval();
  s.eigenvalues = solver.eigenvalues();  // ascending
  s.rank_deficient = s.eigenvalues(0) < kEigenvalueFloor;
  for (int j = 0; j < n; ++j) {
    if (s.eigenvalues(j) < kEigenvalueFloor) s.eigenvalues(j) = 0.0;
  }
  if (s.rank_deficient) {
    s.log_det = -kInf;
  } else {
    s.log_det = s.eigenvalues.array().log().sum();
  }
  return s;
}

double marcus_bound(const GramSpectrum& s) {
  const double lambda1 = s.eigenvalues(0);
  if (lambda1 <= 0.0) return -kInf;
  return 0.5 * s.n() * (std::log(lambda1) - log_n(s));
}

double harmonic_bound(const GramSpectrum& s) {
  if (s.eigenvalues(0) <= 0.0) return -kInf;
  const double sum_inv = s.eigenvalues.array().inverse().sum();
  const double harmonic_mean = s.n() / sum_inv;
  return 0.5 * s.n() * (std::log(harmonic_mean) - log_n(s));
}

double geometric_bound(const GramSpectrum& s) {
  if (s.rank_deficient) return -kInf;
  return 0.5 * (s.log_det - s.n() * log_n(s));
}

LogLinear make_log_linear(double log_value) {
  double value = std::exp(log_value);
  if (!(value > 1e-300)) value = 0.0;
  return {log_value, value};
}

BoundsReport bounds_report(const VectorSystem& x) {
  const GramSpectrum s = gram_spectrum(x);
  const int n = s.n();
  const double ln = std::log(static_cast<double>(n));

  BoundsReport r;
  r.n = n;
  r.eigenvalues = s.eigenvalues;
  r.marcus = make_log_linear(marcus_bound(s));
  r.harmonic = make_log_linear(harmonic_bound(s));
  r.geometric = make_log_linear(geometric_bound(s));
  r.conjecture = make_log_linear(-0.5 * n * ln);
  r.cn_lower_reference = make_log_linear(0.5 * n * ln);
  r.cn_upper_reference = make_log_linear((0.5 * n - 1.0) * std::log(2.0) +
                                         0.5 * n * ln);

  const double chain[4] = {r.marcus.log_value, r.harmonic.log_value,
                           r.geometric.log_value, r.conjecture.log_value};
  for (int i = 0; i + 1 < 4; ++i) {
    // -inf entries pass trivially
    if (chain[i] > chain[i + 1] + kChainTol) {
      throw NumericalFailure("bound ordering violated: entry " +
                             std::to_string(i) + " exceeds entry " +
                             std::to_string(i + 1));
    }
  }
  return r;
}

}  // namespace polar
