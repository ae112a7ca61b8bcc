#pragma once

#include <Eigen/Dense>

namespace polar {

// A problem instance: n unit vectors in R^n, kept as the rows of X.
//
// Rows whose norm is within 1e-6 of 1 are renormalized on construction (file
// sourced data carries rounding); anything further off is rejected, since
// silently accepting non-unit vectors would falsify every bound downstream.
class VectorSystem {
 public:
  explicit VectorSystem(Eigen::MatrixXd rows);

  int n() const { return static_cast<int>(x_.rows()); }
  const Eigen::MatrixXd& matrix() const { return x_; }
  Eigen::VectorXd vector(int j) const { return x_.row(j).transpose(); }

 private:
  Eigen::MatrixXd x_;
};

// Gram matrix X X^T and its spectrum. Eigenvalues are sorted ascending and
// sum to n (the vectors are unit). Eigenvalues below 1e-10 are clamped to 0
// and the system flagged rank deficient; bounds built on clamped values
// report -infinity instead of noise.
struct GramSpectrum {
  Eigen::MatrixXd gram;         // [<x_i, x_j>], in the caller's row order
  Eigen::VectorXd eigenvalues;  // ascending, clamped
  double log_det;               // sum of log eigenvalues, -inf when deficient
  bool rank_deficient;

  int n() const { return static_cast<int>(gram.rows()); }
};

GramSpectrum gram_spectrum(const VectorSystem& x);

// All bounds are natural-log values of lower bounds on
// sup_{|y|=1} |<x_1,y> ... <x_n,y>|; -infinity when the spectrum is
// degenerate. The guaranteed ordering is
//   marcus <= harmonic <= geometric <= conjecture
// (min <= harmonic mean <= geometric mean <= arithmetic mean = 1).

// (lambda_1 / n)^{n/2}
double marcus_bound(const GramSpectrum& s);

// (harmonic mean of the eigenvalues / n)^{n/2}
double harmonic_bound(const GramSpectrum& s);

// (prod_j lambda_j)^{1/2} * n^{-n/2}
double geometric_bound(const GramSpectrum& s);

// A log value paired with its linear counterpart; the linear side is 0 when
// the value is not representable above 1e-300, and +inf past the double
// range (callers serialize that case symbolically).
struct LogLinear {
  double log_value;
  double value;
};

LogLinear make_log_linear(double log_value);

struct BoundsReport {
  int n;
  Eigen::VectorXd eigenvalues;
  LogLinear marcus;
  LogLinear harmonic;
  LogLinear geometric;
  LogLinear conjecture;  // n^{-n/2}, the value an orthonormal system attains
  // Best known bracket on the n-th polarization constant of R^n, for
  // reference next to the bounds: n^{n/2} <= c_n <= 2^{n/2-1} n^{n/2}.
  LogLinear cn_lower_reference;
  LogLinear cn_upper_reference;
};

// Aggregates the three bounds plus reference constants and verifies the
// ordering invariant (to 1e-12 in log space).
BoundsReport bounds_report(const VectorSystem& x);

}  // namespace polar
