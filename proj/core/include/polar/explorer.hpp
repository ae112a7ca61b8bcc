#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polar/oracle.hpp"
#include "polar/spectrum.hpp"

namespace polar {

// Searches over unit-vector configurations for small normalized values
// v(X) = sup_product(X) * n^{n/2}. An orthonormal system attains exactly 1;
// a verified value below 1 would contradict the conjectured extremal value
// and is flagged, never silently recorded.

struct ExplorerReport {
  int n;
  VectorSystem best_system;
  double normalized_value;  // re-verified with high oracle effort
  long iterations;
  std::uint64_t seed;
  // best-so-far cheap scores, recorded at each improvement as
  // (iteration, normalized value)
  std::vector<std::pair<long, double>> history;
  bool anomaly;  // normalized_value < 1 - 1e-4 after re-verification
};

// sup_product scaled by n^{n/2}, in log space internally, returned linear.
double normalized_value(const VectorSystem& x, const OracleConfig& effort);

// Annealed stochastic descent over configurations: random tangent
// perturbations of every vector (scale 0.3 down to 1e-3 across the budget),
// scored with a cheap 8-start oracle, kept when lower. The best candidate is
// re-verified with a 128-start oracle and compared against the orthonormal
// baseline, which guarantees a returned value <= 1 + 1e-6 unless something
// anomalous survives re-verification.
//
// Deterministic for fixed (n, budget, seed). Throws InvalidConfig for
// n outside [2, 8] or budget < 1.
ExplorerReport explore(int n, long budget, std::uint64_t seed,
                       int threads = 1);

}  // namespace polar
