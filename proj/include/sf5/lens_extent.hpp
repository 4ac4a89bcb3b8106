#pragma once

/**
 * @file lens_extent.hpp
 * @brief q-extent of lens spaces L(n; k, l) = S^3 / Z_n.
 *
 * The generator acts by (z1, z2) -> (w^k z1, w^l z2), w = e^{2 pi i / n}. The
 * quotient distance is the minimum round distance over the deck orbit, and
 *
 *     xt_q(X) = C(q, 2)^-1 max sum_{i<j} d(x_i, x_j).
 *
 * Numerical maximisation gives lower bounds; the closed-form estimate in
 * extent_upper_bound gives an upper bound depending on (n, q) only.
 */

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "sf5/arith.hpp"

namespace sf5 {

struct S3Point {
  std::complex<double> z1, z2;

  static S3Point normalized(std::complex<double> z1, std::complex<double> z2);
};

class LensSpace {
 public:
  /// n >= 2 and gcd(n, k) = gcd(n, l) = 1; throws std::invalid_argument.
  static LensSpace make(i64 n, i64 k, i64 l);

  i64 n() const { return n_; }
  i64 k() const { return k_; }
  i64 l() const { return l_; }

  /// g^power applied to x.
  S3Point deck(i64 power, const S3Point& x) const;

  /// max over deck elements g of Re <x, g y>.
  double max_real_inner(const S3Point& x, const S3Point& y) const;

 private:
  LensSpace(i64 n, i64 k, i64 l);
  i64 n_, k_, l_;
  std::vector<std::complex<double>> rot1_, rot2_;  // w^{k g}, w^{l g}
};

/// Applies k -> -k, l -> -l and the swap (k, l) -> (l, k) to reach
/// 0 < k <= l < n/2; n = 2 gives (1, 1).
LensSpace canonicalize(i64 n, i64 k, i64 l);

/// Canonical (k, l) pairs for a given n.
std::vector<std::pair<i64, i64>> canonical_parameters(i64 n);

double lens_distance(const LensSpace& lens, const S3Point& x, const S3Point& y);

struct Configuration {
  std::vector<S3Point> points;
  int q() const { return static_cast<int>(points.size()); }
};

double extent_objective(const LensSpace& lens, const Configuration& config);

struct StepSchedule {
  double initial = 0.5;
  double final = 1e-5;
};

struct OptimizerParams {
  int restarts = 8;  // uniform random starts on top of the structured seeds
  int max_iters = 3000;
  std::uint64_t seed = 1;
  StepSchedule step_schedule;
  unsigned threads = 0;
};

struct OptimizerStats {
  int restarts = 0;
  int structured_seeds = 0;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
  int best_start = -1;
};

struct ExtentEstimate {
  int q = 0;
  double lower_bound = 0;
  double upper_bound = std::numeric_limits<double>::infinity();
  Configuration configuration;
  OptimizerStats optimizer_stats;
};

/// Multi-start stochastic ascent; deterministic for a given seed and
/// independent of the thread count.
ExtentEstimate optimize_extent(const LensSpace& lens, int q, const OptimizerParams& params);

/// pi / (2 (2 - 1/[(q+1)/2])).
double alpha_q(int q);

struct BoundValue {
  double value = 0;
  bool clamped = false;  // arccos argument left [-1, 1] by more than 1e-9
};

BoundValue extent_upper_bound(i64 n, int q);

struct ScanRow {
  i64 n = 0;
  double bound = 0;
  bool verdict = false;  // bound < pi/3
  double margin = 0;     // pi/3 - bound
};

struct ScanTable {
  int q = 5;
  std::vector<ScanRow> rows;
  bool holds = true;  // verdict true for every n >= 61 in range
};

ScanTable extent_bound_scan(i64 n_from, i64 n_to, int q = 5);

struct AngleSumVerdict {
  bool contradiction = false;  // link_extent_bound <= pi * C(N,3) / (N C(N-1,2))
  bool raw_inequality = false; // N C(N-1,2) b <= C(N,3) pi, floating with 1e-12 slack
  i64 ratio_num = 0, ratio_den = 0;  // C(N,3) / (N C(N-1,2)) in lowest terms
};

/// Total angle budget of N points joined pairwise: each point sees C(N-1,2)
/// angles bounded by the link extent, while the C(N,3) triangles need more
/// than pi each in positive curvature.
AngleSumVerdict angle_sum_contradiction(i64 n_points, double link_extent_bound);

}  // namespace sf5
