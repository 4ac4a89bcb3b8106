#include "sf5/lens_extent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sf5/parallel.hpp"

namespace sf5 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAcosSlack = 1e-9;

using cd = std::complex<double>;

// Orthonormal tangent frame at x in S^3 = unit quaternions: x*i, x*j, x*k.
// With x = a + b i + c j + d k stored as z1 = a + b i, z2 = c + d i.
std::array<S3Point, 3> tangent_frame(const S3Point& x) {
  const double a = x.z1.real(), b = x.z1.imag(), c = x.z2.real(), d = x.z2.imag();
  return {S3Point{{-b, a}, {d, -c}}, S3Point{{-c, -d}, {a, b}}, S3Point{{-d, c}, {-b, a}}};
}

S3Point step_along(const S3Point& x, const S3Point& dir, double h) {
  return S3Point::normalized(x.z1 + h * dir.z1, x.z2 + h * dir.z2);
}

S3Point uniform_point(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  return S3Point::normalized({gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)});
}

// Symmetric starting configurations: orthogonal frames, a real great circle,
// and a Hopf-twisted circle.
constexpr int kStructuredSeeds = 3;

Configuration structured_seed(int which, int q) {
  Configuration c;
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<S3Point> frame{{{1, 0}, {0, 0}},  {{0, 0}, {1, 0}},  {{s, 0}, {s, 0}},
                                   {{s, 0}, {0, s}},  {{s, 0}, {-s, 0}}, {{s, 0}, {0, -s}},
                                   {{0, 1}, {0, 0}},  {{0, 0}, {0, 1}}};
  for (int j = 0; j < q; ++j) {
    const double t = kPi * j / q;
    switch (which) {
      case 0:
        if (j < static_cast<int>(frame.size())) {
          c.points.push_back(frame[static_cast<std::size_t>(j)]);
        } else {
          c.points.push_back(S3Point::normalized({std::cos(t), 0.1 * j}, {std::sin(t), 0}));
        }
        break;
      case 1:
        c.points.push_back(S3Point::normalized({std::cos(t), 0}, {std::sin(t), 0}));
        break;
      default:
        c.points.push_back(S3Point::normalized(std::polar(std::cos(t / 2), t), std::polar(std::sin(t / 2) + 0.3, -t)));
        break;
    }
  }
  return c;
}

class PairTable {
 public:
  PairTable(const LensSpace& lens, const Configuration& c) : lens_(lens), q_(c.points.size()) {
    d_.assign(q_ * q_, 0.0);
    for (std::size_t i = 0; i < q_; ++i)
      for (std::size_t j = i + 1; j < q_; ++j)
        set(i, j, lens_distance(lens_, c.points[i], c.points[j]));
  }
  double total() const {
    double s = 0;
    for (std::size_t i = 0; i < q_; ++i)
      for (std::size_t j = i + 1; j < q_; ++j) s += d_[i * q_ + j];
    return s;
  }
  double row_sum(std::size_t i) const {
    double s = 0;
    for (std::size_t j = 0; j < q_; ++j) s += d_[i * q_ + j];
    return s;
  }
  // Row of distances if point i moves to y; returns the new row sum.
  double trial(const Configuration& c, std::size_t i, const S3Point& y, std::vector<double>& row) const {
    double s = 0;
    row.assign(q_, 0.0);
    for (std::size_t j = 0; j < q_; ++j) {
      if (j == i) continue;
      row[j] = lens_distance(lens_, y, c.points[j]);
      s += row[j];
    }
    return s;
  }
  void commit(std::size_t i, const std::vector<double>& row) {
    for (std::size_t j = 0; j < q_; ++j)
      if (j != i) set(i, j, row[j]);
  }

 private:
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * q_ + j] = v;
    d_[j * q_ + i] = v;
  }
  const LensSpace& lens_;
  std::size_t q_;
  std::vector<double> d_;
};

struct RunResult {
  Configuration config;
  double sum = 0;
  std::int64_t iterations = 0;
};

RunResult run_ascent(const LensSpace& lens, Configuration c, std::mt19937_64& rng,
                     const OptimizerParams& params) {
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::size_t> pick(0, c.points.size() - 1);
  PairTable table(lens, c);
  std::vector<double> row;
  RunResult out;
  const double ratio = params.step_schedule.final / params.step_schedule.initial;
  for (int it = 0; it < params.max_iters; ++it) {
    const double step =
        params.step_schedule.initial * std::pow(ratio, static_cast<double>(it) / std::max(1, params.max_iters - 1));
    const std::size_t i = pick(rng);
    const auto frame = tangent_frame(c.points[i]);
    const double g0 = gauss(rng), g1 = gauss(rng), g2 = gauss(rng);
    const S3Point dir{g0 * frame[0].z1 + g1 * frame[1].z1 + g2 * frame[2].z1,
                      g0 * frame[0].z2 + g1 * frame[1].z2 + g2 * frame[2].z2};
    const S3Point y = step_along(c.points[i], dir, step);
    const double before = table.row_sum(i);
    const double after = table.trial(c, i, y, row);
    ++out.iterations;
    if (after > before) {
      c.points[i] = y;
      table.commit(i, row);
    }
  }
  // Coordinate-wise polish along the tangent frame with a halving step.
  for (double h = params.step_schedule.final * 16; h > 1e-10; h *= 0.5) {
    bool improved = true;
    for (int sweep = 0; improved && sweep < 50; ++sweep) {
      improved = false;
      for (std::size_t i = 0; i < c.points.size(); ++i) {
        for (const auto& dir : tangent_frame(c.points[i])) {
          for (double sign : {1.0, -1.0}) {
            const S3Point y = step_along(c.points[i], dir, sign * h);
            const double before = table.row_sum(i);
            const double after = table.trial(c, i, y, row);
            ++out.iterations;
            if (after > before) {
              c.points[i] = y;
              table.commit(i, row);
              improved = true;
            }
          }
        }
      }
    }
  }
  out.sum = table.total();
  out.config = std::move(c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

S3Point S3Point::normalized(std::complex<double> z1, std::complex<double> z2) {
  const double n = std::sqrt(std::norm(z1) + std::norm(z2));
  if (!(n > 0)) throw std::invalid_argument("S3Point: zero vector");
  return {z1 / n, z2 / n};
}

LensSpace::LensSpace(i64 n, i64 k, i64 l) : n_(n), k_(k), l_(l) {
  rot1_.reserve(static_cast<std::size_t>(n));
  rot2_.reserve(static_cast<std::size_t>(n));
  for (i64 g = 0; g < n; ++g) {
    rot1_.push_back(std::polar(1.0, 2 * kPi * static_cast<double>(mod(k * g, n)) / static_cast<double>(n)));
    rot2_.push_back(std::polar(1.0, 2 * kPi * static_cast<double>(mod(l * g, n)) / static_cast<double>(n)));
  }
}

LensSpace LensSpace::make(i64 n, i64 k, i64 l) {
  if (n < 2) throw std::invalid_argument("lens space: n must be >= 2");
  if (gcd(n, k) != 1 || gcd(n, l) != 1)
    throw std::invalid_argument("lens space: k and l must be coprime to n");
  return LensSpace(n, mod(k, n), mod(l, n));
}

S3Point LensSpace::deck(i64 power, const S3Point& x) const {
  const auto g = static_cast<std::size_t>(mod(power, n_));
  return {rot1_[g] * x.z1, rot2_[g] * x.z2};
}

double LensSpace::max_real_inner(const S3Point& x, const S3Point& y) const {
  const cd u = std::conj(x.z1) * y.z1;
  const cd v = std::conj(x.z2) * y.z2;
  double best = -2.0;
  for (std::size_t g = 0; g < rot1_.size(); ++g) {
    const double c = u.real() * rot1_[g].real() - u.imag() * rot1_[g].imag() +
                     v.real() * rot2_[g].real() - v.imag() * rot2_[g].imag();
    best = std::max(best, c);
  }
  return best;
}

LensSpace canonicalize(i64 n, i64 k, i64 l) {
  const LensSpace checked = LensSpace::make(n, k, l);
  if (n == 2) return LensSpace::make(2, 1, 1);
  i64 a = std::min(checked.k(), n - checked.k());
  i64 b = std::min(checked.l(), n - checked.l());
  if (a > b) std::swap(a, b);
  return LensSpace::make(n, a, b);
}

std::vector<std::pair<i64, i64>> canonical_parameters(i64 n) {
  if (n == 2) return {{1, 1}};
  std::vector<std::pair<i64, i64>> out;
  for (i64 k = 1; 2 * k < n; ++k)
    for (i64 l = k; 2 * l < n; ++l)
      if (gcd(k, n) == 1 && gcd(l, n) == 1) out.emplace_back(k, l);
  return out;
}

double lens_distance(const LensSpace& lens, const S3Point& x, const S3Point& y) {
  const double c = lens.max_real_inner(x, y);
  if (c > 1 + kAcosSlack) throw std::domain_error("lens_distance: inputs are not unit points");
  return std::acos(std::min(1.0, c));
}

double extent_objective(const LensSpace& lens, const Configuration& config) {
  const std::size_t q = config.points.size();
  if (q < 2) throw std::invalid_argument("extent_objective: need at least two points");
  double s = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) s += lens_distance(lens, config.points[i], config.points[j]);
  return s / static_cast<double>(binomial(static_cast<i64>(q), 2));
}

ExtentEstimate optimize_extent(const LensSpace& lens, int q, const OptimizerParams& params) {
  if (q < 2) throw std::invalid_argument("optimize_extent: q must be >= 2");
  if (params.restarts < 0 || params.max_iters < 0)
    throw std::invalid_argument("optimize_extent: restarts and max_iters must be >= 0");
  if (!(params.step_schedule.initial > 0) || !(params.step_schedule.final > 0) ||
      params.step_schedule.final > params.step_schedule.initial)
    throw std::invalid_argument("optimize_extent: need 0 < final step <= initial step");

  const int starts = kStructuredSeeds + params.restarts;
  const unsigned threads = params.threads ? params.threads : default_thread_count();
  const auto runs = parallel_map(static_cast<std::size_t>(starts), threads, [&](std::size_t s) {
    std::mt19937_64 rng(params.seed ^ static_cast<std::uint64_t>(s));
    Configuration c;
    if (s < kStructuredSeeds) {
      c = structured_seed(static_cast<int>(s), q);
    } else {
      for (int j = 0; j < q; ++j) c.points.push_back(uniform_point(rng));
    }
    return run_ascent(lens, std::move(c), rng, params);
  });

  std::size_t best = 0;
  ExtentEstimate out;
  out.q = q;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    out.optimizer_stats.iterations += runs[s].iterations;
    if (runs[s].sum > runs[best].sum) best = s;
  }
  out.configuration = runs[best].config;
  out.lower_bound = extent_objective(lens, out.configuration);
  out.upper_bound = extent_upper_bound(lens.n(), q).value;
  out.optimizer_stats.restarts = params.restarts;
  out.optimizer_stats.structured_seeds = kStructuredSeeds;
  out.optimizer_stats.seed = params.seed;
  out.optimizer_stats.best_start = static_cast<int>(best);
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form bound

double alpha_q(int q) {
  if (q < 2) throw std::invalid_argument("alpha_q: q must be >= 2");
  const double half = static_cast<double>((q + 1) / 2);
  return kPi / (2.0 * (2.0 - 1.0 / half));
}

BoundValue extent_upper_bound(i64 n, int q) {
  if (n < 2) throw std::invalid_argument("extent_upper_bound: n must be >= 2");
  const double a = alpha_q(q);
  const double nd = static_cast<double>(n);
  const double root_n = std::sqrt(nd);
  const double c_sqrt = std::cos(kPi / root_n);
  const double c_n = std::cos(kPi / nd);
  const double gap = root_n * std::sin(kPi / nd) - std::sin(kPi / root_n);
  const double sa = std::sin(a);
  const double arg = std::cos(a) * c_sqrt -
                     0.5 * std::sqrt((c_sqrt - c_n) * (c_sqrt - c_n) + sa * sa * gap * gap);
  BoundValue out;
  out.clamped = arg > 1 + kAcosSlack || arg < -1 - kAcosSlack;
  out.value = std::acos(std::clamp(arg, -1.0, 1.0));
  return out;
}

ScanTable extent_bound_scan(i64 n_from, i64 n_to, int q) {
  if (n_from < 2 || n_to < n_from) throw std::invalid_argument("scan: need 2 <= from <= to");
  ScanTable out;
  out.q = q;
  out.rows.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (i64 n = n_from; n <= n_to; ++n) {
    const double b = extent_upper_bound(n, q).value;
    ScanRow row{n, b, b < kPi / 3, kPi / 3 - b};
    if (n >= 61 && !row.verdict) out.holds = false;
    out.rows.push_back(row);
  }
  return out;
}

AngleSumVerdict angle_sum_contradiction(i64 n_points, double link_extent_bound) {
  if (n_points < 3) throw std::invalid_argument("angle_sum_contradiction: N must be >= 3");
  if (!(link_extent_bound > 0) || link_extent_bound > kPi)
    throw std::invalid_argument("angle_sum_contradiction: bound must lie in (0, pi]");
  const i64 triangles = binomial(n_points, 3);
  const i64 angles = n_points * binomial(n_points - 1, 2);
  const i64 g = gcd(triangles, angles);
  AngleSumVerdict out;
  out.ratio_num = triangles / g;
  out.ratio_den = angles / g;
  const double threshold = kPi * static_cast<double>(out.ratio_num) / static_cast<double>(out.ratio_den);
  out.contradiction = link_extent_bound <= threshold;
  const double lhs = static_cast<double>(angles) * link_extent_bound;
  const double rhs = static_cast<double>(triangles) * kPi;
  out.raw_inequality = lhs <= rhs * (1 + 1e-12);
  return out;
}

}  // namespace sf5
