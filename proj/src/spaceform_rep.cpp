#include "sf5/spaceform_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sf5/parallel.hpp"

namespace sf5 {

namespace {

constexpr double kPi = std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

std::string describe(const BlockRotationElement& g) {
  std::ostringstream os;
  os << "shift " << g.shift << ", angles (" << g.angles[0] << ", " << g.angles[1] << ", "
     << g.angles[2] << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// BlockRotationElement

BlockRotationElement BlockRotationElement::operator*(const BlockRotationElement& rhs) const {
  BlockRotationElement out;
  out.shift = (shift + rhs.shift) % 3;
  for (int j = 0; j < 3; ++j)
    out.angles[static_cast<std::size_t>(j)] =
        angles[static_cast<std::size_t>(j)] + rhs.angles[static_cast<std::size_t>((j + shift) % 3)];
  return out;
}

BlockRotationElement BlockRotationElement::inverse() const {
  BlockRotationElement out;
  out.shift = (3 - shift) % 3;
  for (int j = 0; j < 3; ++j)
    out.angles[static_cast<std::size_t>(j)] = -angles[static_cast<std::size_t>((j + out.shift) % 3)];
  return out;
}

BlockRotationElement BlockRotationElement::pow(i64 e) const {
  BlockRotationElement base = e < 0 ? inverse() : *this;
  e = e < 0 ? -e : e;
  BlockRotationElement result;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool BlockRotationElement::is_identity() const {
  return shift == 0 && angles[0].is_zero() && angles[1].is_zero() && angles[2].is_zero();
}

Matrix6 BlockRotationElement::matrix() const {
  Matrix6 m{};
  for (int j = 0; j < 3; ++j) {
    const double t = angles[static_cast<std::size_t>(j)].radians();
    const double c = std::cos(t), s = std::sin(t);
    const auto r = static_cast<std::size_t>(2 * j);
    const auto col = static_cast<std::size_t>(2 * ((j + shift) % 3));
    m[r][col] = c;
    m[r][col + 1] = -s;
    m[r + 1][col] = s;
    m[r + 1][col + 1] = c;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Points

SpherePoint SpherePoint::normalized(std::array<std::complex<double>, 3> z) {
  double n2 = 0;
  for (const auto& c : z) n2 += std::norm(c);
  if (!(n2 > 0)) throw std::invalid_argument("SpherePoint: zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : z) c *= inv;
  return SpherePoint{z};
}

double SpherePoint::norm() const {
  double n2 = 0;
  for (const auto& c : z) n2 += std::norm(c);
  return std::sqrt(n2);
}

SpherePoint apply(const BlockRotationElement& g, const SpherePoint& x) {
  SpherePoint y;
  for (int j = 0; j < 3; ++j)
    y.z[static_cast<std::size_t>(j)] =
        std::polar(1.0, g.angles[static_cast<std::size_t>(j)].radians()) *
        x.z[static_cast<std::size_t>((j + g.shift) % 3)];
  return y;
}

double real_inner(const SpherePoint& x, const SpherePoint& y) {
  double s = 0;
  for (std::size_t j = 0; j < 3; ++j) s += (std::conj(x.z[j]) * y.z[j]).real();
  return s;
}

// ---------------------------------------------------------------------------
// LinearSpaceForm

LinearSpaceForm::LinearSpaceForm(MetacyclicPresentation presentation, BlockRotationElement gen_a,
                                 BlockRotationElement gen_b)
    : presentation_(std::move(presentation)), gen_a_(gen_a), gen_b_(gen_b) {
  const auto& p = presentation_;
  if (!gen_a_.pow(p.m()).is_identity())
    throw RelationError("relation A^m = 1 fails: A^m = " + describe(gen_a_.pow(p.m())));
  if (!gen_b_.pow(p.n()).is_identity())
    throw RelationError("relation B^n = 1 fails: B^n = " + describe(gen_b_.pow(p.n())));
  const auto lhs = gen_b_ * gen_a_ * gen_b_.inverse();
  const auto rhs = gen_a_.pow(p.r());
  if (!(lhs * rhs.inverse()).is_identity())
    throw RelationError("relation B A B^-1 A^-r = 1 fails: B A B^-1 A^-r = " +
                        describe(lhs * rhs.inverse()));
  elements_.reserve(static_cast<std::size_t>(p.order()));
  for (int idx = 0; idx < p.order(); ++idx) elements_.push_back(element(p.element(idx)));
}

BlockRotationElement LinearSpaceForm::element(GroupElement x) const {
  return gen_a_.pow(x.i) * gen_b_.pow(x.j);
}

LinearSpaceForm build_standard_rep(i64 m, i64 n, i64 r, i64 bottom_block_numerator) {
  auto p = MetacyclicPresentation::validate(m, n, r);
  const auto a = BlockRotationElement::diagonal(RationalAngle::of(1, m), RationalAngle::of(r, m),
                                                RationalAngle::of(r * r, m));
  if (n == 1) return LinearSpaceForm(std::move(p), a, BlockRotationElement::identity());
  BlockRotationElement b{1, {RationalAngle{}, RationalAngle{}, RationalAngle::of(bottom_block_numerator, n)}};
  // B^3 = D(c/n, c/n, c/n), so ord(B) = 3 * ord(c/n).
  const i64 order_b = 3 * b.angles[2].order();
  if (order_b != n) {
    std::ostringstream os;
    os << "bottom block " << bottom_block_numerator << "/" << n << " gives B of order "
       << order_b << ", expected " << n;
    throw RelationError(os.str());
  }
  return LinearSpaceForm(std::move(p), a, b);
}

LinearSpaceForm lens_rep(i64 n, const std::array<i64, 3>& weights) {
  auto p = MetacyclicPresentation::validate(n, 1, n == 1 ? 0 : 1);
  const auto a = BlockRotationElement::diagonal(RationalAngle::of(weights[0], n),
                                                RationalAngle::of(weights[1], n),
                                                RationalAngle::of(weights[2], n));
  return LinearSpaceForm(std::move(p), a, BlockRotationElement::identity());
}

// ---------------------------------------------------------------------------
// Freeness and displacement

bool has_fixed_point(const BlockRotationElement& g) {
  if (g.shift == 0)
    return std::any_of(g.angles.begin(), g.angles.end(), [](RationalAngle a) { return a.is_zero(); });
  return g.angle_sum().is_zero();
}

FreenessVerdict is_free_representation(const LinearSpaceForm& rep) {
  FreenessVerdict out;
  const auto& p = rep.presentation();
  for (int idx = 0; idx < p.order(); ++idx) {
    const auto& g = rep.elements()[static_cast<std::size_t>(idx)];
    if (!g.is_identity() && has_fixed_point(g)) {
      out.free = false;
      out.witness = p.element(idx);
      return out;
    }
  }
  return out;
}

double displacement(const BlockRotationElement& g, const SpherePoint& x) {
  return clamped_acos(real_inner(x, apply(g, x)));
}

double min_displacement(const BlockRotationElement& g) {
  // The element is unitary on C^3, so max_x <x, g x> is the largest cosine
  // of its eigen-angles.
  double best = 0.5;  // turns
  if (g.shift == 0) {
    for (const auto& a : g.angles) best = std::min(best, a.distance_to_integer());
  } else {
    const RationalAngle sum = g.angle_sum();
    for (i64 k = 0; k < 3; ++k)
      best = std::min(best, RationalAngle::of(sum.num() + k * sum.den(), 3 * sum.den()).distance_to_integer());
  }
  return 2.0 * kPi * best;
}

double injectivity_radius_at(const LinearSpaceForm& rep, const SpherePoint& x) {
  // The smallest displacement belongs to the largest cosine <x, g x>.
  double max_cos = -1.0;
  bool any = false;
  for (const auto& g : rep.elements()) {
    if (g.is_identity()) continue;
    any = true;
    max_cos = std::max(max_cos, real_inner(x, apply(g, x)));
  }
  if (!any) return kPi;
  return std::min(kPi, 0.5 * clamped_acos(max_cos));
}

namespace {

// Precomputed nontrivial elements as complex diagonal-times-shift data, so an
// objective evaluation is a handful of complex multiplies per element.
struct FastElement {
  int shift;
  std::array<std::complex<double>, 3> phase;
};

class InjradObjective {
 public:
  explicit InjradObjective(const LinearSpaceForm& rep) {
    for (const auto& g : rep.elements()) {
      if (g.is_identity()) continue;
      FastElement f{g.shift, {}};
      for (std::size_t j = 0; j < 3; ++j) f.phase[j] = std::polar(1.0, g.angles[j].radians());
      elements_.push_back(f);
    }
  }
  bool empty() const { return elements_.empty(); }
  // max over nontrivial g of <x, g x>; the injectivity radius is
  // acos(result) / 2.
  double max_cos(const std::array<std::complex<double>, 3>& x) const {
    double best = -1.0;
    for (const auto& f : elements_) {
      double s = 0;
      for (std::size_t j = 0; j < 3; ++j)
        s += (std::conj(x[j]) * f.phase[j] * x[(j + static_cast<std::size_t>(f.shift)) % 3]).real();
      best = std::max(best, s);
    }
    return best;
  }

 private:
  std::vector<FastElement> elements_;
};

using C3 = std::array<std::complex<double>, 3>;

C3 normalize(C3 z) {
  double n2 = 0;
  for (const auto& c : z) n2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : z) c *= inv;
  return z;
}

C3 uniform_point(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  C3 z;
  for (auto& c : z) c = {gauss(rng), gauss(rng)};
  return normalize(z);
}

// Start points on a product grid: moduli on a simplex grid, phases on a
// lattice of the 3-torus. Restart k picks the k-th grid node (cycling), with
// a seeded offset so different seeds visit shifted grids.
C3 torus_grid_point(int k, std::uint64_t seed) {
  constexpr int kModuli = 6, kPhases = 6;
  std::vector<std::array<int, 3>> simplex;
  for (int a = 0; a <= kModuli; ++a)
    for (int b = 0; a + b <= kModuli; ++b) simplex.push_back({a, b, kModuli - a - b});
  const int total = static_cast<int>(simplex.size()) * kPhases * kPhases;
  const int node = static_cast<int>((static_cast<std::uint64_t>(k) * 7919u + seed) % static_cast<std::uint64_t>(total));
  const auto& s = simplex[static_cast<std::size_t>(node % static_cast<int>(simplex.size()))];
  const int rest = node / static_cast<int>(simplex.size());
  const double offset = static_cast<double>(seed % 97) / 97.0;
  const double p1 = 2 * kPi * ((rest % kPhases) + offset) / kPhases;
  const double p2 = 2 * kPi * ((rest / kPhases) + offset) / kPhases;
  // Interior nudge keeps every modulus positive.
  const double eps = 0.05;
  C3 z{std::polar(std::sqrt(s[0] + eps), 0.0), std::polar(std::sqrt(s[1] + eps), p1),
       std::polar(std::sqrt(s[2] + eps), p2)};
  return normalize(z);
}

struct AscentResult {
  double max_cos = 2.0;
  C3 point{};
  std::int64_t evaluations = 0;
};

// Minimise max_cos (i.e. maximise the injectivity radius) by accept-on-
// improvement tangential proposals with a self-adjusting step.
AscentResult ascend(const InjradObjective& f, C3 x, std::mt19937_64& rng, int max_iters) {
  std::normal_distribution<double> gauss;
  AscentResult out;
  double fx = f.max_cos(x);
  double step = 0.3;
  ++out.evaluations;
  for (int it = 0; it < max_iters && step > 1e-12; ++it) {
    C3 y = x;
    double dot = 0;
    C3 d;
    for (auto& c : d) c = {gauss(rng), gauss(rng)};
    for (std::size_t j = 0; j < 3; ++j) dot += (std::conj(x[j]) * d[j]).real();
    for (std::size_t j = 0; j < 3; ++j) y[j] += step * (d[j] - dot * x[j]);
    y = normalize(y);
    const double fy = f.max_cos(y);
    ++out.evaluations;
    if (fy < fx) {
      x = y;
      fx = fy;
      step = std::min(1.0, step * 1.5);
    } else {
      step *= 0.93;
    }
  }
  out.max_cos = fx;
  out.point = x;
  return out;
}

}  // namespace

InjectivityGeometry injectivity_geometry(const LinearSpaceForm& rep, const SamplerParams& params) {
  const auto verdict = is_free_representation(rep);
  if (!verdict.free) throw std::invalid_argument("injectivity_geometry: representation is not free");
  if (params.restarts < 1 || params.max_iters < 0)
    throw std::invalid_argument("injectivity_geometry: restarts must be >= 1 and max_iters >= 0");

  InjectivityGeometry out;
  out.volume = kSphere5Volume / static_cast<double>(rep.order());
  const InjradObjective f(rep);
  if (f.empty()) {
    out.min_injrad = kPi;
    out.max_injrad_estimate = kPi;
    out.max_point = SpherePoint{{1.0, 0.0, 0.0}};
    out.collapse_ratio = out.volume / out.max_injrad_estimate;
    return out;
  }

  double min_disp = 2 * kPi;
  for (const auto& g : rep.elements())
    if (!g.is_identity()) min_disp = std::min(min_disp, min_displacement(g));
  out.min_injrad = std::min(kPi, 0.5 * min_disp);

  const unsigned threads = params.threads ? params.threads : default_thread_count();
  const auto runs = parallel_map(static_cast<std::size_t>(params.restarts), threads, [&](std::size_t k) {
    std::mt19937_64 rng(params.seed ^ static_cast<std::uint64_t>(k));
    const C3 start = params.kind == SamplerKind::uniform
                         ? uniform_point(rng)
                         : torus_grid_point(static_cast<int>(k), params.seed);
    return ascend(f, start, rng, params.max_iters);
  });
  std::size_t best = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    out.evaluations += runs[k].evaluations;
    if (runs[k].max_cos < runs[best].max_cos) best = k;
  }
  out.restarts = params.restarts;
  out.best_restart = static_cast<int>(best);
  out.max_point = SpherePoint{runs[best].point};
  out.max_injrad_estimate = std::min(kPi, 0.5 * clamped_acos(runs[best].max_cos));
  out.collapse_ratio = out.volume / out.max_injrad_estimate;
  return out;
}

// ---------------------------------------------------------------------------
// pi_1-invariance of torus actions

BlockRotationElement torus_element(const WeightMatrix& weights, const std::vector<RationalAngle>& theta) {
  BlockRotationElement out;
  for (std::size_t j = 0; j < 3; ++j) {
    RationalAngle a;
    for (std::size_t r = 0; r < weights.k(); ++r) a = a + theta[r] * weights(r, j);
    out.angles[j] = a;
  }
  return out;
}

bool verify_pi1_invariance(const LinearSpaceForm& rep, const WeightMatrix& weights,
                           const IntMatrix& rho_a, const IntMatrix& rho_b) {
  const std::size_t k = weights.k();
  for (const IntMatrix* rho : {&rho_a, &rho_b})
    if (rho->rows() != k || rho->cols() != k)
      throw std::invalid_argument("verify_pi1_invariance: holonomy must be k x k");
  // theta = e_i / q with q larger than any coefficient of g t(theta) g^-1 and
  // t(rho theta) makes the mod-1 identities equivalent to integer identities.
  i64 bound = 1;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < 3; ++j) bound += 2 * std::abs(weights(r, j));
  for (const IntMatrix* rho : {&rho_a, &rho_b}) {
    i64 rho_max = 1;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) rho_max += std::abs((*rho)(r, c));
    bound *= rho_max;
  }
  const i64 q = 2 * bound + 1;

  const std::array<std::pair<const BlockRotationElement*, const IntMatrix*>, 2> gens{
      {{&rep.gen_a(), &rho_a}, {&rep.gen_b(), &rho_b}}};
  for (const auto& [g, rho] : gens) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<RationalAngle> theta(k);
      theta[i] = RationalAngle::of(1, q);
      std::vector<RationalAngle> image(k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) image[r] = image[r] + theta[c] * (*rho)(r, c);
      const auto lhs = *g * torus_element(weights, theta) * g->inverse();
      if (!(lhs == torus_element(weights, image))) return false;
    }
  }
  return true;
}

}  // namespace sf5
