#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <numbers>
#include <random>

#include "sf5/acceptance.hpp"
#include "sf5/spaceform_rep.hpp"

using namespace sf5;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix<double, 6, 6> to_eigen(const Matrix6& m) {
  Eigen::Matrix<double, 6, 6> e;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) e(r, c) = m[r][c];
  return e;
}

SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return SpherePoint::normalized({{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}}});
}

}  // namespace

TEST_CASE("rational angles") {
  CHECK(RationalAngle::of(3, 9) == RationalAngle::of(1, 3));
  CHECK(RationalAngle::of(-1, 3) == RationalAngle::of(2, 3));
  CHECK((RationalAngle::of(2, 3) + RationalAngle::of(2, 3)) == RationalAngle::of(1, 3));
  CHECK(RationalAngle::of(5, 5).is_zero());
  CHECK(RationalAngle::of(1, 7).order() == 7);
  CHECK(RationalAngle::of(6, 7).distance_to_integer() == doctest::Approx(1.0 / 7));
}

TEST_CASE("composition matches 6x6 matrix products") {
  const auto catalog = acceptance::free_rep_catalog();
  for (const auto& [name, rep] : catalog) {
    const auto& els = rep.elements();
    for (std::size_t a = 0; a < els.size(); a += 1 + els.size() / 13)
      for (std::size_t b = 0; b < els.size(); b += 1 + els.size() / 11) {
        const Eigen::Matrix<double, 6, 6> exact = to_eigen((els[a] * els[b]).matrix());
        const Eigen::Matrix<double, 6, 6> floating = to_eigen(els[a].matrix()) * to_eigen(els[b].matrix());
        INFO(name);
        CHECK((exact - floating).cwiseAbs().maxCoeff() < 1e-12);
      }
    for (std::size_t a = 0; a < els.size(); a += 1 + els.size() / 17) {
      CHECK((els[a] * els[a].inverse()).is_identity());
      const Eigen::Matrix<double, 6, 6> m = to_eigen(els[a].matrix());
      CHECK((m * m.transpose() - Eigen::Matrix<double, 6, 6>::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("representation is a homomorphism on the normal form") {
  const auto rep = build_standard_rep(7, 9, 2, 3);
  const auto& g = rep.presentation();
  for (int x = 0; x < g.order(); x += 2)
    for (int y = 0; y < g.order(); y += 3) {
      const auto gx = g.element(x), gy = g.element(y);
      CHECK(rep.element(g.multiply(gx, gy)) == rep.element(gx) * rep.element(gy));
    }
  CHECK(rep.gen_b().pow(3) == BlockRotationElement::diagonal(RationalAngle::of(1, 3), RationalAngle::of(1, 3),
                                                              RationalAngle::of(1, 3)));
}

TEST_CASE("relation failures are reported") {
  // B of order 3 * ord(c/n) must equal n
  CHECK_THROWS_AS(build_standard_rep(7, 9, 2, 1), RelationError);
  const auto p = MetacyclicPresentation::validate(7, 9, 2);
  const auto a = BlockRotationElement::diagonal(RationalAngle::of(1, 7), RationalAngle::of(1, 7), RationalAngle::of(1, 7));
  CHECK_THROWS_AS(LinearSpaceForm(p, a, BlockRotationElement{1, {}}), RelationError);
}

TEST_CASE("fixed-point rule matches the eigenvalue oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    BlockRotationElement g;
    g.shift = static_cast<int>(rng() % 3);
    const i64 den = 1 + static_cast<i64>(rng() % 12);
    for (auto& x : g.angles) x = RationalAngle::of(static_cast<i64>(rng() % 40), den);
    CHECK(has_fixed_point(g) == acceptance::eigenvalue_one_oracle(g));
  }
  for (const auto& [name, rep] : acceptance::free_rep_catalog()) {
    if (rep.order() > 500) continue;
    for (const auto& g : rep.elements()) CHECK(has_fixed_point(g) == acceptance::eigenvalue_one_oracle(g));
  }
}

TEST_CASE("freeness verdicts") {
  CHECK(is_free_representation(build_standard_rep(7, 9, 2, 3)).free);
  const auto lens = lens_rep(6, {1, 2, 1});
  const auto v = is_free_representation(lens);
  CHECK_FALSE(v.free);
  REQUIRE(v.witness);
  CHECK(has_fixed_point(lens.element(*v.witness)));
  CHECK(is_free_representation(lens_rep(7, {1, 2, 3})).free);
}

TEST_CASE("minimal displacement is exact") {
  std::mt19937_64 rng(19);
  for (const auto& [name, rep] : acceptance::free_rep_catalog()) {
    for (std::size_t k = 0; k < rep.elements().size(); k += 1 + rep.elements().size() / 9) {
      const auto& g = rep.elements()[k];
      if (g.is_identity()) continue;
      const double exact = min_displacement(g);
      CHECK(exact == doctest::Approx(acceptance::eigen_min_rotation(g)).epsilon(1e-9));
      // acos loses ~sqrt(eps) near an antipodal displacement
      for (int s = 0; s < 40; ++s) CHECK(displacement(g, random_point(rng)) >= exact - 1e-7);
    }
  }
}

TEST_CASE("distances are invariant under conjugation") {
  const auto rep = build_standard_rep(7, 9, 2, 3);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_point(rng);
    const auto& g = rep.elements()[rng() % rep.elements().size()];
    const auto& h = rep.elements()[rng() % rep.elements().size()];
    CHECK(displacement(h * g * h.inverse(), apply(h, x)) == doctest::Approx(displacement(g, x)).epsilon(1e-10));
    CHECK(injectivity_radius_at(rep, apply(h, x)) == doctest::Approx(injectivity_radius_at(rep, x)).epsilon(1e-10));
  }
}

TEST_CASE("injectivity geometry") {
  SamplerParams p;
  p.restarts = 8;
  p.max_iters = 1500;
  const auto trivial = injectivity_geometry(lens_rep(1, {1, 1, 1}), p);
  CHECK(trivial.min_injrad == doctest::Approx(kPi));
  CHECK(trivial.collapse_ratio == doctest::Approx(kPi * kPi));
  for (i64 n : {2, 5, 50}) {
    const auto g = injectivity_geometry(lens_rep(n, {1, 1, 1}), p);
    CHECK(std::abs(g.min_injrad - kPi / n) < 1e-12);
    CHECK(std::abs(g.max_injrad_estimate - kPi / n) < 1e-9);
    CHECK(g.volume == doctest::Approx(kPi * kPi * kPi / n));
  }
  CHECK_THROWS(injectivity_geometry(lens_rep(6, {1, 2, 1}), p));
}

TEST_CASE("max injectivity radius is reproducible across seeds and samplers") {
  const auto rep = build_standard_rep(7, 9, 2, 3);
  SamplerParams p;
  p.restarts = 24;
  std::vector<double> values;
  for (std::uint64_t seed : {1, 2, 3}) {
    p.seed = seed;
    p.kind = SamplerKind::uniform;
    values.push_back(injectivity_geometry(rep, p).max_injrad_estimate);
    p.kind = SamplerKind::torus_grid;
    values.push_back(injectivity_geometry(rep, p).max_injrad_estimate);
  }
  for (double v : values) CHECK(std::abs(v - values.front()) < 1e-4);
  p.seed = 1;
  p.kind = SamplerKind::uniform;
  p.threads = 1;
  const auto a = injectivity_geometry(rep, p);
  p.threads = 3;
  const auto b = injectivity_geometry(rep, p);
  CHECK(a.max_injrad_estimate == b.max_injrad_estimate);
  CHECK(a.best_restart == b.best_restart);
  CHECK(injectivity_radius_at(rep, a.max_point) == doctest::Approx(a.max_injrad_estimate).epsilon(1e-12));
}

TEST_CASE("torus invariance under the group") {
  const auto rep = build_standard_rep(7, 9, 2, 3);
  const auto w = WeightMatrix::make({{1, 1, -2}, {1, -2, 1}});
  // A is diagonal and commutes with the torus. Conjugating by B rotates the
  // coordinates, so rho(B) must carry column j of W to column j+1.
  const IntMatrix id = IntMatrix::identity(2);
  IntMatrix rho_b(2, 2);
  rho_b(0, 0) = 0;
  rho_b(0, 1) = -1;
  rho_b(1, 0) = 1;
  rho_b(1, 1) = -1;
  CHECK(verify_pi1_invariance(rep, w, id, rho_b));
  CHECK_FALSE(verify_pi1_invariance(rep, w, id, rho_b.transpose()));
  CHECK_FALSE(verify_pi1_invariance(rep, w, id, id));
}
