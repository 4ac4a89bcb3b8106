#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "sf5/group_core.hpp"

using namespace sf5;

namespace {

std::vector<MetacyclicPresentation> presentations_up_to(i64 max_order) {
  std::vector<MetacyclicPresentation> out;
  for (i64 m = 1; m <= max_order; ++m)
    for (i64 n = 1; m * n <= max_order; ++n)
      for (i64 r = 0; r < m; ++r)
        if (powmod(r, n, m) == 1 % m) out.push_back(MetacyclicPresentation::validate(m, n, r));
  return out;
}

std::vector<GroupElement> all_elements(const MetacyclicPresentation& g) {
  std::vector<GroupElement> out;
  for (int i = 0; i < g.order(); ++i) out.push_back(g.element(i));
  return out;
}

// Subgroups by brute force over every subset (|G| <= 12).
std::set<std::vector<GroupElement>> subsets_closed(const MetacyclicPresentation& g) {
  const auto els = all_elements(g);
  std::set<std::vector<GroupElement>> out;
  const int n = static_cast<int>(els.size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;  // identity has index 0
    std::vector<GroupElement> s;
    for (int b = 0; b < n; ++b)
      if (mask >> b & 1u) s.push_back(els[b]);
    bool closed = true;
    for (auto x : s)
      for (auto y : s)
        if (!(mask >> g.index(g.multiply(x, y)) & 1u)) closed = false;
    if (closed) {
      std::sort(s.begin(), s.end());
      out.insert(s);
    }
  }
  return out;
}

// Direct search for a witness presentation inside G.
bool spherical_oracle(const MetacyclicPresentation& g) {
  const auto els = all_elements(g);
  for (auto a : els) {
    const i64 ma = g.element_order(a);
    auto a_set = *generate_subgroup(g, {a});
    bool normal = true;
    for (auto x : els) normal = normal && a_set.contains(g.conjugate(x, a));
    if (!normal) continue;
    for (auto b : els) {
      const i64 nb = g.element_order(b);
      if (ma * nb != g.order() || nb % 9 != 0) continue;
      bool meet = true;
      for (i64 e = 1; e < nb && meet; ++e) meet = !a_set.contains(g.power(b, e));
      if (!meet) continue;
      const auto bab = g.conjugate(b, a);
      for (i64 r = 0; r < std::max<i64>(ma, 1); ++r)
        if (g.power(a, r) == bab && gcd(nb * (r - 1), ma) == 1 && mod(r * r + r + 1, ma) == 0) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(MetacyclicPresentation::validate(7, 3, 3), PresentationError);
  CHECK_THROWS_AS(MetacyclicPresentation::validate(0, 3, 0), PresentationError);
  CHECK_THROWS_AS(MetacyclicPresentation::validate(7, 3, 7), PresentationError);
  try {
    MetacyclicPresentation::validate(7, 3, 3);
  } catch (const PresentationError& e) {
    CHECK(std::string(e.what()).find("r^n") != std::string::npos);
  }
  const auto g = MetacyclicPresentation::validate(7, 9, 2);
  CHECK(g.order() == 63);
  CHECK(g.burnside_normalized());
  CHECK_FALSE(g.is_abelian());
}

TEST_CASE("group axioms and defining relations, |G| <= 200") {
  for (const auto& g : presentations_up_to(200)) {
    const auto a = g.generator_a(), b = g.generator_b(), e = g.identity();
    REQUIRE(g.power(a, g.m()) == e);
    REQUIRE(g.power(b, g.n()) == e);
    REQUIRE(g.multiply(g.conjugate(b, a), g.inverse(g.power(a, g.r()))) == e);
    const auto els = all_elements(g);
    for (std::size_t s = 0; s < els.size(); s += 1 + els.size() / 17) {
      const auto x = els[s];
      CHECK(g.multiply(x, g.inverse(x)) == e);
      CHECK(g.multiply(e, x) == x);
      CHECK(g.power(x, g.element_order(x)) == e);
      for (std::size_t t = 0; t < els.size(); t += 1 + els.size() / 11)
        for (std::size_t u = 0; u < els.size(); u += 1 + els.size() / 7) {
          const auto y = els[t], z = els[u];
          CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
        }
    }
    for (int i = 0; i < g.order(); ++i) REQUIRE(g.index(g.element(i)) == i);
  }
}

TEST_CASE("subgroup enumeration matches brute force on small groups") {
  const auto s3 = MetacyclicPresentation::validate(3, 2, 2);
  CHECK(enumerate_subgroups(s3).size() == 6);
  for (const auto& g : presentations_up_to(12)) {
    std::set<std::vector<GroupElement>> ours;
    for (const auto& h : enumerate_subgroups(g)) ours.insert(h.elements);
    CHECK_MESSAGE(ours == subsets_closed(g), "m=" << g.m() << " n=" << g.n() << " r=" << g.r());
  }
}

TEST_CASE("closing pairs of cyclic subgroups already gives every subgroup") {
  for (const auto& g : presentations_up_to(48)) {
    const auto subs = enumerate_subgroups(g);
    std::set<std::vector<GroupElement>> pairs;
    for (const auto& h : subs) pairs.insert(h.elements);
    const auto cyc = cyclic_subgroups(g);
    for (const auto& h : subs)
      for (const auto& c : cyc) {
        std::vector<GroupElement> gens = h.generators;
        gens.insert(gens.end(), c.generators.begin(), c.generators.end());
        CHECK(pairs.count(generate_subgroup(g, gens)->elements) == 1);
      }
  }
}

TEST_CASE("is_cyclic agrees with element orders") {
  for (const auto& g : presentations_up_to(150)) {
    bool has_generator = false;
    for (int i = 0; i < g.order() && !has_generator; ++i) has_generator = g.element_order(g.element(i)) == g.order();
    CHECK(is_cyclic(g) == has_generator);
  }
}

TEST_CASE("predicates agree with full subgroup enumeration") {
  for (const auto& g : presentations_up_to(120)) {
    if (is_cyclic(g)) continue;
    const auto subs = enumerate_subgroups(g);
    bool c3p = true, c2p = true, sylow = true;
    for (const auto& h : subs) {
      const i64 o = h.order();
      if (o % 3 == 0 && is_prime(o / 3) && !is_cyclic(g, h)) c3p = false;
      if (o % 2 == 0 && is_prime(o / 2) && !is_cyclic(g, h)) c2p = false;
    }
    for (i64 p : prime_divisors(g.order())) {
      const i64 sp = prime_part(g.order(), p);
      for (const auto& h : subs)
        if (h.order() == sp && !is_cyclic(g, h)) sylow = false;
    }
    bool idx3 = false;
    for (const auto& h : subs)
      if (h.order() * 3 == g.order() && is_cyclic(g, h) && is_normal(g, h)) idx3 = true;
    INFO("m=" << g.m() << " n=" << g.n() << " r=" << g.r());
    CHECK(condition_3p(g) == c3p);
    const auto pq = pq_conditions(g);
    CHECK(pq.cond_2p == c2p);
    CHECK(pq.sylow_cyclic == sylow);
    CHECK(has_index3_normal_cyclic(g) == idx3);
    CHECK(normal_cyclic_subgroups(g).has_index3_normal_cyclic == idx3);
  }
}

TEST_CASE("spherical predicate agrees with direct witness search") {
  for (const auto& g : presentations_up_to(90)) {
    if (is_cyclic(g)) {
      CHECK(is_spherical_5_space_group(g).verdict);
      continue;
    }
    const auto v = is_spherical_5_space_group(g);
    INFO("m=" << g.m() << " n=" << g.n() << " r=" << g.r());
    CHECK(v.verdict == spherical_oracle(g));
    if (v.witness) {
      CHECK(v.witness->n % 9 == 0);
      CHECK(g.element_order(v.witness->a) == v.witness->m);
      CHECK(g.element_order(v.witness->b) == v.witness->n);
      CHECK(g.conjugate(v.witness->b, v.witness->a) == g.power(v.witness->a, v.witness->r));
    }
  }
  CHECK(is_spherical_5_space_group(MetacyclicPresentation::validate(7, 9, 2)).verdict);
  CHECK_FALSE(is_spherical_5_space_group(MetacyclicPresentation::validate(7, 3, 2)).verdict);
}

TEST_CASE("center of Gamma(7,9,2)") {
  const auto g = MetacyclicPresentation::validate(7, 9, 2);
  const auto rep = center_and_semicenter(g);
  CHECK(rep.center.elements == std::vector<GroupElement>{{0, 0}, {0, 3}, {0, 6}});
  for (const auto& s : rep.semicenters) CHECK(is_abelian(g, s));
}

TEST_CASE("center matches brute force") {
  for (const auto& g : presentations_up_to(100)) {
    std::vector<GroupElement> z;
    const auto els = all_elements(g);
    for (auto x : els)
      if (std::all_of(els.begin(), els.end(), [&](GroupElement y) { return g.commute(x, y); })) z.push_back(x);
    std::sort(z.begin(), z.end());
    CHECK(center_and_semicenter(g).center.elements == z);
  }
}

TEST_CASE("abelianization closed form Z_gcd(m, r-1) + Z_n") {
  for (const auto& g : presentations_up_to(200)) {
    // Invariant factors of Z_a + Z_b are (gcd, lcm) with trivial ones dropped.
    const i64 a = gcd(g.m(), g.r() - 1), b = g.n();
    std::vector<i64> expected;
    const i64 lo = gcd(a, b), hi = a / lo * b;
    if (lo > 1) expected.push_back(lo);
    if (hi > 1) expected.push_back(hi);
    INFO("m=" << g.m() << " n=" << g.n() << " r=" << g.r());
    CHECK(abelianization(g) == expected);
  }
  CHECK(abelianization(MetacyclicPresentation::validate(7, 9, 2)) == std::vector<i64>{9});
}

TEST_CASE("power automorphisms") {
  const auto g = MetacyclicPresentation::validate(7, 9, 2);
  const auto phi = power_automorphism(g, 3, 1);
  CHECK(phi.order == 6);
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); j += 5) {
      const auto x = g.element(i), y = g.element(j);
      CHECK(phi.apply(g, g.multiply(x, y)) == g.multiply(phi.apply(g, x), phi.apply(g, y)));
    }
  CHECK_THROWS_AS(power_automorphism(g, 7, 1), AutomorphismError);
  CHECK_THROWS_AS(power_automorphism(g, 1, 3), AutomorphismError);
}

TEST_CASE("invariants are preserved by isomorphism") {
  // Gamma(7,9,2) and Gamma(7,9,4) differ by B -> B^2.
  const auto g = MetacyclicPresentation::validate(7, 9, 2);
  const auto h = MetacyclicPresentation::validate(7, 9, 4);
  CHECK(are_isomorphic(g, h));
  CHECK(abelianization(g) == abelianization(h));
  CHECK(is_spherical_5_space_group(g).verdict == is_spherical_5_space_group(h).verdict);
  CHECK(condition_3p(g) == condition_3p(h));
  CHECK_FALSE(are_isomorphic(g, MetacyclicPresentation::validate(63, 1, 1)));
  CHECK_FALSE(are_isomorphic(MetacyclicPresentation::validate(7, 3, 2), MetacyclicPresentation::validate(21, 1, 1)));
  for (const auto& p : presentations_up_to(40))
    for (const auto& q : presentations_up_to(40)) {
      if (p.order() != q.order() || !are_isomorphic(p, q)) continue;
      CHECK(abelianization(p) == abelianization(q));
      CHECK(is_cyclic(p) == is_cyclic(q));
      CHECK(enumerate_subgroups(p).size() == enumerate_subgroups(q).size());
    }
}

TEST_CASE("harness on small caps") {
  const auto r1 = spherical_harness(1, 1);
  CHECK(r1.presentations == 1);
  CHECK(r1.passed());
  const auto r21 = spherical_harness(21, 1);
  CHECK(r21.passed());
  CHECK(r21.hypotheses_hold == 0);
  const auto r63 = spherical_harness(63, 2);
  CHECK(r63.passed());
  CHECK(r63.hypotheses_hold >= 1);
  CHECK(r63.isomorphism_classes >= 1);
  const auto r63b = spherical_harness(63, 1);
  CHECK(r63b.hypotheses_hold == r63.hypotheses_hold);
  CHECK(r63b.isomorphism_classes == r63.isomorphism_classes);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(enumerate_subgroups(MetacyclicPresentation::validate(101, 100, 1), 10'000), SizeError);
}
