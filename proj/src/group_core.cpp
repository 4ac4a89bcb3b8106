#include "sf5/group_core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "sf5/parallel.hpp"

namespace sf5 {

namespace {

// Hard limit on stored presentations so element indices fit in an int.
constexpr i64 kMaxRepresentableOrder = 100'000'000;

std::string describe(GroupElement x) {
  std::ostringstream os;
  os << "(" << x.i << "," << x.j << ")";
  return os.str();
}

// Reusable membership scratch: marks[idx] == stamp means "in the current set".
class Marker {
 public:
  explicit Marker(i64 size) : marks_(static_cast<std::size_t>(size), 0) {}
  void reset() {
    if (++stamp_ == 0) {
      std::fill(marks_.begin(), marks_.end(), 0);
      stamp_ = 1;
    }
  }
  bool test(int idx) const { return marks_[static_cast<std::size_t>(idx)] == stamp_; }
  void set(int idx) { marks_[static_cast<std::size_t>(idx)] = stamp_; }

 private:
  std::vector<unsigned> marks_;
  unsigned stamp_ = 0;
};

// Closure of a generator list into `out` (element indices, unsorted). Returns
// false when the closure exceeds `cap` (cap < 0 means unbounded).
bool close_indices(const MetacyclicPresentation& g, const std::vector<GroupElement>& gens,
                   i64 cap, Marker& marker, std::vector<int>& out) {
  marker.reset();
  out.clear();
  const int e = g.index(g.identity());
  marker.set(e);
  out.push_back(e);
  for (std::size_t head = 0; head < out.size(); ++head) {
    const GroupElement x = g.element(out[head]);
    for (const GroupElement& s : gens) {
      const int y = g.index(g.multiply(x, s));
      if (!marker.test(y)) {
        marker.set(y);
        out.push_back(y);
        if (cap >= 0 && static_cast<i64>(out.size()) > cap) return false;
      }
    }
  }
  return true;
}

Subgroup make_subgroup(const MetacyclicPresentation& g, std::vector<GroupElement> gens,
                       const std::vector<int>& indices) {
  Subgroup h;
  h.generators = std::move(gens);
  h.elements.reserve(indices.size());
  for (int idx : indices) h.elements.push_back(g.element(idx));
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements < b.elements;
}

// One generator for each cyclic subgroup whose order is exactly `order`.
std::vector<GroupElement> cyclic_generators_of_order(const MetacyclicPresentation& g,
                                                     i64 order) {
  std::vector<GroupElement> out;
  if (g.order() % order != 0) return out;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (int idx = 0; idx < g.order(); ++idx) {
    if (seen[static_cast<std::size_t>(idx)]) continue;
    const GroupElement x = g.element(idx);
    if (g.element_order(x) != order) continue;
    out.push_back(x);
    GroupElement y = x;
    for (i64 k = 1; k <= order; ++k) {
      if (gcd(k, order) == 1) seen[static_cast<std::size_t>(g.index(y))] = 1;
      y = g.multiply(y, x);
    }
  }
  return out;
}

// Every subgroup of order p*q (p, q prime) is cyclic. A noncyclic group of
// order pq is generated by a subgroup of order p and one of order q, so it is
// enough to close those pairs with the closure capped at pq.
bool all_order_pq_cyclic(const MetacyclicPresentation& g, i64 p, i64 q) {
  const i64 target = p * q;
  if (g.order() % target != 0) return true;
  const auto ps = cyclic_generators_of_order(g, p);
  const auto qs = p == q ? ps : cyclic_generators_of_order(g, q);
  Marker marker(g.order());
  std::vector<int> buf;
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t b = (p == q ? a + 1 : 0); b < qs.size(); ++b) {
      if (!close_indices(g, {ps[a], qs[b]}, target, marker, buf)) continue;
      if (static_cast<i64>(buf.size()) != target) continue;
      const bool cyclic = std::any_of(buf.begin(), buf.end(), [&](int idx) {
        return g.element_order(g.element(idx)) == target;
      });
      if (!cyclic) return false;
    }
  }
  return true;
}

// Sorted element indices of <x>.
std::vector<int> cyclic_span(const MetacyclicPresentation& g, GroupElement x) {
  std::vector<int> out;
  GroupElement y = g.identity();
  do {
    out.push_back(g.index(y));
    y = g.multiply(y, x);
  } while (y != g.identity());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MetacyclicPresentation

MetacyclicPresentation::MetacyclicPresentation(i64 m, i64 n, i64 r) : m_(m), n_(n), r_(r) {
  rpow_.resize(static_cast<std::size_t>(n));
  i64 p = 1 % m;
  for (i64 j = 0; j < n; ++j) {
    rpow_[static_cast<std::size_t>(j)] = p;
    p = mulmod(p, r, m);
  }
  burnside_ = gcd(((r - 1) % m) * n % m, m) == 1 || m == 1;
}

MetacyclicPresentation MetacyclicPresentation::validate(i64 m, i64 n, i64 r) {
  if (m < 1 || n < 1) throw PresentationError("m and n must be positive");
  if (r < 0 || r >= m) throw PresentationError("r must satisfy 0 <= r < m");
  if (m > kMaxRepresentableOrder / n) throw SizeError("group order m*n is too large");
  const i64 rn = powmod(r, n, m);
  if (rn != 1 % m) {
    std::ostringstream os;
    os << "inconsistent relation: r^n = " << r << "^" << n << " = " << rn << " (mod " << m
       << "), expected 1";
    throw PresentationError(os.str());
  }
  return MetacyclicPresentation(m, n, r);
}

GroupElement MetacyclicPresentation::inverse(GroupElement x) const {
  const i64 j = (n_ - x.j) % n_;
  return {mod(-rpow_[static_cast<std::size_t>(j)] * x.i, m_), j};
}

GroupElement MetacyclicPresentation::power(GroupElement x, i64 e) const {
  if (e < 0) {
    x = inverse(x);
    e = -e;
  }
  GroupElement result = identity();
  while (e > 0) {
    if (e & 1) result = multiply(result, x);
    x = multiply(x, x);
    e >>= 1;
  }
  return result;
}

i64 MetacyclicPresentation::element_order(GroupElement x) const {
  const i64 d = n_ / gcd(x.j, n_);
  const GroupElement y = power(x, d);
  return d * (m_ / gcd(y.i, m_));
}

// ---------------------------------------------------------------------------
// Subgroups

bool Subgroup::contains(GroupElement x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

std::optional<Subgroup> generate_subgroup(const MetacyclicPresentation& g,
                                          const std::vector<GroupElement>& generators,
                                          i64 cap) {
  Marker marker(g.order());
  std::vector<int> buf;
  if (!close_indices(g, generators, cap, marker, buf)) return std::nullopt;
  return make_subgroup(g, generators, buf);
}

std::vector<Subgroup> cyclic_subgroups(const MetacyclicPresentation& g) {
  std::vector<Subgroup> out;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (int idx = 0; idx < g.order(); ++idx) {
    if (seen[static_cast<std::size_t>(idx)]) continue;
    const GroupElement x = g.element(idx);
    const auto span = cyclic_span(g, x);
    const i64 ord = static_cast<i64>(span.size());
    for (i64 k = 0; k < ord; ++k)
      if (gcd(k, ord) == 1) seen[static_cast<std::size_t>(span[static_cast<std::size_t>(k)])] = 1;
    std::vector<GroupElement> gens;
    if (ord > 1) gens.push_back(x);
    out.push_back(make_subgroup(g, std::move(gens), span));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<Subgroup> enumerate_subgroups(const MetacyclicPresentation& g, i64 order_cap) {
  if (g.order() > order_cap) {
    std::ostringstream os;
    os << "group order " << g.order() << " exceeds the enumeration cap " << order_cap;
    throw SizeError(os.str());
  }
  const auto cyclic = cyclic_subgroups(g);
  std::set<std::vector<GroupElement>> seen;
  std::vector<Subgroup> out;
  for (const auto& c : cyclic) {
    seen.insert(c.elements);
    out.push_back(c);
  }
  Marker marker(g.order());
  std::vector<int> buf;
  for (std::size_t a = 1; a < cyclic.size(); ++a) {
    const GroupElement x = cyclic[a].generators.front();
    for (std::size_t b = a + 1; b < cyclic.size(); ++b) {
      const GroupElement y = cyclic[b].generators.front();
      if (cyclic[b].contains(x)) continue;  // <x, y> = <y>
      close_indices(g, {x, y}, -1, marker, buf);
      Subgroup h = make_subgroup(g, {x, y}, buf);
      if (seen.insert(h.elements).second) out.push_back(std::move(h));
    }
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

bool is_cyclic(const MetacyclicPresentation& g) {
  if (!g.is_abelian()) return false;
  return gcd(g.m(), g.n()) == 1;
}

bool is_cyclic(const MetacyclicPresentation& g, const Subgroup& h) {
  return std::any_of(h.elements.begin(), h.elements.end(),
                     [&](GroupElement x) { return g.element_order(x) == h.order(); });
}

bool is_abelian(const MetacyclicPresentation& g, const Subgroup& h) {
  for (std::size_t a = 0; a < h.generators.size(); ++a)
    for (std::size_t b = a + 1; b < h.generators.size(); ++b)
      if (!g.commute(h.generators[a], h.generators[b])) return false;
  return true;
}

bool is_normal(const MetacyclicPresentation& g, const Subgroup& h) {
  for (GroupElement s : {g.generator_a(), g.generator_b()})
    for (GroupElement x : h.generators)
      if (!h.contains(g.conjugate(s, x))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Center and semi-centers

CenterReport center_and_semicenter(const MetacyclicPresentation& g, i64 order_cap) {
  CenterReport report;
  std::vector<GroupElement> central;
  for (int idx = 0; idx < g.order(); ++idx) {
    const GroupElement x = g.element(idx);
    if (g.commute(x, g.generator_a()) && g.commute(x, g.generator_b())) central.push_back(x);
  }
  std::sort(central.begin(), central.end());
  report.center.elements = central;
  // The center of a metacyclic group is generated by at most two elements;
  // record a small generating set found greedily.
  {
    std::vector<GroupElement> gens;
    i64 size = 1;
    for (GroupElement x : central) {
      if (size == static_cast<i64>(central.size())) break;
      auto h = generate_subgroup(g, gens);
      if (h->contains(x)) continue;
      gens.push_back(x);
      size = generate_subgroup(g, gens)->order();
    }
    report.center.generators = gens;
  }

  i64 best = 0;
  for (const auto& h : enumerate_subgroups(g, order_cap)) {
    if (!is_abelian(g, h)) continue;
    i64 centralizer = 0;
    for (int idx = 0; idx < g.order(); ++idx) {
      const GroupElement x = g.element(idx);
      bool ok = true;
      for (GroupElement s : h.generators) ok = ok && g.commute(x, s);
      centralizer += ok ? 1 : 0;
    }
    if (g.order() > 2 * centralizer) continue;
    if (h.order() > best) {
      best = h.order();
      report.semicenters.clear();
    }
    if (h.order() == best) report.semicenters.push_back(h);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sphericity predicates

bool condition_3p(const MetacyclicPresentation& g) {
  if (is_cyclic(g)) return true;
  for (i64 p : prime_divisors(g.order()))
    if (!all_order_pq_cyclic(g, 3, p)) return false;
  return true;
}

PqConditions pq_conditions(const MetacyclicPresentation& g) {
  PqConditions out{true, true};
  if (is_cyclic(g)) return out;
  for (i64 p : prime_divisors(g.order())) {
    if (out.cond_2p && !all_order_pq_cyclic(g, 2, p)) out.cond_2p = false;
    const i64 sylow = prime_part(g.order(), p);
    bool found = false;
    for (int idx = 0; idx < g.order() && !found; ++idx)
      found = g.element_order(g.element(idx)) % sylow == 0;
    if (!found) out.sylow_cyclic = false;
  }
  return out;
}

NormalCyclicReport normal_cyclic_subgroups(const MetacyclicPresentation& g) {
  NormalCyclicReport report;
  const auto cyclic = cyclic_subgroups(g);
  for (std::size_t a = 0; a < cyclic.size(); ++a) {
    const Subgroup& h = cyclic[a];
    if (!is_normal(g, h)) continue;
    NormalCyclicEntry entry;
    entry.subgroup = h;
    entry.index = g.order() / h.order();
    entry.is_maximal = true;
    for (std::size_t b = 0; b < cyclic.size() && entry.is_maximal; ++b) {
      if (cyclic[b].order() <= h.order()) continue;
      const bool inside = std::all_of(h.generators.begin(), h.generators.end(),
                                      [&](GroupElement x) { return cyclic[b].contains(x); });
      if (inside) entry.is_maximal = false;
    }
    report.has_index3_normal_cyclic = report.has_index3_normal_cyclic || entry.index == 3;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

bool has_index3_normal_cyclic(const MetacyclicPresentation& g) {
  if (g.order() % 3 != 0) return false;
  const i64 target = g.order() / 3;
  for (GroupElement x : cyclic_generators_of_order(g, target)) {
    const auto span = cyclic_span(g, x);
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    for (int idx : span) in[static_cast<std::size_t>(idx)] = 1;
    const bool normal =
        in[static_cast<std::size_t>(g.index(g.conjugate(g.generator_a(), x)))] &&
        in[static_cast<std::size_t>(g.index(g.conjugate(g.generator_b(), x)))];
    if (normal) return true;
  }
  return false;
}

SphericalVerdict is_spherical_5_space_group(const MetacyclicPresentation& g) {
  SphericalVerdict out;
  if (is_cyclic(g)) {
    out.verdict = true;
    out.cyclic = true;
    return out;
  }
  const i64 order = g.order();
  std::vector<i64> orders(static_cast<std::size_t>(order));
  for (int idx = 0; idx < order; ++idx)
    orders[static_cast<std::size_t>(idx)] = g.element_order(g.element(idx));

  std::vector<int> pos(static_cast<std::size_t>(order), -1);
  for (i64 nb : divisors(order)) {
    if (nb % 9 != 0) continue;
    const i64 ma = order / nb;
    const auto nb_primes = prime_divisors(nb);
    for (GroupElement a : cyclic_generators_of_order(g, ma)) {
      std::fill(pos.begin(), pos.end(), -1);
      const auto span = cyclic_span(g, a);
      for (std::size_t k = 0; k < span.size(); ++k)
        pos[static_cast<std::size_t>(span[k])] = static_cast<int>(k);
      auto in_a = [&](GroupElement x) { return pos[static_cast<std::size_t>(g.index(x))] >= 0; };
      if (!in_a(g.conjugate(g.generator_a(), a)) || !in_a(g.conjugate(g.generator_b(), a)))
        continue;  // <a> not normal
      for (int idx = 0; idx < order; ++idx) {
        if (orders[static_cast<std::size_t>(idx)] != nb) continue;
        const GroupElement b = g.element(idx);
        bool trivial_meet = true;
        for (i64 q : nb_primes) trivial_meet = trivial_meet && !in_a(g.power(b, nb / q));
        if (!trivial_meet) continue;
        const i64 r = pos[static_cast<std::size_t>(g.index(g.conjugate(b, a)))];
        const bool normalized = gcd(nb * (r - 1), ma) == 1;
        const bool cubic = mod(r * r + r + 1, ma) == 0;
        if (normalized && cubic) {
          out.verdict = true;
          out.witness = SphericalWitness{ma, nb, r, a, b};
          return out;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Abelianization

std::vector<i64> abelianization(const MetacyclicPresentation& g) {
  // [G,G] is generated by the commutators [x, A], [x, B] for x in G.
  std::vector<GroupElement> gens;
  Marker marker(g.order());
  std::vector<int> derived;
  close_indices(g, gens, -1, marker, derived);
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (int idx : derived) in[static_cast<std::size_t>(idx)] = 1;
  for (int idx = 0; idx < g.order(); ++idx) {
    const GroupElement x = g.element(idx);
    for (GroupElement s : {g.generator_a(), g.generator_b()}) {
      const GroupElement c = g.multiply(g.multiply(x, s), g.multiply(g.inverse(x), g.inverse(s)));
      if (in[static_cast<std::size_t>(g.index(c))]) continue;
      gens.push_back(c);
      close_indices(g, gens, -1, marker, derived);
      std::fill(in.begin(), in.end(), 0);
      for (int d : derived) in[static_cast<std::size_t>(d)] = 1;
    }
  }
  const i64 quotient = g.order() / static_cast<i64>(derived.size());
  i64 exponent = 1;
  for (int idx = 0; idx < g.order(); ++idx) {
    const GroupElement x = g.element(idx);
    for (i64 d : divisors(g.element_order(x))) {
      if (in[static_cast<std::size_t>(g.index(g.power(x, d)))]) {
        exponent = std::max(exponent, d);
        break;
      }
    }
  }
  // G/[G,G] is generated by the images of A and B, so it has rank <= 2.
  std::vector<i64> factors;
  if (quotient / exponent > 1) factors.push_back(quotient / exponent);
  if (exponent > 1) factors.push_back(exponent);
  return factors;
}

// ---------------------------------------------------------------------------
// Automorphisms and isomorphism

Automorphism power_automorphism(const MetacyclicPresentation& g, i64 t, i64 u) {
  const GroupElement a = g.power(g.generator_a(), t);
  const GroupElement b = g.power(g.generator_b(), u);
  if (g.power(a, g.m()) != g.identity())
    throw AutomorphismError("relation A^m = 1 not preserved: (A^t)^m = " +
                            describe(g.power(a, g.m())));
  if (g.power(b, g.n()) != g.identity())
    throw AutomorphismError("relation B^n = 1 not preserved: (B^u)^n = " +
                            describe(g.power(b, g.n())));
  const GroupElement lhs = g.conjugate(b, a);
  const GroupElement rhs = g.power(a, g.r());
  if (lhs != rhs)
    throw AutomorphismError("relation BAB^-1 = A^r not preserved: B^u A^t B^-u = " +
                            describe(lhs) + " but (A^t)^r = " + describe(rhs));
  Automorphism out;
  out.t = t;
  out.u = u;
  out.images.resize(static_cast<std::size_t>(g.order()));
  std::vector<char> hit(static_cast<std::size_t>(g.order()), 0);
  for (int idx = 0; idx < g.order(); ++idx) {
    const GroupElement x = g.element(idx);
    const int image = g.index(g.multiply(g.power(a, x.i), g.power(b, x.j)));
    out.images[static_cast<std::size_t>(idx)] = image;
    hit[static_cast<std::size_t>(image)] = 1;
  }
  const auto image_size = std::count(hit.begin(), hit.end(), 1);
  if (image_size != g.order())
    throw AutomorphismError("A -> A^t, B -> B^u is not bijective: image has " +
                            std::to_string(image_size) + " of " + std::to_string(g.order()) +
                            " elements");
  std::vector<int> current = out.images;
  out.order = 1;
  for (;;) {
    bool identity = true;
    for (int idx = 0; idx < g.order() && identity; ++idx)
      identity = current[static_cast<std::size_t>(idx)] == idx;
    if (identity) break;
    for (auto& v : current) v = out.images[static_cast<std::size_t>(v)];
    ++out.order;
  }
  return out;
}

bool are_isomorphic(const MetacyclicPresentation& g, const MetacyclicPresentation& h) {
  if (g.order() != h.order()) return false;
  const bool gc = is_cyclic(g), hc = is_cyclic(h);
  if (gc || hc) return gc && hc;
  const i64 order = h.order();
  std::vector<i64> orders(static_cast<std::size_t>(order));
  for (int idx = 0; idx < order; ++idx)
    orders[static_cast<std::size_t>(idx)] = h.element_order(h.element(idx));
  const auto n_primes = prime_divisors(g.n());
  std::vector<char> in(static_cast<std::size_t>(order), 0);
  for (int ia = 0; ia < order; ++ia) {
    if (orders[static_cast<std::size_t>(ia)] != g.m()) continue;
    const GroupElement a = h.element(ia);
    std::fill(in.begin(), in.end(), 0);
    for (int idx : cyclic_span(h, a)) in[static_cast<std::size_t>(idx)] = 1;
    const GroupElement target = h.power(a, g.r());
    for (int ib = 0; ib < order; ++ib) {
      if (orders[static_cast<std::size_t>(ib)] != g.n()) continue;
      const GroupElement b = h.element(ib);
      if (h.conjugate(b, a) != target) continue;
      bool trivial_meet = true;
      for (i64 q : n_primes)
        trivial_meet = trivial_meet && !in[static_cast<std::size_t>(h.index(h.power(b, g.n() / q)))];
      if (trivial_meet) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Harness

HarnessReport spherical_harness(i64 order_cap, unsigned threads) {
  if (order_cap > kDefaultOrderCap) throw SizeError("harness order cap must be <= 10000");
  HarnessReport report;
  report.order_cap = order_cap;
  std::vector<std::tuple<i64, i64, i64>> presentations;
  for (i64 m = 1; m <= order_cap; ++m)
    for (i64 n = 1; m * n <= order_cap; ++n)
      for (i64 r = 0; r < m; ++r)
        if (powmod(r, n, m) == 1 % m) presentations.emplace_back(m, n, r);
  report.presentations = static_cast<i64>(presentations.size());

  struct Outcome {
    bool noncyclic = false;
    bool hypotheses = false;
    SphericalVerdict verdict;
  };
  if (threads == 0) threads = default_thread_count();
  const auto outcomes = parallel_map(presentations.size(), threads, [&](std::size_t k) {
    const auto [m, n, r] = presentations[k];
    const auto g = MetacyclicPresentation::validate(m, n, r);
    Outcome o;
    o.noncyclic = !is_cyclic(g);
    o.hypotheses = o.noncyclic && has_index3_normal_cyclic(g) && condition_3p(g);
    if (o.hypotheses) o.verdict = is_spherical_5_space_group(g);
    return o;
  });

  std::vector<MetacyclicPresentation> reps;
  for (std::size_t k = 0; k < presentations.size(); ++k) {
    const Outcome& o = outcomes[k];
    report.noncyclic += o.noncyclic ? 1 : 0;
    if (!o.hypotheses) continue;
    ++report.hypotheses_hold;
    const auto [m, n, r] = presentations[k];
    HarnessInstance inst{m, n, r, o.verdict.witness};
    const bool ok = o.verdict.verdict && o.verdict.witness && o.verdict.witness->n % 9 == 0;
    if (!ok) {
      report.counterexamples.push_back(inst);
      continue;
    }
    ++report.spherical_confirmed;
    report.instances.push_back(inst);
    const auto g = MetacyclicPresentation::validate(m, n, r);
    const bool known = std::any_of(reps.begin(), reps.end(), [&](const auto& h) {
      return are_isomorphic(h, g);
    });
    if (!known) reps.push_back(g);
  }
  report.isomorphism_classes = static_cast<i64>(reps.size());
  return report;
}

}  // namespace sf5
