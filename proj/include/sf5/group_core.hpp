#pragma once

/**
 * @file group_core.hpp
 * @brief Exact engine for metacyclic groups <A, B | A^m = B^n = 1, BAB^-1 = A^r>.
 *
 * Elements are kept in the normal form A^i B^j, written (i, j) with i mod m and
 * j mod n. The product rule is
 *
 *     (i1, j1) * (i2, j2) = (i1 + r^j1 * i2 mod m, j1 + j2 mod n),
 *
 * which is well defined exactly when r^n = 1 (mod m). All predicates here are
 * brute force over the element set; groups are small (order cap 10 000).
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sf5/arith.hpp"

namespace sf5 {

inline constexpr i64 kDefaultOrderCap = 10'000;

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class AutomorphismError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupElement {
  i64 i = 0;  // A-exponent, mod m
  i64 j = 0;  // B-exponent, mod n
  auto operator<=>(const GroupElement&) const = default;
};

class MetacyclicPresentation {
 public:
  /// Checks m >= 1, n >= 1, 0 <= r < m and the consistency congruence
  /// r^n = 1 (mod m). Throws PresentationError naming the failing congruence.
  static MetacyclicPresentation validate(i64 m, i64 n, i64 r);

  i64 m() const { return m_; }
  i64 n() const { return n_; }
  i64 r() const { return r_; }
  i64 order() const { return m_ * n_; }
  bool consistent() const { return true; }
  /// gcd((r - 1) n, m) = 1.
  bool burnside_normalized() const { return burnside_; }
  bool is_abelian() const { return m_ == 1 || r_ == 1; }

  GroupElement identity() const { return {0, 0}; }
  GroupElement generator_a() const { return {m_ == 1 ? 0 : 1, 0}; }
  GroupElement generator_b() const { return {0, n_ == 1 ? 0 : 1}; }

  GroupElement multiply(GroupElement x, GroupElement y) const {
    return {(x.i + rpow_[static_cast<std::size_t>(x.j)] * y.i) % m_, (x.j + y.j) % n_};
  }
  GroupElement inverse(GroupElement x) const;
  GroupElement power(GroupElement x, i64 e) const;
  GroupElement conjugate(GroupElement by, GroupElement x) const {
    return multiply(multiply(by, x), inverse(by));
  }
  bool commute(GroupElement x, GroupElement y) const {
    return multiply(x, y) == multiply(y, x);
  }
  i64 element_order(GroupElement x) const;

  /// Dense index in [0, order()).
  int index(GroupElement x) const { return static_cast<int>(x.j * m_ + x.i); }
  GroupElement element(int idx) const { return {idx % m_, idx / m_}; }
  /// r^j mod m.
  i64 r_power(i64 j) const { return rpow_[static_cast<std::size_t>(mod(j, n_))]; }

 private:
  MetacyclicPresentation(i64 m, i64 n, i64 r);
  i64 m_, n_, r_;
  bool burnside_ = false;
  std::vector<i64> rpow_;
};

/// A subgroup given by generators plus its sorted element list.
struct Subgroup {
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;

  i64 order() const { return static_cast<i64>(elements.size()); }
  bool contains(GroupElement x) const;
  bool operator==(const Subgroup& other) const { return elements == other.elements; }
};

/// Closure of `generators`; nullopt when it would exceed `cap` elements.
std::optional<Subgroup> generate_subgroup(const MetacyclicPresentation& g,
                                          const std::vector<GroupElement>& generators,
                                          i64 cap = -1);

/// Distinct cyclic subgroups (trivial one included), ordered by (order, elements).
std::vector<Subgroup> cyclic_subgroups(const MetacyclicPresentation& g);

/// Every subgroup, by closing each pair of cyclic subgroups. Throws SizeError
/// when |G| exceeds `order_cap`.
std::vector<Subgroup> enumerate_subgroups(const MetacyclicPresentation& g,
                                          i64 order_cap = kDefaultOrderCap);

bool is_cyclic(const MetacyclicPresentation& g);
bool is_cyclic(const MetacyclicPresentation& g, const Subgroup& h);
bool is_abelian(const MetacyclicPresentation& g, const Subgroup& h);
bool is_normal(const MetacyclicPresentation& g, const Subgroup& h);

struct CenterReport {
  Subgroup center;
  std::vector<Subgroup> semicenters;
};

/// Center plus the semi-centers: abelian subgroups of maximal order whose
/// centralizer has index at most two.
CenterReport center_and_semicenter(const MetacyclicPresentation& g,
                                   i64 order_cap = kDefaultOrderCap);

/// Every subgroup of order 3p (p prime, p = 3 included) is cyclic.
bool condition_3p(const MetacyclicPresentation& g);

struct NormalCyclicEntry {
  Subgroup subgroup;
  i64 index = 0;
  bool is_maximal = false;  // not properly inside another cyclic subgroup
};

struct NormalCyclicReport {
  std::vector<NormalCyclicEntry> entries;
  bool has_index3_normal_cyclic = false;
};

NormalCyclicReport normal_cyclic_subgroups(const MetacyclicPresentation& g);

/// Fast form of NormalCyclicReport::has_index3_normal_cyclic.
bool has_index3_normal_cyclic(const MetacyclicPresentation& g);

struct SphericalWitness {
  i64 m = 0, n = 0, r = 0;
  GroupElement a, b;  // generators realising the witness inside G
  bool operator==(const SphericalWitness&) const = default;
};

struct SphericalVerdict {
  bool verdict = false;
  bool cyclic = false;
  std::optional<SphericalWitness> witness;
};

/// Cyclic, or admits a presentation with n = 0 mod 9, gcd(n(r-1), m) = 1 and
/// r^2 + r + 1 = 0 mod m, searched over all generator pairs of G.
SphericalVerdict is_spherical_5_space_group(const MetacyclicPresentation& g);

struct PqConditions {
  bool cond_2p = false;
  bool sylow_cyclic = false;
};

PqConditions pq_conditions(const MetacyclicPresentation& g);

/// Invariant factors d1 | d2 | ... of G/[G,G]; empty for the trivial group.
std::vector<i64> abelianization(const MetacyclicPresentation& g);

struct Automorphism {
  i64 t = 1, u = 1;
  std::vector<int> images;  // images[index(x)] = index(psi(x))
  i64 order = 1;            // order in Aut(G)

  GroupElement apply(const MetacyclicPresentation& g, GroupElement x) const {
    return g.element(images[static_cast<std::size_t>(g.index(x))]);
  }
};

/// A -> A^t, B -> B^u, when it extends to an automorphism; AutomorphismError
/// names the violated relation otherwise.
Automorphism power_automorphism(const MetacyclicPresentation& g, i64 t, i64 u);

/// Brute-force generator-image search for an isomorphism g -> h.
bool are_isomorphic(const MetacyclicPresentation& g, const MetacyclicPresentation& h);

struct HarnessInstance {
  i64 m = 0, n = 0, r = 0;
  std::optional<SphericalWitness> witness;
};

struct HarnessReport {
  i64 order_cap = 0;
  i64 presentations = 0;
  i64 noncyclic = 0;
  i64 hypotheses_hold = 0;       // noncyclic, 3p-cyclic, index-3 normal cyclic
  i64 spherical_confirmed = 0;
  i64 isomorphism_classes = 0;   // among hypotheses_hold
  std::vector<HarnessInstance> instances;
  std::vector<HarnessInstance> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

/// Checks [noncyclic and every order-3p subgroup cyclic and an index-3 normal
/// cyclic subgroup] => spherical with n = 0 mod 9, over every consistent
/// presentation of order <= order_cap. Sharded over `threads` workers; the
/// report does not depend on the thread count.
HarnessReport spherical_harness(i64 order_cap, unsigned threads = 0);

}  // namespace sf5
