#include "sf5/torus_actions.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace sf5 {

namespace {

IntMatrix submatrix(const WeightMatrix& w, Support s) {
  const auto cols = support_members(s);
  IntMatrix out(w.k(), cols.size());
  for (std::size_t r = 0; r < w.k(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = w(r, static_cast<std::size_t>(cols[c]));
  return out;
}

// Is `target` in the Z-span of the columns of `gens`?
bool lattice_contains(const IntMatrix& gens, const std::vector<i64>& target) {
  const SmithForm sf = smith_normal_form(gens);
  for (std::size_t i = 0; i < gens.rows(); ++i) {
    i64 y = 0;
    for (std::size_t c = 0; c < gens.rows(); ++c) y += sf.u(i, c) * target[c];
    if (i < sf.rank) {
      if (y % sf.diagonal[i] != 0) return false;
    } else if (y != 0) {
      return false;
    }
  }
  return true;
}

i64 parse_int(std::string_view token) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  i64 value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw std::invalid_argument("weights: not an integer: '" + std::string(token) + "'");
  return value;
}

}  // namespace

std::vector<int> support_members(Support s) {
  std::vector<int> out;
  for (int j = 0; j < 3; ++j)
    if (s & (1u << j)) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------------------
// WeightMatrix

WeightMatrix WeightMatrix::make(std::vector<std::array<i64, 3>> rows) {
  if (rows.empty() || rows.size() > 3)
    throw std::invalid_argument("weights: torus rank k must be 1, 2 or 3");
  WeightMatrix w;
  w.rows_ = std::move(rows);
  const SmithForm sf = smith_normal_form(w.matrix());
  w.effective_ = sf.rank == w.k();
  if (!w.effective_)
    for (std::size_t c = 0; c < w.k(); ++c) w.kernel_witness_.push_back(sf.u(sf.rank, c));
  return w;
}

WeightMatrix WeightMatrix::parse(std::string_view text) {
  std::vector<std::array<i64, 3>> rows;
  while (true) {
    const auto semi = text.find_first_of(";/");
    std::string_view row = text.substr(0, semi);
    std::array<i64, 3> entries{};
    std::size_t count = 0;
    while (true) {
      const auto comma = row.find(',');
      if (count == 3) throw std::invalid_argument("weights: each row needs exactly 3 entries");
      entries[count++] = parse_int(row.substr(0, comma));
      if (comma == std::string_view::npos) break;
      row.remove_prefix(comma + 1);
    }
    if (count != 3) throw std::invalid_argument("weights: each row needs exactly 3 entries");
    rows.push_back(entries);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return make(std::move(rows));
}

std::vector<i64> WeightMatrix::column(std::size_t j) const {
  std::vector<i64> out;
  for (const auto& row : rows_) out.push_back(row[j]);
  return out;
}

IntMatrix WeightMatrix::matrix() const {
  IntMatrix out(k(), 3);
  for (std::size_t r = 0; r < k(); ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = rows_[r][c];
  return out;
}

std::string WeightMatrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < k(); ++r) {
    os << (r ? ";" : "");
    for (std::size_t c = 0; c < 3; ++c) os << (c ? "," : "") << rows_[r][c];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Isotropy

i64 IsotropyDescriptor::finite_order() const {
  return std::accumulate(finite_part.begin(), finite_part.end(), i64{1}, std::multiplies<>());
}

IsotropyDescriptor isotropy_at(const WeightMatrix& w, Support support) {
  if ((support & kFullSupport) == 0 || (support & ~kFullSupport) != 0)
    throw std::invalid_argument("isotropy_at: support must be a nonempty subset of {1,2,3}");
  const SmithForm sf = smith_normal_form(submatrix(w, support));
  IsotropyDescriptor out;
  out.torus_rank = static_cast<i64>(w.k() - sf.rank);
  for (i64 d : sf.diagonal)
    if (d > 1) out.finite_part.push_back(d);
  return out;
}

bool same_isotropy_subgroup(const WeightMatrix& w, Support a, Support b) {
  const IntMatrix la = submatrix(w, a), lb = submatrix(w, b);
  for (int j : support_members(b))
    if (!lattice_contains(la, w.column(static_cast<std::size_t>(j)))) return false;
  for (int j : support_members(a))
    if (!lattice_contains(lb, w.column(static_cast<std::size_t>(j)))) return false;
  return true;
}

ActionClassification classify_action(const WeightMatrix& w) {
  if (!w.effective())
    throw ActionError("weights " + w.str() + " are not effective: a subtorus acts trivially",
                      w.kernel_witness());
  ActionClassification out;
  out.principal_isotropy = isotropy_at(w, kFullSupport);
  out.free = true;
  out.fixed_point_free = true;
  bool singular_only_on_axes = true;
  for (Support s = 1; s <= kFullSupport; ++s) {
    OrbitStratum st;
    st.support = s;
    st.isotropy = isotropy_at(w, s);
    st.orbit_dimension = static_cast<i64>(w.k()) - st.isotropy.torus_rank;
    st.principal = same_isotropy_subgroup(w, s, kFullSupport);
    const i64 stratum_dim = 2 * static_cast<i64>(support_members(s).size()) - 1;
    st.single_orbit = stratum_dim == st.orbit_dimension;
    out.free = out.free && st.isotropy.trivial();
    if (st.isotropy.torus_rank == static_cast<i64>(w.k())) out.fixed_point_free = false;
    if (!st.principal) {
      if (support_members(s).size() > 1) singular_only_on_axes = false;
      if (st.single_orbit) ++out.singular_orbits;
    }
    out.strata.push_back(st);
  }
  out.pseudo_free = out.fixed_point_free && singular_only_on_axes;

  for (Support s = 1; s <= kFullSupport; ++s) {
    auto it = std::find_if(out.merged.begin(), out.merged.end(), [&](const auto& group) {
      return same_isotropy_subgroup(w, group.front(), s);
    });
    if (it == out.merged.end())
      out.merged.push_back({s});
    else
      it->push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-set dimension sum for T^2 actions

FixedSetSumReport fixed_set_sum_check(const WeightMatrix& w) {
  if (w.k() != 2) throw std::invalid_argument("fixed_set_sum_check: requires a T^2 action (k = 2)");
  const auto cls = classify_action(w);
  if (!cls.fixed_point_free)
    throw std::invalid_argument("fixed_set_sum_check: the action has a fixed point");
  // A circle isotropy subgroup H is the identity component of the isotropy
  // of a rank-1 set of columns; it annihilates exactly the columns parallel
  // to that set, and fixes the sphere they span.
  FixedSetSumReport out;
  std::vector<bool> used(3, false);
  for (int a = 0; a < 3; ++a) {
    if (used[static_cast<std::size_t>(a)]) continue;
    FixedSetTerm term;
    for (int b = a; b < 3; ++b) {
      const i64 det = w(0, static_cast<std::size_t>(a)) * w(1, static_cast<std::size_t>(b)) -
                      w(1, static_cast<std::size_t>(a)) * w(0, static_cast<std::size_t>(b));
      if (det == 0) {
        used[static_cast<std::size_t>(b)] = true;
        term.annihilated_columns.push_back(b);
      }
    }
    term.fixed_dimension = 2 * static_cast<i64>(term.annihilated_columns.size()) - 1;
    term.contribution = term.fixed_dimension + 1;
    out.sum += term.contribution;
    out.terms.push_back(term);
  }
  out.holds = out.sum == out.lhs;
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic subgroups of the torus image

CyclicMembership cyclic_in_torus(const WeightMatrix& w, i64 n, const std::array<i64, 3>& residues) {
  if (n < 1) throw std::invalid_argument("cyclic_in_torus: N must be positive");
  if (gcd(gcd(gcd(residues[0], residues[1]), residues[2]), n) != 1)
    throw std::invalid_argument("cyclic_in_torus: the generator does not have order N");

  // U W V = D. theta solves W^T theta = a / N (mod 1) iff phi = U^-T theta
  // solves D^T phi = V^T a / N (mod 1).
  const SmithForm sf = smith_normal_form(w.matrix());
  std::array<i64, 3> b{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) b[i] += sf.v(j, i) * residues[j];

  CyclicMembership out;
  for (std::size_t j = 0; j < 3; ++j) out.doubled_residues[j] = mod(2 * residues[j], 2 * n);
  out.member = true;
  for (std::size_t i = sf.rank; i < 3; ++i) out.member = out.member && mod(b[i], n) == 0;
  out.along_orbits = out.member;
  if (!out.member) return out;

  std::vector<RationalAngle> phi(w.k());
  for (std::size_t i = 0; i < sf.rank; ++i) phi[i] = RationalAngle::of(b[i], n * sf.diagonal[i]);
  std::vector<RationalAngle> theta(w.k());
  for (std::size_t r = 0; r < w.k(); ++r)
    for (std::size_t c = 0; c < w.k(); ++c) theta[r] = theta[r] + phi[c] * sf.u(c, r);

  for (std::size_t j = 0; j < 3; ++j) {
    RationalAngle lhs;
    for (std::size_t r = 0; r < w.k(); ++r) lhs = lhs + theta[r] * w(r, j);
    if (!(lhs == RationalAngle::of(residues[j], n)))
      throw std::logic_error("cyclic_in_torus: witness failed verification");
  }
  out.witness = std::move(theta);
  return out;
}

}  // namespace sf5
