#pragma once

/**
 * @file torus_actions.hpp
 * @brief Linear torus actions on S^5 given by integer weights.
 *
 * A k x 3 weight matrix W lets theta in T^k = R^k / Z^k act by
 *
 *     theta . (z_1, z_2, z_3) = (e^{2 pi i <w_1, theta>} z_1, ..., e^{2 pi i <w_3, theta>} z_3),
 *
 * with w_j the j-th column. The isotropy of a point depends only on which
 * coordinates are nonzero (its support), and is the closed subgroup
 * { theta : <w_j, theta> in Z for j in the support }. Everything below is
 * integer linear algebra on those column lattices.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sf5/rational_angle.hpp"
#include "sf5/smith.hpp"

namespace sf5 {

class ActionError : public std::invalid_argument {
 public:
  ActionError(const std::string& what, std::vector<i64> witness)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const std::vector<i64>& witness() const { return witness_; }

 private:
  std::vector<i64> witness_;
};

class WeightMatrix {
 public:
  /// One row per circle factor; 1 <= k <= 3 rows of three weights.
  static WeightMatrix make(std::vector<std::array<i64, 3>> rows);
  /// Compact form "1,1,-2;1,-2,1": rows separated by ';' or '/', entries by ','.
  static WeightMatrix parse(std::string_view text);

  std::size_t k() const { return rows_.size(); }
  const std::vector<std::array<i64, 3>>& rows() const { return rows_; }
  i64 operator()(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  std::vector<i64> column(std::size_t j) const;
  IntMatrix matrix() const;

  /// rank W = k, i.e. only a finite subgroup acts trivially.
  bool effective() const { return effective_; }
  /// Integer theta with W^T theta = 0 when not effective.
  const std::vector<i64>& kernel_witness() const { return kernel_witness_; }

  std::string str() const;
  bool operator==(const WeightMatrix& o) const { return rows_ == o.rows_; }

 private:
  std::vector<std::array<i64, 3>> rows_;
  bool effective_ = false;
  std::vector<i64> kernel_witness_;
};

/// Bitmask over coordinates: bit j set means z_{j+1} may be nonzero.
using Support = unsigned;
inline constexpr Support kFullSupport = 0b111;
std::vector<int> support_members(Support s);  // 0-based indices

struct IsotropyDescriptor {
  i64 torus_rank = 0;
  std::vector<i64> finite_part;  // nontrivial invariant factors

  bool trivial() const { return torus_rank == 0 && finite_part.empty(); }
  i64 finite_order() const;
  bool operator==(const IsotropyDescriptor&) const = default;
};

IsotropyDescriptor isotropy_at(const WeightMatrix& w, Support support);

/// True when the two supports have literally the same isotropy subgroup (not
/// merely isomorphic ones): their column lattices coincide.
bool same_isotropy_subgroup(const WeightMatrix& w, Support a, Support b);

struct OrbitStratum {
  Support support = 0;
  IsotropyDescriptor isotropy;
  i64 orbit_dimension = 0;
  bool principal = false;
  bool single_orbit = false;  // the stratum is one orbit (dimension match)
};

struct ActionClassification {
  IsotropyDescriptor principal_isotropy;
  std::vector<OrbitStratum> strata;               // all seven supports
  std::vector<std::vector<Support>> merged;       // supports sharing one isotropy subgroup
  bool fixed_point_free = false;
  bool free = false;
  bool pseudo_free = false;
  i64 singular_orbits = 0;
};

/// Throws ActionError (with the kernel witness) for a rank-deficient W.
ActionClassification classify_action(const WeightMatrix& w);

struct FixedSetTerm {
  std::vector<int> annihilated_columns;  // 0-based
  i64 fixed_dimension = 0;               // r(H)
  i64 contribution = 0;                  // r(H) + 1
};

struct FixedSetSumReport {
  i64 lhs = 6;  // n + 1 for S^5
  std::vector<FixedSetTerm> terms;
  i64 sum = 0;
  bool holds = false;
};

/// n + 1 = sum over circle isotropy subgroups H of (r(H) + 1), where the fixed
/// set of H is a sphere of dimension r(H). Requires k = 2 and no fixed point.
FixedSetSumReport fixed_set_sum_check(const WeightMatrix& w);

struct CyclicMembership {
  bool member = false;
  bool along_orbits = false;
  std::optional<std::vector<RationalAngle>> witness;  // theta in T^k
  std::array<i64, 3> doubled_residues{};  // the same angles written as e^{pi i a / N}: a over 2N
};

/// Is the Z_N generator acting by angles residues[j]/N (in turns) on z_{j+1}
/// an element of the torus image? Throws std::invalid_argument when the
/// cyclic action is ill defined (N < 1 or generator of order != N).
CyclicMembership cyclic_in_torus(const WeightMatrix& w, i64 n, const std::array<i64, 3>& residues);

}  // namespace sf5
