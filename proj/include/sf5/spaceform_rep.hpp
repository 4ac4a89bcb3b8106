#pragma once

/**
 * @file spaceform_rep.hpp
 * @brief Exact block-rotation representations of space-form groups on S^5.
 *
 * Write C^3 = R^6 with z_j = x_j + i y_j. An element is D(a) P^s where P is
 * the block shift (P z)_j = z_{j+1} (indices mod 3) and D(a) rotates block j
 * through R(a_j). Then
 *
 *     D(a) P^s * D(b) P^t = D(a_j + b_{j+s}) P^{s+t},
 *
 * so the group law is exact on rational angles. The standard generators are
 * A = D(1/m, r/m, r^2/m) and B = D(0, 0, c/n) P.
 */

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sf5/group_core.hpp"
#include "sf5/rational_angle.hpp"
#include "sf5/torus_actions.hpp"

namespace sf5 {

class RelationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Matrix6 = std::array<std::array<double, 6>, 6>;

struct BlockRotationElement {
  int shift = 0;  // power of P, in {0, 1, 2}
  std::array<RationalAngle, 3> angles{};

  static BlockRotationElement identity() { return {}; }
  static BlockRotationElement diagonal(RationalAngle a0, RationalAngle a1, RationalAngle a2) {
    return {0, {a0, a1, a2}};
  }

  BlockRotationElement operator*(const BlockRotationElement& rhs) const;
  BlockRotationElement inverse() const;
  BlockRotationElement pow(i64 e) const;
  bool is_identity() const;
  bool operator==(const BlockRotationElement&) const = default;

  RationalAngle angle_sum() const { return angles[0] + angles[1] + angles[2]; }
  Matrix6 matrix() const;
};

struct SpherePoint {
  std::array<std::complex<double>, 3> z{};

  /// Scales to unit norm; throws for the zero vector.
  static SpherePoint normalized(std::array<std::complex<double>, 3> z);
  double norm() const;
};

SpherePoint apply(const BlockRotationElement& g, const SpherePoint& x);
/// Real inner product on R^6.
double real_inner(const SpherePoint& x, const SpherePoint& y);

class LinearSpaceForm {
 public:
  /// Checks A^m = B^n = 1 and B A B^-1 = A^r exactly; RelationError names the
  /// first relation that fails.
  LinearSpaceForm(MetacyclicPresentation presentation, BlockRotationElement gen_a,
                  BlockRotationElement gen_b);

  const MetacyclicPresentation& presentation() const { return presentation_; }
  const BlockRotationElement& gen_a() const { return gen_a_; }
  const BlockRotationElement& gen_b() const { return gen_b_; }
  i64 order() const { return presentation_.order(); }

  /// A^i B^j.
  BlockRotationElement element(GroupElement x) const;
  /// All elements, in presentation index order.
  const std::vector<BlockRotationElement>& elements() const { return elements_; }

 private:
  MetacyclicPresentation presentation_;
  BlockRotationElement gen_a_, gen_b_;
  std::vector<BlockRotationElement> elements_;
};

/// A = D(1/m, r/m, r^2/m), B = D(0, 0, c/n) P. For n = 1, B is the identity
/// and the result is the diagonal lens representation. B must have order
/// exactly n.
LinearSpaceForm build_standard_rep(i64 m, i64 n, i64 r, i64 bottom_block_numerator);

/// Cyclic group Z_n generated by D(w_1/n, w_2/n, w_3/n).
LinearSpaceForm lens_rep(i64 n, const std::array<i64, 3>& weights);

/// Exact: shift 0 fixes a point iff some angle is 0; a shifted element fixes a
/// point iff its angle sum is 0 mod 1 (its eigenvalues cube to e^{2 pi i sum}).
bool has_fixed_point(const BlockRotationElement& g);

struct FreenessVerdict {
  bool free = true;
  std::optional<GroupElement> witness;
};

FreenessVerdict is_free_representation(const LinearSpaceForm& rep);

/// arccos of the clamped real inner product <x, g x>.
double displacement(const BlockRotationElement& g, const SpherePoint& x);

/// min over unit x of displacement(g, x), from the rotation angles of g.
double min_displacement(const BlockRotationElement& g);

enum class SamplerKind { uniform, torus_grid };

struct SamplerParams {
  SamplerKind kind = SamplerKind::uniform;
  int restarts = 24;
  int max_iters = 4000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct InjectivityGeometry {
  double min_injrad = 0;
  double max_injrad_estimate = 0;
  SpherePoint max_point;
  int restarts = 0;
  int best_restart = -1;
  std::int64_t evaluations = 0;
  double volume = 0;
  double collapse_ratio = 0;
};

/// Half the minimal displacement over nontrivial elements at x, capped at pi.
double injectivity_radius_at(const LinearSpaceForm& rep, const SpherePoint& x);

/// vol(S^5) = 2 pi^3 / Gamma(3) = pi^3.
inline constexpr double kSphere5Volume =
    std::numbers::pi * std::numbers::pi * std::numbers::pi;

/// Throws std::invalid_argument for a non-free representation.
InjectivityGeometry injectivity_geometry(const LinearSpaceForm& rep, const SamplerParams& params);

/// g t(theta) g^-1 = t(rho(g) theta) for g in {A, B}, checked as exact
/// block-rotation identities. rho matrices are k x k, acting on theta.
bool verify_pi1_invariance(const LinearSpaceForm& rep, const WeightMatrix& weights,
                           const IntMatrix& rho_a, const IntMatrix& rho_b);

/// The torus element t(theta) as a diagonal block rotation.
BlockRotationElement torus_element(const WeightMatrix& weights,
                                   const std::vector<RationalAngle>& theta);

}  // namespace sf5
