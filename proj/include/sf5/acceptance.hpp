#pragma once

// The acceptance criteria A1-A10 as callable checks, shared by the
// acceptance test binary and `sf5 verify-all`.

#include <cstdint>
#include <string>
#include <vector>

#include "sf5/lens_extent.hpp"
#include "sf5/spaceform_rep.hpp"

namespace sf5::acceptance {

struct AcceptanceConfig {
  double a1_margin = 1e-6;  // required pi/3 - bound(61, 5)
  i64 order_cap = 2000;     // A5 harness range
  std::uint64_t seed = 1;
  int a2_restarts = 2;
  int a2_max_iters = 1500;
  unsigned threads = 0;
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct CatalogRep {
  std::string name;
  LinearSpaceForm rep;
};

/// Free linear space forms used by the property and acceptance checks.
std::vector<CatalogRep> free_rep_catalog();

std::vector<std::string> criterion_ids();
CriterionResult run_criterion(const std::string& id, const AcceptanceConfig& config);
std::vector<CriterionResult> run_all(const AcceptanceConfig& config);

/// Independent eigenvalue test: does the 6x6 matrix of g have an eigenvalue
/// within `tol` of 1?
bool eigenvalue_one_oracle(const BlockRotationElement& g, double tol = 1e-8);

/// Smallest |eigen-angle| of the 6x6 matrix of g (radians), from Eigen. Equals
/// the minimal displacement of g over S^5.
double eigen_min_rotation(const BlockRotationElement& g);

/// Max of d(x, y) on RP^3 = L(2;1,1) over a Hopf-coordinate grid of y with
/// spacing `resolution`, x fixed (RP^3 is homogeneous).
double rp3_grid_oracle(double resolution);

}  // namespace sf5::acceptance
