#pragma once

#include <span>
#include <vector>

#include "posopt/problem.hpp"

namespace posopt {

struct SolveConfig {
  int grid_per_axis = 256;  // candidate-grid nodes per axis
  int refine_depth = 20;    // step halvings in the local refinement
  double y_tol = 1e-6;      // maximizer location tolerance (dedup radius)
  double v_tol = 1e-9;      // value-tie tolerance for argmax membership

  void validate() const;
};

/// Value and tolerance-resolved maximizer set at one anchor.
struct Solution {
  Vec anchor;
  double value = 0.0;
  std::vector<Vec> argmax_set;                     // lexicographically sorted
  std::vector<bool> attained_at_discontinuity;     // parallel to argmax_set
};

/// Maximizes f*(y) - g(x, y) over the domain box. The candidate set always
/// contains the anchor itself, every spike point, each piece's closest
/// boundary points and corners, and a dense grid; survivors are refined by
/// pattern search inside their owning piece, never across a region boundary.
Solution solve(const Problem& problem, std::span<const double> x, const SolveConfig& cfg = {});

}  // namespace posopt
