#pragma once

#include <span>
#include <vector>

#include "posopt/problem.hpp"
#include "posopt/value_grid.hpp"

namespace posopt {

/// Kink tolerance scaled for one-sided slope noise: 10 * sqrt(h) * Lipschitz
/// estimate of the grid. Slope mismatch at a true kink is O(1); at smooth
/// nodes it is O(h), so a sqrt(h) threshold separates the regimes.
double default_kink_tol(const ValueGrid& vgrid);

struct FdGradient {
  Vec gradient;     // central differences per axis
  bool at_kink = false;
};

/// Central-difference gradient at an interior node, flagged when the node
/// fails the kink test.
FdGradient fd_gradient(const ValueGrid& vgrid, size_t node, double kink_tol = -1.0);

struct KinkReport {
  struct NodeSlopes {
    size_t node = 0;
    Vec forward, backward;  // per-axis one-sided slopes
  };
  std::vector<size_t> flagged_nodes;       // interior nodes failing the test
  std::vector<NodeSlopes> per_node_slopes; // parallel to flagged_nodes
  size_t interior_count = 0;
  double fraction = 0.0;
  double kink_tol = 0.0;
};

/// Flags interior nodes whose forward and backward slopes disagree beyond
/// kink_tol on some axis. Requires >= 64 cells per axis.
KinkReport classify_kinks(const ValueGrid& vgrid, double kink_tol = -1.0);

/// Largest |dV| / |dx| over axis-adjacent node pairs.
double lipschitz_estimate(const ValueGrid& vgrid);

struct DdSchedule {
  double t0 = 1e-2;
  int levels = 11;
};

/// One-sided directional derivative of V at x along d (not normalized):
/// lim (V(x + t d) - V(x)) / t via solves, with two-level Richardson
/// extrapolation and a consistency fallback to the raw quotient.
double directional_derivative(const Problem& problem, std::span<const double> x,
                              std::span<const double> d, const SolveConfig& cfg = {},
                              const DdSchedule& schedule = {});

struct ReconstructReport {
  std::vector<double> reconstructed;
  double sup_error = 0.0;
};

/// Trapezoid integration of the finite-difference derivative anchored at the
/// left endpoint value; the domain must start at 0. 1-D only.
ReconstructReport integral_reconstruct(const ValueGrid& vgrid);

struct MonotonicityReport {
  bool monotone = false;
  double worst_violation = 0.0;
};

/// Checks V(x') >= V(x) - v_tol whenever x' strictly dominates x on the grid.
/// Requires a separable cost whose curves vanish on (-inf, 0] and are
/// non-negative.
MonotonicityReport monotonicity_check(const Problem& problem, const ValueGrid& vgrid,
                                      double v_tol = 1e-9);

struct PlaneBoundReport {
  ValueGrid plane_grid;
  ValueGrid bounded_grid;
  Vec plane_gradient;             // reference gradient of the plane payoff
  double max_gradient_deviation = 0.0;  // plane-problem fd gradient vs plane gradient
  double max_affine_deviation = 0.0;    // plane-problem V vs affine interpolant
  double max_dominance_violation = 0.0; // bounded V minus plane V, max over nodes
  double worst_zero_set_slack = 0.0;    // min over maximizers of plane payoff minus cost
  bool dominance_ok = false;
  bool zero_set_ok = false;
};

/// Solves the plane problem and a bounded problem on a choice box large
/// enough that maximizers are interior (asserted at runtime), over a grid of
/// anchors in `window`. Reports the affine value check, pointwise dominance
/// of the bounded value, and membership of bounded-problem maximizers in the
/// non-negative set {y : plane(y) - g(x, y) >= 0}.
PlaneBoundReport plane_bound_solve(const AffineExpr& plane, const PiecewisePayoff& bounded,
                                   const BoxDomain& choice_box, const ConvexRadial& cost,
                                   const BoxDomain& window, int cells_per_axis,
                                   const SolveConfig& cfg = {},
                                   Execution exec = Execution::parallel);

}  // namespace posopt
