#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "posopt/problem.hpp"
#include "posopt/value_grid.hpp"

namespace posopt {

struct DiniSchedule {
  double t0 = 1e-1;      // initial step
  double rho = 0.5;      // step shrink factor
  int levels = 20;       // trace length
  double delta = 1e-3;   // direction-perturbation radius
  double dini_tol = 1e-4;
};

enum class DiniClass { finite, neg_infinity };

/// Upper difference-quotient trace along shrinking steps with a perturbed
/// direction net. Quotients behaving like K/t with K < 0 classify as a
/// downward jump (negative infinity); stabilized quotients as finite.
struct DiniEstimate {
  Vec direction;
  std::vector<std::pair<double, double>> quotient_trace;  // (t_k, sup quotient)
  DiniClass classification = DiniClass::finite;
  double value = 0.0;                    // finite case
  std::optional<double> jump_magnitude;  // K in the jump case
};

/// Objective restricted to rays from a base point: callers provide
/// h(base + t*w) - h(base) with feasibility reported via the bool.
using RayProbe = std::function<std::optional<double>(std::span<const double> w, double t)>;

/// Generic estimator over a ray probe (used by the box and ring front ends
/// and by tests with bespoke objectives).
DiniEstimate upper_dini_from_probe(const RayProbe& probe, std::span<const double> v,
                                   const DiniSchedule& schedule);

/// Upper Dini derivative of y -> f*(y) - g(x, y) at y in direction v (unit).
DiniEstimate upper_dini(const Problem& problem, std::span<const double> x,
                        std::span<const double> y, std::span<const double> v,
                        const DiniSchedule& schedule = {});

struct FoncReport {
  bool passes = false;
  Vec worst_direction;
  double worst_value = 0.0;  // largest finite estimate over the net
  int directions_checked = 0;
  int finite_directions = 0;
};

/// Default direction net: 2n axis directions plus extra random unit vectors
/// (deterministic seed).
std::vector<Vec> default_direction_net(int dim, int random_count = 64);

/// Verifies the first-order necessary condition at an interior point: every
/// direction's upper Dini estimate must be <= fonc_tol or a downward jump.
FoncReport fonc_check(const Problem& problem, std::span<const double> x,
                      std::span<const double> y, const std::vector<Vec>& direction_net = {},
                      double fonc_tol = 1e-6, const DiniSchedule& schedule = {});

struct DifferentialInterval {
  enum class Kind { gradient, subdifferential, superdifferential };
  Kind kind = Kind::gradient;
  double lo = 0.0;
  double hi = 0.0;
  double slope_left = 0.0;
  double slope_right = 0.0;
};

/// One-sided slope interval of a 1-D value grid at an interior node.
/// kink_tol < 0 selects the grid-scaled default.
DifferentialInterval differential_interval(const ValueGrid& vgrid, int node,
                                           double kink_tol = -1.0);

}  // namespace posopt
