#pragma once

#include <vector>

#include "posopt/dini.hpp"
#include "posopt/payoff.hpp"
#include "posopt/solver.hpp"
#include "posopt/value_grid.hpp"

namespace posopt {

enum class RingMetric { geodesic, chart };

/// Circle obtained by gluing the endpoints of [0, L); coordinates live in
/// [0, L) with 0 identified with L.
struct RingDomain {
  double circumference = 2.0;

  void validate() const;
  bool contains(double x) const { return x >= 0.0 && x < circumference; }
  double wrap(double x) const;
};

/// Geodesic distance min(|y-x|, L-|y-x|); the chart variant keeps the plain
/// coordinate difference |y-x| for comparison.
double ring_distance(const RingDomain& ring, double x, double y,
                     RingMetric metric = RingMetric::geodesic);

/// Payoff value under the attained-supremum rule extended across the gluing:
/// the glued point 0 (== L) takes the maximum of its own value and the limits
/// from both sides of the identification.
double ring_payoff_upper(const PiecewisePayoff& payoff, const RingDomain& ring, double y);

struct RingSolution {
  double anchor = 0.0;
  double value = 0.0;
  std::vector<double> representatives;  // sorted ring coordinates
  bool interval = false;                // tied set forms an arc
  double interval_lo = 0.0;             // arc endpoints when interval is set;
  double interval_hi = 0.0;             // hi == circumference means the glued point
};

/// Regularizes the payoff across the gluing and maximizes
/// f*(y) - d(x, y) over the ring.
RingSolution ring_solve(const PiecewisePayoff& payoff, const RingDomain& ring, double x,
                        const SolveConfig& cfg = {}, RingMetric metric = RingMetric::geodesic);

/// V sampled at cells equally spaced ring coordinates (node i at i*L/cells;
/// no duplicate node for the glued point).
struct RingGrid {
  RingDomain ring;
  int cells = 0;
  std::vector<double> values;
  SolveConfig config_echo;

  double spacing() const { return ring.circumference / cells; }
  double coord(int i) const { return ring.circumference * i / cells; }
  int wrap_index(int i) const { return ((i % cells) + cells) % cells; }
};

RingGrid ring_value_function(const PiecewisePayoff& payoff, const RingDomain& ring, int cells,
                             const SolveConfig& cfg = {}, Execution exec = Execution::parallel,
                             RingMetric metric = RingMetric::geodesic);

RingGrid ring_value_function_serial(const PiecewisePayoff& payoff, const RingDomain& ring,
                                    int cells, const SolveConfig& cfg = {},
                                    RingMetric metric = RingMetric::geodesic);

struct RingKinkReport {
  std::vector<int> flagged_nodes;
  double fraction = 0.0;
  double kink_tol = 0.0;
};

/// Kink detection with circular neighbors (every node is interior on a ring).
RingKinkReport ring_classify_kinks(const RingGrid& grid, double kink_tol = -1.0);

double ring_lipschitz(const RingGrid& grid);

/// Central differences with wraparound.
std::vector<double> ring_gradient(const RingGrid& grid);

/// First-order check at a ring point: every point is interior, directions
/// are the two orientations of the circle.
FoncReport ring_fonc_check(const PiecewisePayoff& payoff, const RingDomain& ring, double x,
                           double y, double fonc_tol = 1e-6, const DiniSchedule& schedule = {},
                           RingMetric metric = RingMetric::geodesic);

}  // namespace posopt
