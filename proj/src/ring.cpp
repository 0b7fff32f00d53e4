#include "posopt/ring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace posopt {

void RingDomain::validate() const {
  if (!(circumference > 0.0))
    throw std::invalid_argument("RingDomain: circumference must be positive");
}

double RingDomain::wrap(double x) const {
  double r = std::fmod(x, circumference);
  if (r < 0.0) r += circumference;
  return r;
}

double ring_distance(const RingDomain& ring, double x, double y, RingMetric metric) {
  if (!ring.contains(x) || !ring.contains(y))
    throw std::invalid_argument("ring_distance: coordinates must lie in [0, circumference)");
  const double d = std::fabs(y - x);
  if (metric == RingMetric::chart) return d;
  return std::min(d, ring.circumference - d);
}

double ring_payoff_upper(const PiecewisePayoff& payoff, const RingDomain& ring, double y) {
  if (!ring.contains(y))
    throw std::invalid_argument("ring_payoff_upper: coordinate outside [0, circumference)");
  const Vec p{y};
  const auto l = payoff.limits_at(p);
  double v = std::max(l.limit_max, l.own);
  if (y == 0.0) {
    // limits from the far side of the gluing
    const Vec q{ring.circumference};
    const auto lw = payoff.limits_at(q);
    v = std::max(v, lw.limit_max);
    if (const Spike* s = payoff.spike_at(q)) v = std::max(v, s->value);
  }
  return v;
}

namespace {

double ring_objective(const PiecewisePayoff& payoff, const RingDomain& ring, double x,
                      double y, RingMetric metric) {
  return ring_payoff_upper(payoff, ring, y) - ring_distance(ring, x, y, metric);
}

}  // namespace

RingSolution ring_solve(const PiecewisePayoff& payoff, const RingDomain& ring, double x,
                        const SolveConfig& cfg, RingMetric metric) {
  cfg.validate();
  ring.validate();
  if (payoff.dim() != 1) throw std::invalid_argument("ring_solve: 1-D payoff required");
  if (!ring.contains(x))
    throw std::invalid_argument("ring_solve: anchor outside [0, circumference)");

  const double L = ring.circumference;
  std::set<double> cands{x, 0.0, ring.wrap(x + 0.5 * L)};
  for (const auto& piece : payoff.pieces()) {
    cands.insert(ring.wrap(piece.region.lo[0]));
    cands.insert(ring.wrap(piece.region.hi[0]));
  }
  for (const auto& s : payoff.spikes()) cands.insert(ring.wrap(s.point[0]));
  const int G = cfg.grid_per_axis;
  for (int i = 0; i < G; ++i) cands.insert(L * i / G);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> evals;  // (coord, value)
  evals.reserve(cands.size());
  for (double y : cands) {
    const double v = ring_objective(payoff, ring, x, y, metric);
    evals.emplace_back(y, v);
    best = std::max(best, v);
  }

  // local refinement inside the owning piece (payoff pieces are affine and
  // the distance is piecewise linear with seeded kinks, so this is a safety
  // net rather than the workhorse)
  const double h = L / G;
  std::vector<std::pair<double, double>> refined;
  for (const auto& [y0, v0] : evals) {
    if (v0 < best - 2.0 * (1.0 + payoff.bound()) * h) continue;
    const int pi = payoff.piece_index(Vec{y0 == 0.0 ? 0.0 : y0});
    if (pi < 0) continue;
    const auto& r = payoff.pieces()[pi].region;
    // cur stays in chart coordinates (may reach L); wrap only for evaluation
    double cur = y0, cur_v = v0, step = h;
    for (int level = 0; level <= cfg.refine_depth; ++level, step *= 0.5) {
      for (int sweep = 0; sweep < 8; ++sweep) {
        bool moved = false;
        for (double s : {step, -step}) {
          const double cand = std::clamp(cur + s, r.lo[0], r.hi[0]);
          if (cand == cur) continue;
          const double v =
              ring_objective(payoff, ring, x, cand >= L ? ring.wrap(cand) : cand, metric);
          if (v > cur_v) {
            cur = cand;
            cur_v = v;
            moved = true;
          }
        }
        if (!moved) break;
      }
    }
    refined.emplace_back(cur >= L ? ring.wrap(cur) : cur, cur_v);
    best = std::max(best, cur_v);
  }
  evals.insert(evals.end(), refined.begin(), refined.end());

  RingSolution sol;
  sol.anchor = x;
  sol.value = best;

  std::vector<double> tied;
  for (const auto& [y, v] : evals)
    if (v >= best - cfg.v_tol) tied.push_back(y);
  std::sort(tied.begin(), tied.end());
  std::vector<double> reps;
  for (double y : tied)
    if (reps.empty() || y - reps.back() > cfg.y_tol) reps.push_back(y);

  // arc detection: on the circle the tied set is an interval when all gaps
  // between consecutive representatives except the largest stay within two
  // grid steps
  if (reps.size() >= 3) {
    double max_gap = 0.0;
    size_t gap_at = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
      const double next = i + 1 < reps.size() ? reps[i + 1] : reps[0] + L;
      const double gap = next - reps[i];
      if (gap > max_gap) {
        max_gap = gap;
        gap_at = i;
      }
    }
    bool contiguous = true;
    for (size_t i = 0; i < reps.size(); ++i) {
      if (i == gap_at) continue;
      const double next = i + 1 < reps.size() ? reps[i + 1] : reps[0] + L;
      if (next - reps[i] > 2.0 * h + cfg.y_tol) {
        contiguous = false;
        break;
      }
    }
    if (contiguous && max_gap > 2.0 * h + cfg.y_tol) {
      sol.interval = true;
      const double start = gap_at + 1 < reps.size() ? reps[gap_at + 1] : reps[0];
      const double end = reps[gap_at];
      sol.interval_lo = start;
      sol.interval_hi = end >= start ? end : end + L;
      sol.representatives = {start, end};
      if (std::find(tied.begin(), tied.end(), 0.0) != tied.end() && start != 0.0 && end != 0.0)
        sol.representatives.push_back(0.0);
      std::sort(sol.representatives.begin(), sol.representatives.end());
      return sol;
    }
  }
  sol.representatives = std::move(reps);
  return sol;
}

RingGrid ring_value_function(const PiecewisePayoff& payoff, const RingDomain& ring, int cells,
                             const SolveConfig& cfg, Execution exec, RingMetric metric) {
  if (exec == Execution::serial)
    return ring_value_function_serial(payoff, ring, cells, cfg, metric);
  if (cells < 3) throw std::invalid_argument("ring_value_function: needs >= 3 cells");
  RingGrid grid{ring, cells, std::vector<double>(cells, 0.0), cfg};
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < cells; ++i)
    grid.values[i] = ring_solve(payoff, ring, grid.coord(i), cfg, metric).value;
  return grid;
}

RingGrid ring_value_function_serial(const PiecewisePayoff& payoff, const RingDomain& ring,
                                    int cells, const SolveConfig& cfg, RingMetric metric) {
  if (cells < 3) throw std::invalid_argument("ring_value_function: needs >= 3 cells");
  RingGrid grid{ring, cells, std::vector<double>(cells, 0.0), cfg};
  for (int i = 0; i < cells; ++i)
    grid.values[i] = ring_solve(payoff, ring, grid.coord(i), cfg, metric).value;
  return grid;
}

RingKinkReport ring_classify_kinks(const RingGrid& grid, double kink_tol) {
  if (grid.cells < 64) throw std::invalid_argument("ring_classify_kinks: needs >= 64 cells");
  const double h = grid.spacing();
  if (kink_tol < 0.0) kink_tol = 10.0 * std::sqrt(h) * std::max(ring_lipschitz(grid), 1e-9);
  RingKinkReport rep;
  rep.kink_tol = kink_tol;
  for (int i = 0; i < grid.cells; ++i) {
    const double fwd = (grid.values[grid.wrap_index(i + 1)] - grid.values[i]) / h;
    const double bwd = (grid.values[i] - grid.values[grid.wrap_index(i - 1)]) / h;
    if (std::fabs(fwd - bwd) > kink_tol) rep.flagged_nodes.push_back(i);
  }
  rep.fraction = static_cast<double>(rep.flagged_nodes.size()) / grid.cells;
  return rep;
}

double ring_lipschitz(const RingGrid& grid) {
  const double h = grid.spacing();
  double best = 0.0;
  for (int i = 0; i < grid.cells; ++i)
    best = std::max(best,
                    std::fabs(grid.values[grid.wrap_index(i + 1)] - grid.values[i]) / h);
  return best;
}

std::vector<double> ring_gradient(const RingGrid& grid) {
  const double h = grid.spacing();
  std::vector<double> g(grid.cells);
  for (int i = 0; i < grid.cells; ++i)
    g[i] = (grid.values[grid.wrap_index(i + 1)] - grid.values[grid.wrap_index(i - 1)]) /
           (2.0 * h);
  return g;
}

FoncReport ring_fonc_check(const PiecewisePayoff& payoff, const RingDomain& ring, double x,
                           double y, double fonc_tol, const DiniSchedule& schedule,
                           RingMetric metric) {
  const double base = ring_objective(payoff, ring, x, y, metric);
  RayProbe probe = [&](std::span<const double> w, double t) -> std::optional<double> {
    const double yt = ring.wrap(y + t * w[0]);
    return ring_objective(payoff, ring, x, yt, metric) - base;
  };
  FoncReport rep;
  rep.passes = true;
  bool have_finite = false;
  for (double dir : {1.0, -1.0}) {
    const Vec v{dir};
    const DiniEstimate est = upper_dini_from_probe(probe, v, schedule);
    ++rep.directions_checked;
    if (est.classification == DiniClass::neg_infinity) continue;
    ++rep.finite_directions;
    if (!have_finite || est.value > rep.worst_value) {
      rep.worst_value = est.value;
      rep.worst_direction = v;
      have_finite = true;
    }
    if (est.value > fonc_tol) rep.passes = false;
  }
  return rep;
}

}  // namespace posopt
