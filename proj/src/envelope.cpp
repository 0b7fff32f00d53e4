#include "posopt/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace posopt {

namespace {

// forward/backward slopes at an interior node, one axis
std::pair<double, double> one_sided_slopes(const ValueGrid& g, std::span<const int> idx,
                                           int axis) {
  std::vector<int> j(idx.begin(), idx.end());
  const size_t c = g.flat(idx);
  j[axis] += 1;
  const size_t fwd = g.flat(j);
  j[axis] -= 2;
  const size_t bwd = g.flat(j);
  const double h = g.spacing(axis);
  return {(g.values[fwd] - g.values[c]) / h, (g.values[c] - g.values[bwd]) / h};
}

bool node_is_kink(const ValueGrid& g, std::span<const int> idx, double tol) {
  for (int k = 0; k < g.dim(); ++k) {
    const auto [f, b] = one_sided_slopes(g, idx, k);
    if (std::fabs(f - b) > tol) return true;
  }
  return false;
}

}  // namespace

double default_kink_tol(const ValueGrid& vgrid) {
  const double lip = std::max(lipschitz_estimate(vgrid), 1e-9);
  return 10.0 * std::sqrt(vgrid.max_spacing()) * lip;
}

FdGradient fd_gradient(const ValueGrid& vgrid, size_t node, double kink_tol) {
  if (!vgrid.is_interior(node))
    throw std::invalid_argument("fd_gradient: interior node required");
  if (kink_tol < 0.0) kink_tol = default_kink_tol(vgrid);
  const int n = vgrid.dim();
  std::vector<int> idx(n);
  vgrid.unflatten(node, idx);

  FdGradient out;
  out.gradient.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto [f, b] = one_sided_slopes(vgrid, idx, k);
    out.gradient[k] = 0.5 * (f + b);
    if (std::fabs(f - b) > kink_tol) out.at_kink = true;
  }
  return out;
}

KinkReport classify_kinks(const ValueGrid& vgrid, double kink_tol) {
  if (vgrid.cells_per_axis() < 64)
    throw std::invalid_argument("classify_kinks: needs >= 64 cells per axis");
  if (kink_tol < 0.0) kink_tol = default_kink_tol(vgrid);

  KinkReport rep;
  rep.kink_tol = kink_tol;
  const int n = vgrid.dim();
  std::vector<int> idx(n);
  for (size_t f = 0; f < vgrid.node_count(); ++f) {
    if (!vgrid.is_interior(f)) continue;
    ++rep.interior_count;
    vgrid.unflatten(f, idx);
    if (!node_is_kink(vgrid, idx, kink_tol)) continue;
    rep.flagged_nodes.push_back(f);
    KinkReport::NodeSlopes s;
    s.node = f;
    s.forward.resize(n);
    s.backward.resize(n);
    for (int k = 0; k < n; ++k) {
      const auto [fw, bw] = one_sided_slopes(vgrid, idx, k);
      s.forward[k] = fw;
      s.backward[k] = bw;
    }
    rep.per_node_slopes.push_back(std::move(s));
  }
  rep.fraction = rep.interior_count == 0
                     ? 0.0
                     : static_cast<double>(rep.flagged_nodes.size()) / rep.interior_count;
  return rep;
}

double lipschitz_estimate(const ValueGrid& vgrid) {
  const int n = vgrid.dim();
  double best = 0.0;
  std::vector<int> idx(n);
  for (size_t f = 0; f < vgrid.node_count(); ++f) {
    vgrid.unflatten(f, idx);
    for (int k = 0; k < n; ++k) {
      if (idx[k] + 1 > vgrid.cells_per_axis()) continue;
      std::vector<int> j(idx);
      j[k] += 1;
      const double dv = std::fabs(vgrid.values[vgrid.flat(j)] - vgrid.values[f]);
      best = std::max(best, dv / vgrid.spacing(k));
    }
  }
  return best;
}

double directional_derivative(const Problem& problem, std::span<const double> x,
                              std::span<const double> d, const SolveConfig& cfg,
                              const DdSchedule& schedule) {
  if (!problem.domain().strictly_inside(x))
    throw std::invalid_argument("directional_derivative: interior anchor required");
  const int n = problem.domain().dim();
  Vec probe(n);
  auto feasible = [&](double t) {
    for (int k = 0; k < n; ++k) probe[k] = x[k] + t * d[k];
    return problem.domain().contains(probe);
  };
  double t0 = schedule.t0;
  int shrink = 0;
  while (!feasible(t0) && shrink < 60) {
    t0 *= 0.5;
    ++shrink;
  }
  if (shrink == 60)
    throw std::invalid_argument("directional_derivative: direction leaves the domain");

  const double v0 = solve(problem, x, cfg).value;
  std::vector<double> q;
  double t = t0;
  for (int k = 0; k < schedule.levels; ++k, t *= 0.5) {
    for (int j = 0; j < n; ++j) probe[j] = x[j] + t * d[j];
    q.push_back((solve(problem, probe, cfg).value - v0) / t);
  }
  const size_t m = q.size();
  if (m < 3) return q.back();
  // two Richardson levels; fall back to the raw quotient when the
  // extrapolation disagrees with it (a kink inside the step range)
  const double r1a = 2.0 * q[m - 2] - q[m - 3];
  const double r1b = 2.0 * q[m - 1] - q[m - 2];
  const double r2 = (4.0 * r1b - r1a) / 3.0;
  const double scale = std::max(1.0, std::fabs(q[m - 1]));
  if (std::fabs(r1b - q[m - 1]) > 0.05 * scale) return q[m - 1];
  return r2;
}

ReconstructReport integral_reconstruct(const ValueGrid& vgrid) {
  if (vgrid.dim() != 1)
    throw std::invalid_argument("integral_reconstruct: supported for 1-D grids only");
  if (std::fabs(vgrid.domain().lo()[0]) > 1e-12)
    throw std::invalid_argument("integral_reconstruct: domain must start at 0");

  const int nodes = vgrid.nodes_per_axis();
  const double h = vgrid.spacing(0);
  std::vector<double> deriv(nodes);
  deriv[0] = (vgrid.values[1] - vgrid.values[0]) / h;
  deriv[nodes - 1] = (vgrid.values[nodes - 1] - vgrid.values[nodes - 2]) / h;
  for (int i = 1; i + 1 < nodes; ++i)
    deriv[i] = (vgrid.values[i + 1] - vgrid.values[i - 1]) / (2.0 * h);

  ReconstructReport rep;
  rep.reconstructed.resize(nodes);
  rep.reconstructed[0] = vgrid.values[0];
  for (int i = 1; i < nodes; ++i)
    rep.reconstructed[i] = rep.reconstructed[i - 1] + 0.5 * h * (deriv[i - 1] + deriv[i]);
  for (int i = 0; i < nodes; ++i)
    rep.sup_error = std::max(rep.sup_error, std::fabs(rep.reconstructed[i] - vgrid.values[i]));
  return rep;
}

MonotonicityReport monotonicity_check(const Problem& problem, const ValueGrid& vgrid,
                                      double v_tol) {
  const auto* sep = problem.cost().as_separable();
  if (sep == nullptr)
    throw std::invalid_argument("monotonicity_check: separable cost required");
  for (const auto& c : sep->curves)
    if (!c.one_sided_nonneg())
      throw std::invalid_argument(
          "monotonicity_check: cost curves must vanish on (-inf, 0] and be non-negative");

  // running max over weakly dominated predecessors; x' strictly dominates x
  // iff x is weakly dominated by x' shifted one node down on every axis
  const int n = vgrid.dim();
  const int nodes = vgrid.nodes_per_axis();
  std::vector<double> running(vgrid.values);
  std::vector<int> idx(n);
  for (size_t f = 0; f < running.size(); ++f) {
    vgrid.unflatten(f, idx);
    for (int k = 0; k < n; ++k) {
      if (idx[k] == 0) continue;
      std::vector<int> j(idx);
      j[k] -= 1;
      running[f] = std::max(running[f], running[vgrid.flat(j)]);
    }
  }
  MonotonicityReport rep;
  for (size_t f = 0; f < vgrid.node_count(); ++f) {
    vgrid.unflatten(f, idx);
    bool has_pred = true;
    for (int k = 0; k < n; ++k) has_pred = has_pred && idx[k] >= 1 && idx[k] < nodes;
    if (!has_pred) continue;
    std::vector<int> j(idx);
    for (int k = 0; k < n; ++k) j[k] -= 1;
    rep.worst_violation =
        std::max(rep.worst_violation, running[vgrid.flat(j)] - vgrid.values[f]);
  }
  rep.monotone = rep.worst_violation <= v_tol;
  return rep;
}

namespace {

// affine difference on a box is extreme at corners
double max_excess_over_plane(const PiecewisePayoff& payoff, const AffineExpr& plane) {
  double worst = -std::numeric_limits<double>::infinity();
  const int n = payoff.dim();
  Vec corner(n);
  for (const auto& piece : payoff.pieces()) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int k = 0; k < n; ++k)
        corner[k] = (mask >> k) & 1 ? piece.region.hi[k] : piece.region.lo[k];
      worst = std::max(worst, piece.expr.eval(corner) - plane.eval(corner));
    }
  }
  for (const auto& s : payoff.spikes())
    worst = std::max(worst, s.value - plane.eval(s.point));
  return worst;
}

bool payoff_non_decreasing(const PiecewisePayoff& payoff) {
  const int n = payoff.dim();
  for (const auto& piece : payoff.pieces())
    for (int k = 0; k < n; ++k)
      if (!piece.expr.c.empty() && piece.expr.c[k] < -1e-12) return false;
  // at shared faces the upper piece must not drop below the lower one
  for (const auto& a : payoff.pieces()) {
    for (const auto& b : payoff.pieces()) {
      for (int k = 0; k < n; ++k) {
        if (a.region.hi[k] != b.region.lo[k]) continue;
        // overlap of the remaining axes
        Vec lo(n), hi(n);
        bool overlap = true;
        for (int j = 0; j < n; ++j) {
          if (j == k) {
            lo[j] = hi[j] = a.region.hi[k];
            continue;
          }
          lo[j] = std::max(a.region.lo[j], b.region.lo[j]);
          hi[j] = std::min(a.region.hi[j], b.region.hi[j]);
          if (lo[j] > hi[j]) overlap = false;
        }
        if (!overlap) continue;
        Vec corner(n);
        for (int mask = 0; mask < (1 << n); ++mask) {
          for (int j = 0; j < n; ++j) corner[j] = (mask >> j) & 1 ? hi[j] : lo[j];
          if (b.expr.eval(corner) < a.expr.eval(corner) - 1e-12) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

PlaneBoundReport plane_bound_solve(const AffineExpr& plane, const PiecewisePayoff& bounded,
                                   const BoxDomain& choice_box, const ConvexRadial& cost,
                                   const BoxDomain& window, int cells_per_axis,
                                   const SolveConfig& cfg, Execution exec) {
  const int n = choice_box.dim();
  if (window.dim() != n) throw std::invalid_argument("plane_bound_solve: dimension mismatch");
  for (int k = 0; k < n; ++k)
    if (window.lo()[k] < choice_box.lo()[k] || window.hi()[k] > choice_box.hi()[k])
      throw std::invalid_argument("plane_bound_solve: window must lie inside the choice box");
  if (!(cost.power > 1.0) || !(cost.coeff > 0.0))
    throw std::invalid_argument("plane_bound_solve: strictly convex radial cost required");
  if (max_excess_over_plane(bounded, plane) > 1e-12)
    throw std::invalid_argument("plane_bound_solve: bounded payoff must not exceed the plane");
  if (!payoff_non_decreasing(bounded))
    throw std::invalid_argument("plane_bound_solve: bounded payoff must be non-decreasing");

  std::vector<PiecewisePayoff::Piece> plane_piece;
  plane_piece.push_back({Region::closed(choice_box.lo(), choice_box.hi()), plane});
  const Problem plane_problem(PiecewisePayoff(std::move(plane_piece)), CostSpec(cost),
                              choice_box);
  const Problem bounded_problem(bounded, CostSpec(cost), choice_box);

  PlaneBoundReport rep{ValueGrid(window, cells_per_axis), ValueGrid(window, cells_per_axis)};
  rep.plane_grid.config_echo = cfg;
  rep.bounded_grid.config_echo = cfg;
  rep.plane_gradient = plane.c;
  rep.plane_gradient.resize(n, 0.0);
  rep.worst_zero_set_slack = std::numeric_limits<double>::infinity();
  rep.zero_set_ok = true;

  const long long count = static_cast<long long>(rep.plane_grid.node_count());
  std::vector<double> zero_slack(count, std::numeric_limits<double>::infinity());
  std::vector<char> interior_ok(count, 1);

  auto solve_node = [&](long long i) {
    const Vec x = rep.plane_grid.point(static_cast<size_t>(i));
    const Solution ps = solve(plane_problem, x, cfg);
    const Solution bs = solve(bounded_problem, x, cfg);
    rep.plane_grid.values[static_cast<size_t>(i)] = ps.value;
    rep.bounded_grid.values[static_cast<size_t>(i)] = bs.value;
    for (const auto& sol : {&ps, &bs})
      for (const auto& m : sol->argmax_set)
        for (int k = 0; k < n; ++k)
          if (m[k] < choice_box.lo()[k] + 1e-9 || m[k] > choice_box.hi()[k] - 1e-9)
            interior_ok[i] = 0;
    for (const auto& m : bs.argmax_set)
      zero_slack[i] = std::min(zero_slack[i], plane.eval(m) - cost.coeff *
                                                  std::pow(distance2(x, m), cost.power));
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < count; ++i) solve_node(i);
  } else {
    for (long long i = 0; i < count; ++i) solve_node(i);
  }

  for (long long i = 0; i < count; ++i) {
    if (!interior_ok[i])
      throw std::runtime_error(
          "plane_bound_solve: maximizer attained on the choice-box boundary (window too "
          "small)");
    rep.worst_zero_set_slack = std::min(rep.worst_zero_set_slack, zero_slack[i]);
  }
  rep.zero_set_ok = rep.worst_zero_set_slack >= -1e-9;

  // affine check: compare against the plane through the first node
  const Vec x0 = rep.plane_grid.point(0);
  const double v0 = rep.plane_grid.values[0];
  for (size_t i = 0; i < rep.plane_grid.node_count(); ++i) {
    const Vec x = rep.plane_grid.point(i);
    double expected = v0;
    for (int k = 0; k < n; ++k) expected += rep.plane_gradient[k] * (x[k] - x0[k]);
    rep.max_affine_deviation =
        std::max(rep.max_affine_deviation, std::fabs(rep.plane_grid.values[i] - expected));
    rep.max_dominance_violation = std::max(
        rep.max_dominance_violation, rep.bounded_grid.values[i] - rep.plane_grid.values[i]);
  }
  rep.dominance_ok = rep.max_dominance_violation <= cfg.v_tol;

  for (size_t i = 0; i < rep.plane_grid.node_count(); ++i) {
    if (!rep.plane_grid.is_interior(i)) continue;
    const FdGradient g = fd_gradient(rep.plane_grid, i, 1e9);
    for (int k = 0; k < n; ++k)
      rep.max_gradient_deviation = std::max(rep.max_gradient_deviation,
                                            std::fabs(g.gradient[k] - rep.plane_gradient[k]));
  }
  return rep;
}

}  // namespace posopt
