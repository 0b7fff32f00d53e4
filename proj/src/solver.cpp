#include "posopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace posopt {

void SolveConfig::validate() const {
  if (grid_per_axis < 2) throw std::invalid_argument("SolveConfig: grid_per_axis must be >= 2");
  if (refine_depth < 0) throw std::invalid_argument("SolveConfig: refine_depth must be >= 0");
  if (!(y_tol > 0.0) || !(v_tol > 0.0))
    throw std::invalid_argument("SolveConfig: tolerances must be positive");
}

namespace {

class CandidateBuffer {
 public:
  explicit CandidateBuffer(int dim) : dim_(dim) {}

  void push(std::span<const double> p) { data_.insert(data_.end(), p.begin(), p.end()); }
  size_t size() const { return data_.size() / dim_; }
  std::span<const double> at(size_t i) const { return {data_.data() + i * dim_, (size_t)dim_}; }

 private:
  int dim_;
  std::vector<double> data_;
};

// Exact per-axis maximization of c_k * t - g_k(t - x_k) over [lo, hi]; the
// function is piecewise linear, so the max sits at an interval end or at a
// shifted curve knot.
double separable_axis_argmax(double coeff, const Curve1D& curve, double x_k, double lo,
                             double hi) {
  double best_t = lo;
  double best_v = coeff * lo - curve.eval(lo - x_k);
  auto consider = [&](double t) {
    if (t < lo || t > hi) return;
    const double v = coeff * t - curve.eval(t - x_k);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  };
  consider(hi);
  consider(std::clamp(x_k, lo, hi));
  for (double zk : curve.z) consider(x_k + zk);
  return best_t;
}

void seed_piece_candidates(const Problem& pb, std::span<const double> x,
                           const PiecewisePayoff::Piece& piece, CandidateBuffer& out) {
  const int n = pb.domain().dim();
  const Region& r = piece.region;

  Vec proj = r.clamp(x);
  out.push(proj);

  // closest point on each face
  for (int k = 0; k < n; ++k) {
    Vec face = proj;
    face[k] = r.lo[k];
    out.push(face);
    face[k] = r.hi[k];
    out.push(face);
  }

  // corners
  Vec corner(n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    for (int k = 0; k < n; ++k) corner[k] = (mask >> k) & 1 ? r.hi[k] : r.lo[k];
    out.push(corner);
  }

  if (const auto* radial = pb.cost().as_convex_radial()) {
    // interior stationary point of (affine payoff - radial cost) along the
    // payoff gradient: coeff*power*r^(power-1) = |c|
    const double cn = norm2(piece.expr.c);
    if (cn > 0.0) {
      const double rstar = std::pow(cn / (radial->coeff * radial->power),
                                    1.0 / (radial->power - 1.0));
      Vec y(n);
      for (int k = 0; k < n; ++k) y[k] = x[k] + rstar * piece.expr.c[k] / cn;
      out.push(r.clamp(y));
    }
  }

  if (const auto* sep = pb.cost().as_separable()) {
    Vec y(n);
    for (int k = 0; k < n; ++k) {
      const double ck = piece.expr.c.empty() ? 0.0 : piece.expr.c[k];
      y[k] = separable_axis_argmax(ck, sep->curves[k], x[k], r.lo[k], r.hi[k]);
    }
    out.push(y);
  }
}

void seed_grid(const BoxDomain& domain, int nodes_per_axis, CandidateBuffer& out) {
  const int n = domain.dim();
  std::vector<int> idx(n, 0);
  Vec pt(n);
  while (true) {
    for (int k = 0; k < n; ++k)
      pt[k] = domain.lo()[k] + domain.extent(k) * idx[k] / (nodes_per_axis - 1);
    out.push(pt);
    int k = 0;
    while (k < n && ++idx[k] == nodes_per_axis) idx[k++] = 0;
    if (k == n) break;
  }
}

std::vector<Vec> refine_directions(int n) {
  std::vector<Vec> dirs;
  for (int k = 0; k < n; ++k) {
    Vec d(n, 0.0);
    d[k] = 1.0;
    dirs.push_back(d);
    d[k] = -1.0;
    dirs.push_back(d);
  }
  if (n >= 2) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec d(n);
      for (int k = 0; k < n; ++k) d[k] = (mask >> k) & 1 ? 1.0 : -1.0;
      dirs.push_back(d);
    }
  }
  return dirs;
}

// Pattern search restricted to the closure of one piece; step halves
// refine_depth times starting from one grid cell.
std::pair<Vec, double> refine_within_piece(const Problem& pb, std::span<const double> x,
                                           const Region& region, Vec start, double start_value,
                                           const Vec& cell, const SolveConfig& cfg,
                                           const std::vector<Vec>& dirs) {
  Vec cur = std::move(start);
  double cur_v = start_value;
  const int n = static_cast<int>(cur.size());
  double scale = 1.0;
  Vec cand(n);
  for (int level = 0; level <= cfg.refine_depth; ++level) {
    for (int sweep = 0; sweep < 8; ++sweep) {
      double best_v = cur_v;
      Vec best_p;
      for (const Vec& d : dirs) {
        bool same = true;
        for (int k = 0; k < n; ++k) {
          cand[k] = std::clamp(cur[k] + scale * cell[k] * d[k], region.lo[k], region.hi[k]);
          same = same && cand[k] == cur[k];
        }
        if (same) continue;
        const double v = pb.objective_unchecked(x, cand);
        if (v > best_v) {
          best_v = v;
          best_p = cand;
        }
      }
      if (best_p.empty()) break;
      cur = std::move(best_p);
      cur_v = best_v;
    }
    scale *= 0.5;
  }
  return {std::move(cur), cur_v};
}

}  // namespace

Solution solve(const Problem& pb, std::span<const double> x, const SolveConfig& cfg) {
  cfg.validate();
  if (!pb.domain().contains(x))
    throw std::invalid_argument("solve: anchor " + format_point(x) + " outside the domain");

  const int n = pb.domain().dim();
  const auto& pieces = pb.payoff().pieces();

  CandidateBuffer cands(n);
  cands.push(x);
  for (const auto& s : pb.payoff().spikes()) cands.push(s.point);
  for (const auto& piece : pieces) seed_piece_candidates(pb, x, piece, cands);
  const size_t n_seeds = cands.size();
  seed_grid(pb.domain(), cfg.grid_per_axis, cands);

  const size_t total = cands.size();
  std::vector<double> values(total);
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < total; ++i) {
    values[i] = pb.objective_unchecked(x, cands.at(i));
    best = std::max(best, values[i]);
  }

  Vec cell(n);
  double cell_diag = 0.0;
  for (int k = 0; k < n; ++k) {
    cell[k] = pb.domain().extent(k) / (cfg.grid_per_axis - 1);
    cell_diag += cell[k] * cell[k];
  }
  cell_diag = std::sqrt(cell_diag);

  double slope_bound = pb.cost().lipschitz_x(pb.domain());
  for (const auto& piece : pieces) slope_bound = std::max(slope_bound, norm2(piece.expr.c));
  const double band = 2.0 * slope_bound * cell_diag + 10.0 * cfg.v_tol;

  // survivors: highest values first, at most two per piece
  std::vector<size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] > values[b]; });
  const size_t cap = std::max<size_t>(12, 2 * pieces.size());
  std::vector<int> per_piece(pieces.size(), 0);
  std::vector<std::pair<Vec, double>> finals;
  const auto dirs = refine_directions(n);
  size_t taken = 0;
  for (size_t oi = 0; oi < total && taken < cap; ++oi) {
    const size_t i = order[oi];
    if (values[i] < best - band) break;
    const Vec start(cands.at(i).begin(), cands.at(i).end());
    const int pi = pb.payoff().piece_index(start);
    if (pi >= 0) {
      if (per_piece[pi] >= 2) continue;
      ++per_piece[pi];
    }
    ++taken;
    if (cfg.refine_depth > 0 && pi >= 0) {
      finals.push_back(refine_within_piece(pb, x, pieces[pi].region, start, values[i], cell,
                                           cfg, dirs));
    } else {
      finals.emplace_back(start, values[i]);
    }
  }

  double value = best;
  for (const auto& [p, v] : finals) value = std::max(value, v);

  // members: every evaluated point within v_tol of the value
  std::vector<Vec> members;
  for (size_t i = 0; i < n_seeds; ++i)
    if (values[i] >= value - cfg.v_tol)
      members.emplace_back(cands.at(i).begin(), cands.at(i).end());
  for (size_t i = n_seeds; i < total; ++i)
    if (values[i] >= value - cfg.v_tol)
      members.emplace_back(cands.at(i).begin(), cands.at(i).end());
  for (const auto& [p, v] : finals)
    if (v >= value - cfg.v_tol) members.push_back(p);

  std::sort(members.begin(), members.end());
  Solution sol;
  sol.anchor.assign(x.begin(), x.end());
  sol.value = value;
  for (const auto& m : members) {
    bool dup = false;
    for (const auto& rep : sol.argmax_set)
      if (distance2(rep, m) <= cfg.y_tol) {
        dup = true;
        break;
      }
    if (!dup) sol.argmax_set.push_back(m);
  }
  for (const auto& rep : sol.argmax_set)
    sol.attained_at_discontinuity.push_back(pb.payoff().discontinuous_at(rep));
  return sol;
}

}  // namespace posopt
