#include "posopt/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace posopt {

PiecewisePayoff::PiecewisePayoff(std::vector<Piece> pieces, std::vector<Spike> spikes,
                                 std::optional<double> bound)
    : pieces_(std::move(pieces)), spikes_(std::move(spikes)) {
  if (pieces_.empty()) throw std::invalid_argument("PiecewisePayoff: needs at least one piece");
  const int n = pieces_.front().region.dim();
  for (const auto& p : pieces_) {
    p.region.validate();
    if (p.region.dim() != n)
      throw std::invalid_argument("PiecewisePayoff: mixed piece dimensions");
    if (!p.expr.c.empty() && static_cast<int>(p.expr.c.size()) != n)
      throw std::invalid_argument("PiecewisePayoff: expression dimension mismatch");
  }
  for (const auto& s : spikes_)
    if (static_cast<int>(s.point.size()) != n)
      throw std::invalid_argument("PiecewisePayoff: spike dimension mismatch");
  const double computed = computed_bound();
  if (bound) {
    if (*bound < computed - 1e-12)
      throw std::invalid_argument("PiecewisePayoff: stated bound is below sup|f|");
    bound_ = *bound;
  } else {
    bound_ = computed;
  }
}

double PiecewisePayoff::computed_bound() const {
  double m = 0.0;
  const int n = dim();
  for (const auto& p : pieces_) {
    // affine on a box: extremes at corners
    Vec corner(n);
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int k = 0; k < n; ++k)
        corner[k] = (mask >> k) & 1 ? p.region.hi[k] : p.region.lo[k];
      m = std::max(m, std::fabs(p.expr.eval(corner)));
    }
  }
  for (const auto& s : spikes_) m = std::max(m, std::fabs(s.value));
  return m;
}

void PiecewisePayoff::validate(const BoxDomain& domain) const {
  const int n = dim();
  if (domain.dim() != n)
    throw std::invalid_argument("PiecewisePayoff: domain dimension mismatch");
  for (const auto& p : pieces_)
    for (int k = 0; k < n; ++k)
      if (p.region.lo[k] < domain.lo()[k] - 1e-12 || p.region.hi[k] > domain.hi()[k] + 1e-12)
        throw std::invalid_argument("PiecewisePayoff: piece region exceeds the domain box");
  for (const auto& s : spikes_)
    if (!domain.contains(s.point))
      throw std::invalid_argument("PiecewisePayoff: spike point outside the domain box");

  // Enumerate the arrangement: per axis, all region bounds and domain bounds,
  // plus midpoints of consecutive breaks. Every product point inside the
  // domain must belong to exactly one piece.
  std::vector<std::vector<double>> probes(n);
  for (int k = 0; k < n; ++k) {
    std::set<double> breaks{domain.lo()[k], domain.hi()[k]};
    for (const auto& p : pieces_) {
      breaks.insert(p.region.lo[k]);
      breaks.insert(p.region.hi[k]);
    }
    std::vector<double> b(breaks.begin(), breaks.end());
    for (size_t i = 0; i < b.size(); ++i) {
      probes[k].push_back(b[i]);
      if (i + 1 < b.size()) probes[k].push_back(0.5 * (b[i] + b[i + 1]));
    }
  }
  Vec pt(n);
  std::vector<size_t> idx(n, 0);
  while (true) {
    for (int k = 0; k < n; ++k) pt[k] = probes[k][idx[k]];
    if (domain.contains(pt)) {
      int owners = 0;
      for (const auto& p : pieces_)
        if (p.region.contains(pt)) ++owners;
      if (owners != 1)
        throw std::invalid_argument("PiecewisePayoff: point " + format_point(pt) + " lies in " +
                                    std::to_string(owners) + " pieces (partition violated)");
    }
    int k = 0;
    while (k < n && ++idx[k] == probes[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
}

int PiecewisePayoff::piece_index(std::span<const double> y) const {
  for (size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].region.contains(y)) return static_cast<int>(i);
  return -1;
}

double PiecewisePayoff::piece_value(std::span<const double> y) const {
  const int i = piece_index(y);
  if (i < 0)
    throw std::invalid_argument("PiecewisePayoff: point " + format_point(y) +
                                " not covered by any piece");
  return pieces_[i].expr.eval(y);
}

const Spike* PiecewisePayoff::spike_at(std::span<const double> y) const {
  for (const auto& s : spikes_) {
    bool eq = true;
    for (size_t k = 0; k < s.point.size(); ++k)
      if (s.point[k] != y[k]) {
        eq = false;
        break;
      }
    if (eq) return &s;
  }
  return nullptr;
}

double PiecewisePayoff::evaluate(std::span<const double> y) const {
  if (!spikes_.empty())
    if (const Spike* s = spike_at(y)) return s->value;
  return piece_value(y);
}

PiecewisePayoff::LocalLimits PiecewisePayoff::limits_at(std::span<const double> y) const {
  LocalLimits out;
  bool first = true;
  for (const auto& p : pieces_) {
    if (!p.region.closure_contains(y)) continue;
    const double v = p.expr.eval(y);
    if (first) {
      out.limit_min = out.limit_max = v;
      first = false;
    } else {
      out.limit_min = std::min(out.limit_min, v);
      out.limit_max = std::max(out.limit_max, v);
    }
    ++out.adjacent_pieces;
  }
  if (first)
    throw std::invalid_argument("PiecewisePayoff: point " + format_point(y) +
                                " not adjacent to any piece");
  out.own = evaluate(y);
  return out;
}

bool PiecewisePayoff::discontinuous_at(std::span<const double> y, double tol) const {
  const LocalLimits l = limits_at(y);
  const double lo = std::min(l.limit_min, l.own);
  const double hi = std::max(l.limit_max, l.own);
  return hi - lo > tol;
}

PiecewisePayoff PiecewisePayoff::constant(const BoxDomain& domain, double value) {
  std::vector<Piece> pieces;
  pieces.push_back({Region::closed(domain.lo(), domain.hi()), AffineExpr::constant(value)});
  return PiecewisePayoff(std::move(pieces));
}

RegularizedPayoff::RegularizedPayoff(PiecewisePayoff base) : base_(std::move(base)) {
  for (const auto& s : base_.spikes()) {
    const auto l = base_.limits_at(s.point);
    if (std::fabs(s.value - l.limit_max) > 1e-12 && std::fabs(s.value - l.limit_min) > 1e-12)
      regularity_violated_ = true;
  }
}

double RegularizedPayoff::evaluate(std::span<const double> y) const {
  double best;
  bool found = false;
  for (const auto& p : base_.pieces()) {
    if (!p.region.closure_contains(y)) continue;
    const double v = p.expr.eval(y);
    if (!found || v > best) {
      best = v;
      found = true;
    }
  }
  if (!found)
    throw std::invalid_argument("RegularizedPayoff: point " + format_point(y) +
                                " outside the payoff support");
  if (!base_.spikes().empty())
    if (const Spike* s = base_.spike_at(y)) best = std::max(best, s->value);
  return best;
}

RegularizedPayoff regularize(PiecewisePayoff payoff) {
  return RegularizedPayoff(std::move(payoff));
}

}  // namespace posopt
