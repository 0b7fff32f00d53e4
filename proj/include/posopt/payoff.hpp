#pragma once

#include <optional>
#include <span>
#include <vector>

#include "posopt/geometry.hpp"

namespace posopt {

/// Isolated point override of the payoff value.
struct Spike {
  Vec point;
  double value = 0.0;
};

/// Bounded payoff given as a finite partition of the domain box into
/// axis-aligned regions carrying affine expressions, plus optional isolated
/// spike overrides. Face open/closed flags give every boundary point a unique
/// owning piece, so one-sided limits at boundaries are exact affine
/// evaluations rather than numeric estimates.
class PiecewisePayoff {
 public:
  struct Piece {
    Region region;
    AffineExpr expr;
  };

  PiecewisePayoff(std::vector<Piece> pieces, std::vector<Spike> spikes = {},
                  std::optional<double> bound = std::nullopt);

  int dim() const { return pieces_.front().region.dim(); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<Spike>& spikes() const { return spikes_; }
  double bound() const { return bound_; }

  /// Exhaustive partition check: every point of the domain (cells, faces,
  /// edges, corners of the induced arrangement) must lie in exactly one piece.
  void validate(const BoxDomain& domain) const;

  /// Raw payoff value: owning piece expression, spike overrides applied.
  double evaluate(std::span<const double> y) const;

  /// Owning-piece value, ignoring spikes.
  double piece_value(std::span<const double> y) const;

  int piece_index(std::span<const double> y) const;  // -1 if no piece contains y

  const Spike* spike_at(std::span<const double> y) const;

  /// One-sided structure at a point: limits along every piece whose closure
  /// contains y, plus the stored value.
  struct LocalLimits {
    double limit_min = 0.0;
    double limit_max = 0.0;
    double own = 0.0;
    int adjacent_pieces = 0;
  };
  LocalLimits limits_at(std::span<const double> y) const;

  bool discontinuous_at(std::span<const double> y, double tol = 1e-12) const;

  /// Largest |f| over pieces (region corners) and spikes.
  double computed_bound() const;

  static PiecewisePayoff constant(const BoxDomain& domain, double value);

 private:
  std::vector<Piece> pieces_;
  std::vector<Spike> spikes_;
  double bound_ = 0.0;
};

/// Payoff with the attained-supremum evaluation rule: every point takes the
/// maximum of its own value and the limits from all adjacent pieces. Away from
/// region boundaries and spikes this agrees with the base payoff exactly.
class RegularizedPayoff {
 public:
  explicit RegularizedPayoff(PiecewisePayoff base);

  const PiecewisePayoff& base() const { return base_; }
  double evaluate(std::span<const double> y) const;

  /// True when some spike value is neither the limsup nor the liminf of the
  /// payoff at its point, i.e. the one-sided-limit evaluation assumption does
  /// not hold there.
  bool regularity_violated() const { return regularity_violated_; }

 private:
  PiecewisePayoff base_;
  bool regularity_violated_ = false;
};

RegularizedPayoff regularize(PiecewisePayoff payoff);

}  // namespace posopt
