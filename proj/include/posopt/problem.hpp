#pragma once

#include <span>

#include "posopt/cost.hpp"
#include "posopt/geometry.hpp"
#include "posopt/payoff.hpp"

namespace posopt {

/// A positioning choice instance: payoff, movement cost and the box domain.
/// The regularized payoff is built on construction so every evaluation of the
/// objective sees the attained-supremum values at boundaries.
class Problem {
 public:
  Problem(PiecewisePayoff payoff, CostSpec cost, BoxDomain domain);

  const BoxDomain& domain() const { return domain_; }
  const CostSpec& cost() const { return cost_; }
  const PiecewisePayoff& payoff() const { return regularized_.base(); }
  const RegularizedPayoff& regularized() const { return regularized_; }

  /// Spike overrides break the one-sided-limit evaluation assumption; the
  /// attained-supremum construction is not guaranteed for such payoffs and
  /// solvers must seed spike points explicitly.
  bool regularity_violated() const { return regularized_.regularity_violated(); }

  /// f*(y) - g(x, y), domain-checked.
  double objective(std::span<const double> x, std::span<const double> y) const;

  /// Hot path used by solvers; callers guarantee x, y in the domain.
  double objective_unchecked(std::span<const double> x, std::span<const double> y) const {
    return regularized_.evaluate(y) - cost_.eval(x, y);
  }

 private:
  BoxDomain domain_;
  CostSpec cost_;
  RegularizedPayoff regularized_;
};

/// f*(y) - g(x, y) with domain checks.
double evaluate_objective(const Problem& problem, std::span<const double> x,
                          std::span<const double> y);

}  // namespace posopt
