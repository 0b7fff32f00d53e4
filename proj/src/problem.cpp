#include "posopt/problem.hpp"

#include <stdexcept>
#include <utility>

namespace posopt {

Problem::Problem(PiecewisePayoff payoff, CostSpec cost, BoxDomain domain)
    : domain_(std::move(domain)), cost_(std::move(cost)), regularized_(std::move(payoff)) {
  regularized_.base().validate(domain_);
  cost_.validate(domain_.dim());
}

double Problem::objective(std::span<const double> x, std::span<const double> y) const {
  if (!domain_.contains(x))
    throw std::invalid_argument("objective: anchor " + format_point(x) + " outside the domain");
  if (!domain_.contains(y))
    throw std::invalid_argument("objective: choice " + format_point(y) + " outside the domain");
  return objective_unchecked(x, y);
}

double evaluate_objective(const Problem& problem, std::span<const double> x,
                          std::span<const double> y) {
  return problem.objective(x, y);
}

}  // namespace posopt
