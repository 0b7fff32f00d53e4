#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posopt/problem.hpp"
#include "posopt/ring.hpp"

namespace posopt {

/// Named, parameterized instance with closed-form oracles for golden tests.
struct Scenario {
  enum class Kind { box, ring, plane_pair };

  std::string name;
  std::map<std::string, double> params;
  Kind kind = Kind::box;

  std::optional<Problem> problem;             // box instances; the bounded
                                              // problem for plane pairs
  std::optional<PiecewisePayoff> ring_payoff;
  RingDomain ring_domain;

  // plane-pair extras
  std::optional<AffineExpr> plane;
  std::optional<BoxDomain> anchor_window;

  std::function<double(std::span<const double>)> value_oracle;
  /// Closed-form maximizer set where known; nullopt where the scenario leaves
  /// it to numeric analysis.
  std::function<std::optional<std::vector<Vec>>(std::span<const double>)> argmax_oracle;

  std::string notes;
};

/// Builders: step1d(alpha), indicator2d(alpha), spike(), ring(),
/// plane_bound(c, p). The two alpha scenarios require alpha > 1.
Scenario build_scenario(const std::string& name, const std::map<std::string, double>& params = {});

struct ScenarioInfo {
  std::string name;
  std::string param_schema;
  std::string notes;
};

std::vector<ScenarioInfo> list_scenarios();

}  // namespace posopt
