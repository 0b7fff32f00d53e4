#include "posopt/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace posopt {

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("scenario: unknown parameter '" + k + "'");
  }
}

PiecewisePayoff step_payoff_1d() {
  // 0 on [0,1), y on [1,2]
  std::vector<PiecewisePayoff::Piece> pieces;
  pieces.push_back({Region{{0.0}, {1.0}, {true}, {false}}, AffineExpr::constant(0.0)});
  pieces.push_back({Region{{1.0}, {2.0}, {true}, {true}}, AffineExpr{0.0, {1.0}}});
  return PiecewisePayoff(std::move(pieces));
}

Scenario make_step1d(const std::map<std::string, double>& params) {
  reject_unknown(params, {"alpha"});
  const double alpha = get_param(params, "alpha", 2.0);
  if (!(alpha > 1.0)) throw std::invalid_argument("step1d: alpha must exceed 1");

  Scenario s;
  s.name = "step1d";
  s.params = {{"alpha", alpha}};
  s.kind = Scenario::Kind::box;
  s.problem.emplace(step_payoff_1d(), CostSpec(ScaledNorm{alpha}), BoxDomain({0.0}, {2.0}));
  const double knee = 1.0 - 1.0 / alpha;
  s.value_oracle = [alpha, knee](std::span<const double> x) {
    if (x[0] <= knee) return 0.0;
    if (x[0] < 1.0) return 1.0 - alpha * (1.0 - x[0]);
    return x[0];
  };
  s.argmax_oracle = [alpha, knee](std::span<const double> x)
      -> std::optional<std::vector<Vec>> {
    if (x[0] == knee) return std::vector<Vec>{{x[0]}, {1.0}};
    if (x[0] < knee || x[0] >= 1.0) return std::vector<Vec>{{x[0]}};
    return std::vector<Vec>{{1.0}};
  };
  s.notes = "one-dimensional step payoff with scaled absolute-value cost; the value "
            "function has a convex kink where jumping becomes worthwhile and a concave "
            "kink at the step";
  return s;
}

Scenario make_indicator2d(const std::map<std::string, double>& params) {
  reject_unknown(params, {"alpha"});
  const double alpha = get_param(params, "alpha", 2.0);
  if (!(alpha > 1.0)) throw std::invalid_argument("indicator2d: alpha must exceed 1");

  Scenario s;
  s.name = "indicator2d";
  s.params = {{"alpha", alpha}};
  s.kind = Scenario::Kind::box;
  // quadrant indicator: 1 on [1,2]^2, 0 elsewhere (L-shape split into boxes)
  std::vector<PiecewisePayoff::Piece> pieces;
  pieces.push_back({Region{{0.0, 0.0}, {1.0, 2.0}, {true, true}, {false, true}},
                    AffineExpr::constant(0.0)});
  pieces.push_back({Region{{1.0, 0.0}, {2.0, 1.0}, {true, true}, {true, false}},
                    AffineExpr::constant(0.0)});
  pieces.push_back({Region{{1.0, 1.0}, {2.0, 2.0}, {true, true}, {true, true}},
                    AffineExpr::constant(1.0)});
  s.problem.emplace(PiecewisePayoff(std::move(pieces)), CostSpec(ScaledNorm{alpha}),
                    BoxDomain({0.0, 0.0}, {2.0, 2.0}));
  auto quadrant_distance = [](std::span<const double> x) {
    const double dx = std::max(0.0, 1.0 - x[0]);
    const double dy = std::max(0.0, 1.0 - x[1]);
    return std::hypot(dx, dy);
  };
  s.value_oracle = [alpha, quadrant_distance](std::span<const double> x) {
    return std::max(0.0, 1.0 - alpha * quadrant_distance(x));
  };
  s.argmax_oracle = [alpha, quadrant_distance](std::span<const double> x)
      -> std::optional<std::vector<Vec>> {
    const double d = quadrant_distance(x);
    if (d == 0.0) return std::vector<Vec>{{x[0], x[1]}};
    const Vec proj{std::max(1.0, x[0]), std::max(1.0, x[1])};
    const double jump = 1.0 - alpha * d;
    if (jump > 0.0) return std::vector<Vec>{proj};
    if (jump < 0.0) return std::vector<Vec>{{x[0], x[1]}};
    return std::vector<Vec>{{x[0], x[1]}, proj};
  };
  s.notes = "two-dimensional quadrant indicator payoff with scaled Euclidean cost; the "
            "kink set is the quadrant boundary, its offset at the break-even distance and "
            "the connecting arc";
  return s;
}

Scenario make_spike(const std::map<std::string, double>& params) {
  reject_unknown(params, {});
  Scenario s;
  s.name = "spike";
  s.params = {};
  s.kind = Scenario::Kind::box;
  std::vector<PiecewisePayoff::Piece> pieces;
  pieces.push_back({Region{{0.0}, {2.0}, {true}, {true}}, AffineExpr::constant(0.0)});
  s.problem.emplace(PiecewisePayoff(std::move(pieces), {Spike{{1.0}, 1.0}}),
                    CostSpec(ScaledNorm{1.0}), BoxDomain({0.0}, {2.0}));
  s.value_oracle = [](std::span<const double> x) { return 1.0 - std::fabs(1.0 - x[0]); };
  s.argmax_oracle = [](std::span<const double> x) -> std::optional<std::vector<Vec>> {
    const double v = 1.0 - std::fabs(1.0 - x[0]);
    if (v > 0.0) return std::vector<Vec>{{1.0}};
    return std::vector<Vec>{{x[0]}, {1.0}};
  };
  s.notes = "payoff vanishing everywhere except an isolated unit spike; the one-sided "
            "limit assumption fails, yet the value function is the distance cone";
  return s;
}

Scenario make_ring(const std::map<std::string, double>& params) {
  reject_unknown(params, {});
  Scenario s;
  s.name = "ring";
  s.params = {};
  s.kind = Scenario::Kind::ring;
  s.ring_domain = RingDomain{2.0};
  s.ring_payoff.emplace(step_payoff_1d());
  s.value_oracle = [](std::span<const double> x) { return 1.0 + std::fabs(1.0 - x[0]); };
  s.argmax_oracle = [](std::span<const double> x) -> std::optional<std::vector<Vec>> {
    if (x[0] < 1.0) return std::vector<Vec>{{0.0}};
    return std::nullopt;  // an arc of maximizers; reported by the ring solver
  };
  s.notes = "step payoff on the circle obtained by gluing the interval endpoints; the "
            "glued point inherits the higher limit and the value function is a tent over "
            "the far pole";
  return s;
}

Scenario make_plane_bound(const std::map<std::string, double>& params) {
  reject_unknown(params, {"c", "p"});
  const double c = get_param(params, "c", 1.0);
  const double p = get_param(params, "p", 2.0);
  if (!(c > 0.0)) throw std::invalid_argument("plane_bound: c must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("plane_bound: p must exceed 1");

  Scenario s;
  s.name = "plane_bound";
  s.params = {{"c", c}, {"p", p}};
  s.kind = Scenario::Kind::plane_pair;
  s.anchor_window.emplace(Vec{0.0}, Vec{3.0});
  s.plane = AffineExpr{0.0, {c}};

  const double rstar = std::pow(c / p, 1.0 / (p - 1.0));
  const double pad = std::ceil(std::max(1.0, rstar) + 1.0);
  const double lo = 0.0 - pad;
  const double hi = 3.0 + pad;

  // floor-style steps scaled by the plane slope: c * floor(y) <= c * y
  std::vector<PiecewisePayoff::Piece> pieces;
  for (double k = lo; k < hi - 0.5; k += 1.0) {
    const bool last = k + 1.0 >= hi - 0.5;
    pieces.push_back({Region{{k}, {k + 1.0}, {true}, {last}}, AffineExpr::constant(c * k)});
  }
  s.problem.emplace(PiecewisePayoff(std::move(pieces)),
                    CostSpec(ConvexRadial{1.0, p}), BoxDomain({lo}, {hi}));

  s.value_oracle = [c, p, rstar](std::span<const double> x) {
    return c * (x[0] + rstar) - std::pow(rstar, p);
  };
  s.argmax_oracle = [rstar](std::span<const double> x) -> std::optional<std::vector<Vec>> {
    return std::vector<Vec>{{x[0] + rstar}};
  };
  s.notes = "plane payoff against a strictly convex radial cost, paired with a staircase "
            "payoff bounded by the plane; the plane value is an exact affine shift and "
            "bounds the staircase value";
  return s;
}

}  // namespace

Scenario build_scenario(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "step1d") return make_step1d(params);
  if (name == "indicator2d") return make_indicator2d(params);
  if (name == "spike") return make_spike(params);
  if (name == "ring") return make_ring(params);
  if (name == "plane_bound") return make_plane_bound(params);
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const char* name : {"step1d", "indicator2d", "spike", "ring", "plane_bound"}) {
    const Scenario s = build_scenario(name, {});
    std::string schema;
    for (const auto& [k, v] : s.params) {
      if (!schema.empty()) schema += ", ";
      schema += k + " (default " + std::to_string(v) + ")";
    }
    out.push_back({s.name, schema, s.notes});
  }
  return out;
}

}  // namespace posopt
