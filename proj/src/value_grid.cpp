#include "posopt/value_grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace posopt {

ValueGrid::ValueGrid(BoxDomain domain, int cells_per_axis)
    : domain_(std::move(domain)), cells_(cells_per_axis) {
  if (cells_ < 2) throw std::invalid_argument("ValueGrid: cells_per_axis must be >= 2");
  size_t count = 1;
  for (int k = 0; k < domain_.dim(); ++k) count *= static_cast<size_t>(cells_ + 1);
  values.assign(count, 0.0);
}

double ValueGrid::max_spacing() const {
  double h = 0.0;
  for (int k = 0; k < dim(); ++k) h = std::max(h, spacing(k));
  return h;
}

size_t ValueGrid::flat(std::span<const int> idx) const {
  size_t f = 0;
  for (int k = 0; k < dim(); ++k) f = f * (cells_ + 1) + static_cast<size_t>(idx[k]);
  return f;
}

void ValueGrid::unflatten(size_t flat, std::span<int> idx) const {
  for (int k = dim() - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % (cells_ + 1));
    flat /= (cells_ + 1);
  }
}

Vec ValueGrid::point(size_t flat) const {
  const int n = dim();
  std::vector<int> idx(n);
  unflatten(flat, idx);
  Vec p(n);
  for (int k = 0; k < n; ++k) p[k] = coord(k, idx[k]);
  return p;
}

bool ValueGrid::is_interior(size_t flat) const {
  const int n = dim();
  std::vector<int> idx(n);
  unflatten(flat, idx);
  for (int k = 0; k < n; ++k)
    if (idx[k] == 0 || idx[k] == cells_) return false;
  return true;
}

size_t ValueGrid::nearest_node(std::span<const double> x) const {
  const int n = dim();
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) {
    const double t = (x[k] - domain_.lo()[k]) / domain_.extent(k) * cells_;
    idx[k] = std::clamp(static_cast<int>(std::lround(t)), 0, cells_);
  }
  return flat(idx);
}

namespace {

void check_boundary_alignment(const Problem& pb, const SolveConfig& cfg, ValueGrid& grid) {
  const int n = grid.dim();
  for (int k = 0; k < n; ++k) {
    std::set<double> coords;
    for (const auto& piece : pb.payoff().pieces()) {
      for (double c : {piece.region.lo[k], piece.region.hi[k]})
        if (c > pb.domain().lo()[k] + 1e-12 && c < pb.domain().hi()[k] - 1e-12)
          coords.insert(c);
    }
    for (double c : coords) {
      const double t = (c - pb.domain().lo()[k]) / grid.spacing(k);
      if (std::fabs(t - std::lround(t)) > 1e-9) {
        grid.warnings.push_back("region boundary coordinate " + std::to_string(c) + " on axis " +
                                std::to_string(k) + " falls between grid nodes");
        if (n == 1)
          grid.extra_boundary_samples.emplace_back(c, solve(pb, Vec{c}, cfg).value);
      }
    }
  }
}

}  // namespace

ValueGrid value_function(const Problem& problem, int cells_per_axis, const SolveConfig& cfg,
                         Execution exec) {
  cfg.validate();
  if (exec == Execution::serial) return value_function_serial(problem, cells_per_axis, cfg);

  ValueGrid grid(problem.domain(), cells_per_axis);
  grid.config_echo = cfg;
  const long long count = static_cast<long long>(grid.node_count());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    const Vec x = grid.point(static_cast<size_t>(i));
    grid.values[static_cast<size_t>(i)] = solve(problem, x, cfg).value;
  }
  check_boundary_alignment(problem, cfg, grid);
  return grid;
}

ValueGrid value_function_serial(const Problem& problem, int cells_per_axis,
                                const SolveConfig& cfg) {
  cfg.validate();
  ValueGrid grid(problem.domain(), cells_per_axis);
  grid.config_echo = cfg;
  for (size_t i = 0; i < grid.node_count(); ++i) {
    const Vec x = grid.point(i);
    grid.values[i] = solve(problem, x, cfg).value;
  }
  check_boundary_alignment(problem, cfg, grid);
  return grid;
}

}  // namespace posopt
