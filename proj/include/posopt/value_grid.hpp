#pragma once

#include <string>
#include <utility>
#include <vector>

#include "posopt/solver.hpp"

namespace posopt {

enum class Execution { serial, parallel };

/// V sampled on a regular grid over the domain box (cells_per_axis intervals,
/// cells_per_axis + 1 nodes per axis, endpoints included). The substrate for
/// all envelope analyses.
class ValueGrid {
 public:
  ValueGrid(BoxDomain domain, int cells_per_axis);

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  int cells_per_axis() const { return cells_; }
  int nodes_per_axis() const { return cells_ + 1; }
  size_t node_count() const { return values.size(); }
  double spacing(int axis) const { return domain_.extent(axis) / cells_; }
  double max_spacing() const;

  double coord(int axis, int i) const {
    return domain_.lo()[axis] + domain_.extent(axis) * i / cells_;
  }
  size_t flat(std::span<const int> idx) const;
  void unflatten(size_t flat, std::span<int> idx) const;
  Vec point(size_t flat) const;
  bool is_interior(size_t flat) const;
  /// Nearest node to a coordinate vector.
  size_t nearest_node(std::span<const double> x) const;

  std::vector<double> values;
  std::vector<std::string> warnings;
  // 1-D only: V solved at region-boundary coordinates that fall between nodes
  std::vector<std::pair<double, double>> extra_boundary_samples;
  SolveConfig config_echo;

 private:
  BoxDomain domain_;
  int cells_;
};

/// Solves V at every grid node. Nodes are independent; the parallel path uses
/// OpenMP with per-node outputs, so results are identical to the serial
/// reference bit for bit.
ValueGrid value_function(const Problem& problem, int cells_per_axis,
                         const SolveConfig& cfg = {}, Execution exec = Execution::parallel);

/// Plain-loop reference implementation.
ValueGrid value_function_serial(const Problem& problem, int cells_per_axis,
                                const SolveConfig& cfg = {});

}  // namespace posopt
