#pragma once

#include <span>
#include <variant>
#include <vector>

#include "posopt/geometry.hpp"

namespace posopt {

/// Continuous non-decreasing piecewise-linear curve on R with g(0) = 0.
/// Defined by knot points plus end slopes; linear extension beyond the knots.
struct Curve1D {
  std::vector<double> z;  // sorted knot abscissae
  std::vector<double> v;  // knot values
  double slope_left = 0.0;
  double slope_right = 0.0;

  double eval(double t) const;
  void validate() const;
  double max_slope() const;
  /// Zero on (-inf, 0] and non-negative everywhere.
  bool one_sided_nonneg() const;
  double max_abs_on(double t_lo, double t_hi) const;

  /// max(0, slope * t)
  static Curve1D one_sided(double slope);
};

/// alpha * ||y - x||2
struct ScaledNorm {
  double alpha = 1.0;
};

/// sum_i g_i(y_i - x_i)
struct Separable {
  std::vector<Curve1D> curves;
};

/// coeff * ||y - x||^power, power > 1 (strictly convex radial transformation)
struct ConvexRadial {
  double coeff = 1.0;
  double power = 2.0;
};

/// Movement cost g(x, y) in one of three families.
class CostSpec {
 public:
  using Variant = std::variant<ScaledNorm, Separable, ConvexRadial>;

  CostSpec(ScaledNorm s);     // NOLINT(google-explicit-constructor)
  CostSpec(Separable s);      // NOLINT(google-explicit-constructor)
  CostSpec(ConvexRadial s);   // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }
  void validate(int dim) const;

  double eval(std::span<const double> x, std::span<const double> y) const;

  /// Lipschitz constant of x -> g(x, y) over the box (alpha for ScaledNorm).
  double lipschitz_x(const BoxDomain& domain) const;
  double max_abs(const BoxDomain& domain) const;
  bool is_metric() const;

  const ScaledNorm* as_scaled_norm() const { return std::get_if<ScaledNorm>(&v_); }
  const Separable* as_separable() const { return std::get_if<Separable>(&v_); }
  const ConvexRadial* as_convex_radial() const { return std::get_if<ConvexRadial>(&v_); }

 private:
  Variant v_;
};

}  // namespace posopt
