#include "posopt/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace posopt {

double Curve1D::eval(double t) const {
  if (z.empty()) return 0.0;
  if (t <= z.front()) return v.front() + slope_left * (t - z.front());
  if (t >= z.back()) return v.back() + slope_right * (t - z.back());
  const auto it = std::upper_bound(z.begin(), z.end(), t);
  const size_t j = static_cast<size_t>(it - z.begin());
  const double w = (t - z[j - 1]) / (z[j] - z[j - 1]);
  return v[j - 1] + w * (v[j] - v[j - 1]);
}

void Curve1D::validate() const {
  if (z.empty() || z.size() != v.size())
    throw std::invalid_argument("Curve1D: needs matching knot abscissae and values");
  for (size_t i = 1; i < z.size(); ++i) {
    if (!(z[i] > z[i - 1])) throw std::invalid_argument("Curve1D: knots must be increasing");
    if (v[i] < v[i - 1] - 1e-15)
      throw std::invalid_argument("Curve1D: values must be non-decreasing");
  }
  if (slope_left < 0.0 || slope_right < 0.0)
    throw std::invalid_argument("Curve1D: end slopes must be non-negative");
  if (std::fabs(eval(0.0)) > 1e-15)
    throw std::invalid_argument("Curve1D: curve must vanish at zero displacement");
}

double Curve1D::max_slope() const {
  double m = std::max(slope_left, slope_right);
  for (size_t i = 1; i < z.size(); ++i) m = std::max(m, (v[i] - v[i - 1]) / (z[i] - z[i - 1]));
  return m;
}

bool Curve1D::one_sided_nonneg() const {
  if (slope_left != 0.0) return false;
  for (size_t i = 0; i < z.size(); ++i) {
    if (v[i] < 0.0) return false;
    if (z[i] <= 0.0 && v[i] != 0.0) return false;
  }
  // non-decreasing from 0 at the origin keeps the extension non-negative
  return eval(0.0) == 0.0;
}

double Curve1D::max_abs_on(double t_lo, double t_hi) const {
  double m = std::max(std::fabs(eval(t_lo)), std::fabs(eval(t_hi)));
  for (size_t i = 0; i < z.size(); ++i)
    if (z[i] >= t_lo && z[i] <= t_hi) m = std::max(m, std::fabs(v[i]));
  return m;
}

Curve1D Curve1D::one_sided(double slope) {
  Curve1D c;
  c.z = {0.0};
  c.v = {0.0};
  c.slope_left = 0.0;
  c.slope_right = slope;
  return c;
}

CostSpec::CostSpec(ScaledNorm s) : v_(s) {}
CostSpec::CostSpec(Separable s) : v_(std::move(s)) {}
CostSpec::CostSpec(ConvexRadial s) : v_(s) {}

void CostSpec::validate(int dim) const {
  if (const auto* s = as_scaled_norm()) {
    if (s->alpha < 0.0) throw std::invalid_argument("ScaledNorm: alpha must be >= 0");
  } else if (const auto* s = as_separable()) {
    if (static_cast<int>(s->curves.size()) != dim)
      throw std::invalid_argument("Separable: one curve per axis required");
    for (const auto& c : s->curves) c.validate();
  } else if (const auto* s = as_convex_radial()) {
    if (!(s->coeff > 0.0)) throw std::invalid_argument("ConvexRadial: coeff must be > 0");
    if (!(s->power > 1.0)) throw std::invalid_argument("ConvexRadial: power must be > 1");
  }
}

double CostSpec::eval(std::span<const double> x, std::span<const double> y) const {
  if (const auto* s = as_scaled_norm()) return s->alpha * distance2(x, y);
  if (const auto* s = as_separable()) {
    double sum = 0.0;
    for (size_t i = 0; i < s->curves.size(); ++i) sum += s->curves[i].eval(y[i] - x[i]);
    return sum;
  }
  const auto* s = as_convex_radial();
  return s->coeff * std::pow(distance2(x, y), s->power);
}

double CostSpec::lipschitz_x(const BoxDomain& domain) const {
  if (const auto* s = as_scaled_norm()) return s->alpha;
  if (const auto* s = as_separable()) {
    double sq = 0.0;
    for (const auto& c : s->curves) {
      const double m = c.max_slope();
      sq += m * m;
    }
    return std::sqrt(sq);
  }
  const auto* s = as_convex_radial();
  const double d = domain.diameter();
  return s->coeff * s->power * std::pow(d, s->power - 1.0);
}

double CostSpec::max_abs(const BoxDomain& domain) const {
  if (const auto* s = as_scaled_norm()) return s->alpha * domain.diameter();
  if (const auto* s = as_separable()) {
    double sum = 0.0;
    for (size_t i = 0; i < s->curves.size(); ++i) {
      const double e = domain.extent(static_cast<int>(i));
      sum += s->curves[i].max_abs_on(-e, e);
    }
    return sum;
  }
  const auto* s = as_convex_radial();
  return s->coeff * std::pow(domain.diameter(), s->power);
}

bool CostSpec::is_metric() const {
  const auto* s = as_scaled_norm();
  return s != nullptr && s->alpha > 0.0;
}

}  // namespace posopt
