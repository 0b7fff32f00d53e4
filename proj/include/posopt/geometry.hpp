#pragma once

#include <span>
#include <string>
#include <vector>

namespace posopt {

using Vec = std::vector<double>;

double norm2(std::span<const double> v);
double distance2(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
bool almost_equal(std::span<const double> a, std::span<const double> b, double tol);
std::string format_point(std::span<const double> p);

/// Closed axis-aligned box containing the origin; the feasible set for both
/// anchors and choices.
class BoxDomain {
 public:
  BoxDomain(Vec lo, Vec hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  double extent(int axis) const { return hi_[axis] - lo_[axis]; }
  double diameter() const;

  bool contains(std::span<const double> x) const;
  bool strictly_inside(std::span<const double> x) const;
  Vec clamp(std::span<const double> x) const;

 private:
  Vec lo_, hi_;
};

/// Axis-aligned sub-box with per-face open/closed flags. Face ownership makes
/// piece membership unambiguous at shared boundaries.
struct Region {
  Vec lo, hi;
  std::vector<bool> lo_closed, hi_closed;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> y) const;
  bool closure_contains(std::span<const double> y) const;
  Vec clamp(std::span<const double> x) const;
  void validate() const;

  static Region closed(Vec lo, Vec hi);
};

/// c0 + c·y; an empty coefficient vector means a constant.
struct AffineExpr {
  double c0 = 0.0;
  Vec c;

  double eval(std::span<const double> y) const;
  static AffineExpr constant(double v) { return {v, {}}; }
};

}  // namespace posopt
