#include "posopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace posopt {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool almost_equal(std::span<const double> a, std::span<const double> b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

std::string format_point(std::span<const double> p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ")";
  return os.str();
}

BoxDomain::BoxDomain(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size())
    throw std::invalid_argument("BoxDomain: lo/hi must be nonempty and of equal dimension");
  for (size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i]))
      throw std::invalid_argument("BoxDomain: lo < hi required on axis " + std::to_string(i));
    if (lo_[i] > 0.0 || hi_[i] < 0.0)
      throw std::invalid_argument("BoxDomain: box must contain the origin (axis " +
                                  std::to_string(i) + ")");
  }
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (size_t i = 0; i < lo_.size(); ++i) {
    const double e = hi_[i] - lo_[i];
    s += e * e;
  }
  return std::sqrt(s);
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != lo_.size()) return false;
  for (size_t i = 0; i < lo_.size(); ++i)
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  return true;
}

bool BoxDomain::strictly_inside(std::span<const double> x) const {
  if (x.size() != lo_.size()) return false;
  for (size_t i = 0; i < lo_.size(); ++i)
    if (x[i] <= lo_[i] || x[i] >= hi_[i]) return false;
  return true;
}

Vec BoxDomain::clamp(std::span<const double> x) const {
  Vec out(x.begin(), x.end());
  for (size_t i = 0; i < lo_.size(); ++i) out[i] = std::clamp(out[i], lo_[i], hi_[i]);
  return out;
}

bool Region::contains(std::span<const double> y) const {
  for (size_t i = 0; i < lo.size(); ++i) {
    if (lo_closed[i] ? y[i] < lo[i] : y[i] <= lo[i]) return false;
    if (hi_closed[i] ? y[i] > hi[i] : y[i] >= hi[i]) return false;
  }
  return true;
}

bool Region::closure_contains(std::span<const double> y) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (y[i] < lo[i] || y[i] > hi[i]) return false;
  return true;
}

Vec Region::clamp(std::span<const double> x) const {
  Vec out(x.begin(), x.end());
  for (size_t i = 0; i < lo.size(); ++i) out[i] = std::clamp(out[i], lo[i], hi[i]);
  return out;
}

void Region::validate() const {
  const size_t n = lo.size();
  if (n == 0 || hi.size() != n || lo_closed.size() != n || hi_closed.size() != n)
    throw std::invalid_argument("Region: inconsistent field sizes");
  for (size_t i = 0; i < n; ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument("Region: degenerate on axis " + std::to_string(i));
}

Region Region::closed(Vec lo, Vec hi) {
  const size_t n = lo.size();
  return Region{std::move(lo), std::move(hi), std::vector<bool>(n, true),
                std::vector<bool>(n, true)};
}

double AffineExpr::eval(std::span<const double> y) const {
  double v = c0;
  for (size_t i = 0; i < c.size(); ++i) v += c[i] * y[i];
  return v;
}

}  // namespace posopt
