#include "posopt/dini.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "posopt/envelope.hpp"

namespace posopt {

namespace {

// deterministic gaussian via Box-Muller on raw mt19937_64 output
double u01(std::mt19937_64& g) { return ((g() >> 11) + 0.5) * 0x1.0p-53; }

Vec random_unit_vector(std::mt19937_64& g, int n) {
  Vec v(n);
  while (true) {
    for (int k = 0; k < n; ++k) {
      const double u1 = u01(g), u2 = u01(g);
      v[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    const double nv = norm2(v);
    if (nv > 1e-6) {
      for (double& x : v) x /= nv;
      return v;
    }
  }
}

// least-squares fit z = a + b*t
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<std::pair<double, double>>& pts) {
  const size_t n = pts.size();
  double st = 0, sz = 0, stt = 0, stz = 0;
  for (const auto& [t, z] : pts) {
    st += t;
    sz += z;
    stt += t * t;
    stz += t * z;
  }
  LineFit f;
  const double det = n * stt - st * st;
  if (std::fabs(det) < 1e-300) {
    f.intercept = sz / n;
  } else {
    f.slope = (n * stz - st * sz) / det;
    f.intercept = (sz - f.slope * st) / n;
  }
  double ss = 0;
  for (const auto& [t, z] : pts) {
    const double e = z - (f.intercept + f.slope * t);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace

DiniEstimate upper_dini_from_probe(const RayProbe& probe, std::span<const double> v,
                                   const DiniSchedule& schedule) {
  const int n = static_cast<int>(v.size());
  if (std::fabs(norm2(v) - 1.0) > 1e-9)
    throw std::invalid_argument("upper_dini: direction must be a unit vector");

  // direction net: v plus per-axis perturbations, renormalized
  std::vector<Vec> net;
  net.emplace_back(v.begin(), v.end());
  for (int k = 0; k < n; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec w(v.begin(), v.end());
      w[k] += sgn * schedule.delta;
      const double nw = norm2(w);
      if (nw > 1e-12) {
        for (double& c : w) c /= nw;
        net.push_back(std::move(w));
      }
    }
  }

  DiniEstimate est;
  est.direction.assign(v.begin(), v.end());
  double t = schedule.t0;
  for (int level = 0; level < schedule.levels; ++level, t *= schedule.rho) {
    bool any = false;
    double sup = 0.0;
    for (const Vec& w : net) {
      const auto dh = probe(w, t);
      if (!dh) continue;
      const double q = *dh / t;
      if (!any || q > sup) sup = q;
      any = true;
    }
    if (any) est.quotient_trace.emplace_back(t, sup);
  }
  if (est.quotient_trace.empty())
    throw std::runtime_error("upper_dini: no feasible step in the given direction");

  // classification: fit sup_quotient * t against t on the tail; a negative
  // intercept with a tight fit marks a K/t downward jump
  const size_t tail = std::min<size_t>(10, est.quotient_trace.size());
  std::vector<std::pair<double, double>> zs;
  for (size_t i = est.quotient_trace.size() - tail; i < est.quotient_trace.size(); ++i) {
    const auto& [tk, qk] = est.quotient_trace[i];
    zs.emplace_back(tk, qk * tk);
  }
  const LineFit fit = fit_line(zs);
  if (fit.intercept < -1e-6 && fit.residual < 1e-8) {
    est.classification = DiniClass::neg_infinity;
    est.jump_magnitude = fit.intercept;
    return est;
  }
  est.classification = DiniClass::finite;
  est.value = est.quotient_trace.back().second;
  return est;
}

DiniEstimate upper_dini(const Problem& problem, std::span<const double> x,
                        std::span<const double> y, std::span<const double> v,
                        const DiniSchedule& schedule) {
  if (!problem.domain().contains(y))
    throw std::invalid_argument("upper_dini: base point outside the domain");
  const int n = problem.domain().dim();
  const double h0 = problem.objective_unchecked(x, y);
  Vec probe_pt(n);
  const Vec xv(x.begin(), x.end());
  const Vec yv(y.begin(), y.end());
  RayProbe probe = [&problem, &xv, &yv, &probe_pt, h0](std::span<const double> w,
                                                       double t) -> std::optional<double> {
    for (size_t k = 0; k < yv.size(); ++k) probe_pt[k] = yv[k] + t * w[k];
    if (!problem.domain().contains(probe_pt)) return std::nullopt;
    return problem.objective_unchecked(xv, probe_pt) - h0;
  };
  return upper_dini_from_probe(probe, v, schedule);
}

std::vector<Vec> default_direction_net(int dim, int random_count) {
  std::vector<Vec> net;
  for (int k = 0; k < dim; ++k) {
    Vec d(dim, 0.0);
    d[k] = 1.0;
    net.push_back(d);
    d[k] = -1.0;
    net.push_back(d);
  }
  if (dim > 1) {
    std::mt19937_64 gen(0x5eedf00dULL);
    for (int i = 0; i < random_count; ++i) net.push_back(random_unit_vector(gen, dim));
  }
  return net;
}

FoncReport fonc_check(const Problem& problem, std::span<const double> x,
                      std::span<const double> y, const std::vector<Vec>& direction_net,
                      double fonc_tol, const DiniSchedule& schedule) {
  if (!problem.domain().strictly_inside(y))
    throw std::invalid_argument(
        "fonc_check: first-order condition applies to interior points only");
  const std::vector<Vec> net =
      direction_net.empty() ? default_direction_net(problem.domain().dim()) : direction_net;
  if (net.empty()) throw std::invalid_argument("fonc_check: empty direction net");

  FoncReport rep;
  rep.passes = true;
  bool have_finite = false;
  for (const Vec& v : net) {
    const DiniEstimate est = upper_dini(problem, x, y, v, schedule);
    ++rep.directions_checked;
    if (est.classification == DiniClass::neg_infinity) continue;
    ++rep.finite_directions;
    if (!have_finite || est.value > rep.worst_value) {
      rep.worst_value = est.value;
      rep.worst_direction = v;
      have_finite = true;
    }
    if (est.value > fonc_tol) rep.passes = false;
  }
  return rep;
}

DifferentialInterval differential_interval(const ValueGrid& vgrid, int node, double kink_tol) {
  if (vgrid.dim() != 1)
    throw std::invalid_argument("differential_interval: 1-D value grid required");
  if (node <= 0 || node >= vgrid.cells_per_axis())
    throw std::invalid_argument("differential_interval: interior node required");
  const double h = vgrid.spacing(0);
  if (kink_tol < 0.0) kink_tol = default_kink_tol(vgrid);

  DifferentialInterval out;
  out.slope_left = (vgrid.values[node] - vgrid.values[node - 1]) / h;
  out.slope_right = (vgrid.values[node + 1] - vgrid.values[node]) / h;
  if (std::fabs(out.slope_left - out.slope_right) <= kink_tol) {
    out.kind = DifferentialInterval::Kind::gradient;
    const double s = 0.5 * (out.slope_left + out.slope_right);
    out.lo = out.hi = s;
  } else if (out.slope_left > out.slope_right) {
    out.kind = DifferentialInterval::Kind::superdifferential;
    out.lo = out.slope_right;
    out.hi = out.slope_left;
  } else {
    out.kind = DifferentialInterval::Kind::subdifferential;
    out.lo = out.slope_left;
    out.hi = out.slope_right;
  }
  return out;
}

}  // namespace posopt
