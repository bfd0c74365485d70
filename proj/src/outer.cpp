#include "troplag/outer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace troplag {

namespace {

double h_exp(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
double h_exp_deriv(double u) { return u > 0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }

double reduce_into(double theta, double base, double period) {
  double t = std::fmod(theta - base, period);
  if (t < 0) t += period;
  return t + base;
}

double cyc_dist(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

}  // namespace

double smoothstep_inf(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  double a = h_exp(u), b = h_exp(1 - u);
  return a / (a + b);
}

double smoothstep_inf_deriv(double u) {
  if (u <= 0 || u >= 1) return 0;
  double a = h_exp(u), b = h_exp(1 - u);
  double da = h_exp_deriv(u), db = h_exp_deriv(1 - u);
  double s = a + b;
  return (da * b + a * db) / (s * s);
}

double corner_bump(double x, double delta) {
  double ax = std::abs(x);
  if (ax <= delta / 2) return 1;
  if (ax >= delta) return 0;
  return smoothstep_inf(2 - 2 * ax / delta);
}

double corner_bump_deriv(double x, double delta) {
  double ax = std::abs(x);
  if (ax <= delta / 2 || ax >= delta) return 0;
  double ds = smoothstep_inf_deriv(2 - 2 * ax / delta) * (-2 / delta);
  return x >= 0 ? ds : -ds;
}

double OuterPotential::f(double theta, int sheet) const {
  const auto& as = arcs[sheet];
  double t = reduce_into(theta, as.front().lo, 2 * M_PI);
  // Last arc whose lo is <= t.
  size_t j = std::upper_bound(as.begin(), as.end(), t,
                              [](double v, const Arc& a) { return v < a.lo; }) -
             as.begin();
  const Arc& a = as[j == 0 ? as.size() - 1 : j - 1];
  return a.coeff.x * std::cos(k * t) + a.coeff.y * std::sin(k * t);
}

double OuterPotential::df(double theta, int sheet) const {
  const auto& as = arcs[sheet];
  double t = reduce_into(theta, as.front().lo, 2 * M_PI);
  size_t j = std::upper_bound(as.begin(), as.end(), t,
                              [](double v, const Arc& a) { return v < a.lo; }) -
             as.begin();
  const Arc& a = as[j == 0 ? as.size() - 1 : j - 1];
  return k * (-a.coeff.x * std::sin(k * t) + a.coeff.y * std::cos(k * t));
}

std::pair<double, double> OuterPotential::nearest_corner(double theta) const {
  if (corners.empty()) return {0.0, std::numeric_limits<double>::max()};
  double best_c = corners[0], best_d = std::numeric_limits<double>::max();
  // Corner lists are short; scan with cyclic distance.
  for (double c : corners) {
    double lo = std::fmod(theta - c, 2 * M_PI);
    if (lo > M_PI) lo -= 2 * M_PI;
    if (lo < -M_PI) lo += 2 * M_PI;
    if (std::abs(lo) < std::abs(best_d)) {
      best_d = lo;
      best_c = c;
    }
  }
  return {best_c, best_d};
}

double OuterPotential::value_unsmoothed(double r, double theta, int sheet) const {
  return std::pow(r, k) * f(theta, sheet);
}

double OuterPotential::value(double r, double theta, int sheet) const {
  auto [alpha, off] = nearest_corner(theta);
  double x = r * off;
  double rk = std::pow(r, k);
  if (std::abs(x) >= delta) return rk * f(theta, sheet);
  double w = corner_bump(x, delta);
  return rk * (w * m_delta * f(alpha, sheet) + (1 - w) * f(theta, sheet));
}

double OuterPotential::dr(double r, double theta, int sheet) const {
  auto [alpha, off] = nearest_corner(theta);
  double x = r * off;
  double rk1 = std::pow(r, k - 1), rk = rk1 * r;
  if (std::abs(x) >= delta) return k * rk1 * f(theta, sheet);
  double w = corner_bump(x, delta);
  double fa = m_delta * f(alpha, sheet), ft = f(theta, sheet);
  return k * rk1 * (w * fa + (1 - w) * ft) + rk * corner_bump_deriv(x, delta) * off * (fa - ft);
}

double OuterPotential::dtheta(double r, double theta, int sheet) const {
  auto [alpha, off] = nearest_corner(theta);
  double x = r * off;
  double rk = std::pow(r, k);
  if (std::abs(x) >= delta) return rk * df(theta, sheet);
  double w = corner_bump(x, delta);
  double fa = m_delta * f(alpha, sheet), ft = f(theta, sheet);
  return rk * (1 - w) * df(theta, sheet) + rk * corner_bump_deriv(x, delta) * r * (fa - ft);
}

double OuterPotential::deck_difference(double r, double theta) const {
  if (sheets == 2) return value(r, theta, 0) - value(r, theta, 1);
  return value(r, theta, 0) - value(r, theta + deck_shift, 0);
}

double OuterPotential::deck_difference_dtheta(double r, double theta) const {
  if (sheets == 2) return dtheta(r, theta, 0) - dtheta(r, theta, 1);
  return dtheta(r, theta, 0) - dtheta(r, theta + deck_shift, 0);
}

double OuterPotential::deck_difference_dr(double r, double theta) const {
  if (sheets == 2) return dr(r, theta, 0) - dr(r, theta, 1);
  return dr(r, theta, 0) - dr(r, theta + deck_shift, 0);
}

OuterPotential smooth_outer(const CircleRestriction& cr, const GenericityReport& gen,
                            double R, double delta_request) {
  if (!gen.ok)
    throw TropError(ErrorCode::GenericityViolated,
                    "outer smoothing of non-generic data: " + gen.detail);
  OuterPotential out;
  out.k = cr.k;
  out.sheets = cr.deck_shift == 0 && cr.k == 1 ? 2 : 1;
  out.deck_shift = cr.deck_shift;
  out.R = R;
  out.arcs.resize(out.sheets);
  for (const auto& a : cr.arcs)
    out.arcs[a.cycle].push_back({a.lo, a.hi, a.coeff});
  for (auto& as : out.arcs)
    std::sort(as.begin(), as.end(),
              [](const OuterPotential::Arc& a, const OuterPotential::Arc& b) {
                return a.lo < b.lo;
              });

  // Kink directions, closed under the deck action so that the corner windows
  // of deck partners line up and their blend weights coincide.
  std::vector<double> kinks;
  for (int sheet = 0; sheet < out.sheets; ++sheet) {
    const auto& as = out.arcs[sheet];
    for (size_t i = 0; i < as.size(); ++i) {
      const OuterPotential::Arc& prev = as[(i + as.size() - 1) % as.size()];
      if (!(as[i].coeff == prev.coeff)) kinks.push_back(as[i].lo);
    }
  }
  if (out.sheets == 1) {
    size_t base_count = kinks.size();
    int copies = static_cast<int>(std::lround(2 * M_PI / out.deck_shift));
    for (size_t i = 0; i < base_count; ++i)
      for (int j = 1; j < copies; ++j) kinks.push_back(kinks[i] + j * out.deck_shift);
  }
  for (double& c : kinks) c = reduce_into(c, 0.0, 2 * M_PI);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              kinks.end());
  if (kinks.size() > 1 && 2 * M_PI - kinks.back() + kinks.front() < 1e-12)
    kinks.pop_back();
  out.corners = kinks;

  // Crossing directions in the fundamental window, plus all full-circle
  // copies for the clearance test.
  const double w = out.window();
  std::vector<double> cross_full;
  for (const Crossing& c : gen.crossings) {
    double psi = std::atan2(static_cast<double>(c.direction.y),
                            static_cast<double>(c.direction.x));
    double up = out.sheets == 2 ? psi : psi / cr.k;
    double fund = reduce_into(up, 0.0, w);
    out.crossings.push_back(fund);
    for (double t = fund; t < 2 * M_PI; t += w) cross_full.push_back(t);
  }
  std::sort(out.crossings.begin(), out.crossings.end());
  out.crossings.erase(
      std::unique(out.crossings.begin(), out.crossings.end(),
                  [](double a, double b) { return std::abs(a - b) < 1e-12; }),
      out.crossings.end());

  // Window width: a quarter of the smallest corner gap, halved until every
  // crossing clears every corner window with a 50% margin.
  double min_gap = 2 * M_PI;
  for (size_t i = 0; i < out.corners.size(); ++i) {
    double next = out.corners[(i + 1) % out.corners.size()] +
                  (i + 1 == out.corners.size() ? 2 * M_PI : 0.0);
    min_gap = std::min(min_gap, next - out.corners[i]);
  }
  double delta = delta_request > 0 ? delta_request : 0.25 * min_gap;
  delta = std::min(delta, 0.25 * min_gap);
  for (int halving = 0;; ++halving) {
    bool clear = true;
    for (double c : out.corners)
      for (double x : cross_full)
        if (cyc_dist(c, x, 2 * M_PI) <= 1.5 * delta) clear = false;
    if (clear) break;
    if (halving >= 60)
      throw TropError(ErrorCode::GluingInconsistent,
                      "could not separate corner windows from crossings");
    delta /= 2;
  }
  out.delta = delta;

  // Damping factor: the deck difference through a window must dominate its
  // damped corner value, so that the blend keeps both the sign and the
  // radial alignment of the difference.
  double min_ratio = 1.0;
  const double half_width = delta / std::max(R, 1.0);  // widest window, at r = R
  for (double alpha : out.corners) {
    double da = std::abs(out.sheets == 2
                             ? out.f(alpha, 0) - out.f(alpha, 1)
                             : out.f(alpha, 0) - out.f(alpha + out.deck_shift, 0));
    if (da < 1e-15) continue;  // crossing-free windows have nonzero difference
    for (int j = -64; j <= 64; ++j) {
      double th = alpha + half_width * j / 64.0;
      double dv = std::abs(out.sheets == 2
                               ? out.f(th, 0) - out.f(th, 1)
                               : out.f(th, 0) - out.f(th + out.deck_shift, 0));
      min_ratio = std::min(min_ratio, dv / da);
    }
  }
  out.m_delta = 0.9 * std::max(1e-6, min_ratio);
  return out;
}

RadialSignReport radial_sign_check(const OuterPotential& outer, int r_samples,
                                   int theta_samples, double r_hi_factor) {
  RadialSignReport rep;
  rep.min_alignment = std::numeric_limits<double>::max();
  double coefmag = 1;
  for (const auto& as : outer.arcs)
    for (const auto& a : as)
      coefmag = std::max({coefmag, std::abs(static_cast<double>(a.coeff.x)),
                          std::abs(static_cast<double>(a.coeff.y))});
  const double w = outer.window();
  for (int i = 0; i < r_samples; ++i) {
    double r = outer.R * std::pow(r_hi_factor, double(i) / (r_samples - 1));
    double tol = 1e-8 * std::pow(r, outer.k) * coefmag;
    for (int j = 0; j < theta_samples; ++j) {
      double th = w * (j + 0.5) / theta_samples;
      double D = outer.deck_difference(r, th);
      if (std::abs(D) <= tol) continue;
      double Dr = outer.deck_difference_dr(r, th);
      rep.samples++;
      double align = (D > 0 ? Dr : -Dr) * r / (outer.k * std::abs(D));
      rep.min_alignment = std::min(rep.min_alignment, align);
      if (align <= 0) rep.failures++;
    }
  }
  rep.ok = rep.failures == 0;
  return rep;
}

}  // namespace troplag
