#include "troplag/rho.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace troplag {

MonotoneCubic MonotoneCubic::build(std::vector<double> x, std::vector<double> y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw TropError(ErrorCode::MalformedData, "interpolation needs >= 2 knots");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(x[i] < x[i + 1]) || !(y[i] < y[i + 1]))
      throw TropError(ErrorCode::MonotonicityFailure,
                      "knots must be strictly increasing in both coordinates");
  std::vector<double> d(n - 1), m(n);
  for (size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0) {
      m[i] = 0;
    } else {
      double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      double a = (h0 + 2 * h1) / (3 * (h0 + h1));
      m[i] = d[i - 1] * d[i] / (a * d[i] + (1 - a) * d[i - 1]);
    }
  }
  return {std::move(x), std::move(y), std::move(m)};
}

double MonotoneCubic::eval(double t) const {
  const size_t n = x.size();
  if (t <= x[0]) return y[0] + m[0] * (t - x[0]);
  if (t >= x[n - 1]) return y[n - 1] + m[n - 1] * (t - x[n - 1]);
  size_t j = std::upper_bound(x.begin(), x.end(), t) - x.begin() - 1;
  double h = x[j + 1] - x[j], s = (t - x[j]) / h;
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y[j] + (s3 - 2 * s2 + s) * h * m[j] +
         (-2 * s3 + 3 * s2) * y[j + 1] + (s3 - s2) * h * m[j + 1];
}

double MonotoneCubic::deriv(double t) const {
  const size_t n = x.size();
  if (t <= x[0]) return m[0];
  if (t >= x[n - 1]) return m[n - 1];
  size_t j = std::upper_bound(x.begin(), x.end(), t) - x.begin() - 1;
  double h = x[j + 1] - x[j], s = (t - x[j]) / h;
  return ((6 * s * s - 6 * s) * y[j] + (3 * s * s - 4 * s + 1) * h * m[j] +
          (-6 * s * s + 6 * s) * y[j + 1] + (3 * s * s - 2 * s) * h * m[j + 1]) /
         h;
}

double RhoRow::eval(double theta) const {
  // Reduce into the middle period of the three-period knot table.
  double base = std::floor((theta - map.x.front()) / period);
  double shifted = theta - (base - 1) * period;
  return map.eval(shifted) + (base - 1) * period;
}

double RhoRow::deriv(double theta) const {
  double base = std::floor((theta - map.x.front()) / period);
  return map.deriv(theta - (base - 1) * period);
}

double RhoMap::blend(double r) const { return smoothstep_inf((r - R) / eps); }

std::vector<double> RhoMap::targets(double r) const {
  std::vector<double> zs = find_zeros(model, r);
  const int N = static_cast<int>(sources.size());
  std::vector<double> tg(N);
  for (int i = 0; i < N; ++i)
    tg[i] = zs[(i + shift) % N] + period * ((i + shift) / N) + wind;
  return tg;
}

RhoRow RhoMap::row(double r) const {
  const int N = static_cast<int>(sources.size());
  double b = blend(r);
  std::vector<double> vals(N);
  if (b == 0.0) {
    for (int i = 0; i < N; ++i) vals[i] = sources[i];
  } else {
    std::vector<double> tg = targets(r);
    for (int i = 0; i < N; ++i) vals[i] = b * tg[i] + (1 - b) * sources[i];
  }
  // Three periodic copies of the knots so the middle period interpolates with
  // periodic tangents.
  std::vector<double> xs(3 * N), ys(3 * N);
  for (int copy = 0; copy < 3; ++copy)
    for (int i = 0; i < N; ++i) {
      xs[copy * N + i] = sources[i] + (copy - 1) * period;
      ys[copy * N + i] = vals[i] + (copy - 1) * period;
    }
  RhoRow out;
  out.r = r;
  out.period = period;
  out.map = MonotoneCubic::build(std::move(xs), std::move(ys));
  return out;
}

double RhoMap::eval(double r, double theta) const { return row(r).eval(theta); }

double RhoMap::dtheta(double r, double theta) const { return row(r).deriv(theta); }

RhoMap build_rho(const OuterPotential& outer, const HyperellipticModel& model,
                 double R, double eps) {
  RhoMap rho;
  rho.R = R;
  rho.eps = eps;
  rho.model = model;
  rho.period = model.window();
  rho.sources = outer.crossings;
  const int N = static_cast<int>(rho.sources.size());
  std::vector<double> zs = find_zeros(model, R + 1);
  if (static_cast<int>(zs.size()) != N)
    throw TropError(ErrorCode::GluingInconsistent,
                    "outer data has " + std::to_string(N) + " crossings but the model has " +
                        std::to_string(zs.size()) + " deck-difference zeros");
  if (std::abs(outer.window() - rho.period) > 1e-12)
    throw TropError(ErrorCode::GluingInconsistent,
                    "outer window and model window disagree");

  // Cyclic matching minimizing total squared displacement, allowing the
  // target ladder to be lifted by a full period either way.
  double best_cost = std::numeric_limits<double>::max();
  for (int s = 0; s < N; ++s) {
    for (int w = -1; w <= 1; ++w) {
      double cost = 0;
      for (int i = 0; i < N; ++i) {
        double tg = zs[(i + s) % N] + rho.period * ((i + s) / N + w);
        double d = tg - rho.sources[i];
        cost += d * d;
      }
      if (cost < best_cost) {
        best_cost = cost;
        rho.shift = s;
        rho.wind = rho.period * w;
      }
    }
  }

  // The matched ladder must stay strictly increasing against the sources.
  for (double r : {R, R + eps / 2, R + eps, R + 1, R + 2, 4 * R}) {
    RhoRow row = rho.row(r);
    const int probes = 16 * std::max(4, N);
    for (int j = 0; j < probes; ++j) {
      double th = rho.period * j / probes;
      if (row.deriv(th) < 0)
        throw TropError(ErrorCode::MonotonicityFailure,
                        "reparametrization row at r=" + std::to_string(r) +
                            " is not monotone");
    }
  }
  return rho;
}

void check_rho_drift(const RhoMap& rho, double r_lo, double r_hi, int steps) {
  const int N = static_cast<int>(rho.sources.size());
  std::vector<double> xs, ys;
  std::vector<double> prev;
  double prev_r = 0;
  for (int j = 0; j < steps; ++j) {
    double r = r_lo * std::pow(r_hi / r_lo, double(j) / (steps - 1));
    std::vector<double> tg = rho.targets(r);
    if (!prev.empty()) {
      double move = 0;
      for (int i = 0; i < N; ++i) move = std::max(move, std::abs(tg[i] - prev[i]));
      if (move / (r - prev_r) > 1e-14) {
        xs.push_back(std::log(0.5 * (r + prev_r)));
        ys.push_back(std::log(move / (r - prev_r)));
      }
    }
    prev = std::move(tg);
    prev_r = r;
  }
  if (xs.size() < 2) return;  // no measurable drift
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double fitted = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  double expected = rho.model.stride() + 1;
  if (fitted < expected - 0.2)
    throw TropError(ErrorCode::DriftBoundViolated,
                    "reparametrization drift decays like r^-" + std::to_string(fitted) +
                        ", expected r^-" + std::to_string(expected));
}

}  // namespace troplag
