#include "troplag/hyperelliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace troplag {

double HyperellipticModel::scale() const { return std::pow(a_d, 1.0 / cover); }

double HyperellipticModel::exponent(int i) const {
  if (!even) return d + cover - static_cast<double>(cover) * i;
  return d / 2 + 1 - static_cast<double>(i);
}

namespace {

inline int branch_sign(const HyperellipticModel& m, int branch) {
  int s = m.branch_flipped ? -1 : 1;
  return m.even ? s * branch : s;
}

}  // namespace

double HyperellipticModel::value(double r, double theta, int branch) const {
  double v = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) == log_index) {
      v += c_log * std::log(r);
      continue;
    }
    double E = exponent(static_cast<int>(i));
    v += c[i] * std::pow(r, E) * std::cos(E * theta);
  }
  return branch_sign(*this, branch) * scale() * v;
}

double HyperellipticModel::dr(double r, double theta, int branch) const {
  double v = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) == log_index) {
      v += c_log / r;
      continue;
    }
    double E = exponent(static_cast<int>(i));
    v += c[i] * E * std::pow(r, E - 1) * std::cos(E * theta);
  }
  return branch_sign(*this, branch) * scale() * v;
}

double HyperellipticModel::dtheta(double r, double theta, int branch) const {
  double v = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) == log_index) continue;
    double E = exponent(static_cast<int>(i));
    v -= c[i] * E * std::pow(r, E) * std::sin(E * theta);
  }
  return branch_sign(*this, branch) * scale() * v;
}

double HyperellipticModel::deck_difference(double r, double theta) const {
  if (even) return value(r, theta, +1) - value(r, theta, -1);
  return value(r, theta) - value(r, theta + deck_shift());
}

double HyperellipticModel::deck_difference_dtheta(double r, double theta) const {
  if (even) return dtheta(r, theta, +1) - dtheta(r, theta, -1);
  return dtheta(r, theta) - dtheta(r, theta + deck_shift());
}

std::complex<double> HyperellipticModel::monic_at(std::complex<double> xi) const {
  std::complex<double> v = 0;
  for (int i = d; i >= 0; --i) v = v * xi + monic[i];
  return v;
}

std::complex<double> HyperellipticModel::f_at(std::complex<double> xi) const {
  return a_d * monic_at(xi);
}

std::complex<double> HyperellipticModel::sqrt_f_continuous(
    std::complex<double> xi, std::complex<double> near) const {
  std::complex<double> w = std::sqrt(f_at(xi));
  return std::abs(w - near) <= std::abs(-w - near) ? w : -w;
}

HyperellipticModel series_coefficients(std::vector<PolyRoot> roots, double a_d,
                                       int order, int cover) {
  if (!(a_d > 0))
    throw TropError(ErrorCode::InadmissiblePolynomial, "leading coefficient must be positive");
  if (cover < 2)
    throw TropError(ErrorCode::InadmissiblePolynomial, "cover degree must be at least 2");
  if (roots.empty())
    throw TropError(ErrorCode::InadmissiblePolynomial, "no roots given");

  const double tol = 1e-9;
  bool has_zero = false;
  for (PolyRoot& rt : roots) {
    if (rt.mult < 1 || rt.mult > 2)
      throw TropError(ErrorCode::InadmissiblePolynomial,
                      "root multiplicities must be 1 or 2");
    if (std::abs(rt.z) < tol) {
      rt.z = 0.0;
      has_zero = true;
    } else if (std::abs(rt.z.imag()) < tol) {
      rt.z = rt.z.real();
    }
  }
  if (!has_zero)
    throw TropError(ErrorCode::InadmissiblePolynomial, "the polynomial must vanish at 0");
  // Non-real roots must pair up as exact conjugates.
  std::vector<int> partner(roots.size(), -1);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].z.imag() == 0 || partner[i] >= 0) continue;
    bool found = false;
    for (size_t j = i + 1; j < roots.size() && !found; ++j) {
      if (partner[j] >= 0) continue;
      if (std::abs(roots[j].z - std::conj(roots[i].z)) < tol &&
          roots[j].mult == roots[i].mult) {
        roots[j].z = std::conj(roots[i].z);
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        found = true;
      }
    }
    if (!found)
      throw TropError(ErrorCode::InadmissiblePolynomial,
                      "non-real roots must come in conjugate pairs");
  }

  HyperellipticModel m;
  m.cover = cover;
  m.a_d = a_d;
  m.roots = roots;
  m.d = 0;
  for (const PolyRoot& rt : roots) m.d += rt.mult;
  m.even = cover == 2 && m.d % 2 == 0;
  if (cover > 2 && std::gcd(cover, m.d) != 1)
    throw TropError(ErrorCode::InadmissiblePolynomial,
                    "degree must be coprime to the cover degree");

  // Monic coefficients by expanding the root product.
  std::vector<std::complex<double>> poly{1.0};
  for (const PolyRoot& rt : roots)
    for (int k = 0; k < rt.mult; ++k) {
      poly.push_back(0.0);
      for (size_t i = poly.size() - 1; i > 0; --i)
        poly[i] = poly[i - 1] - rt.z * poly[i];
      poly[0] = -rt.z * poly[0];
    }
  m.monic.resize(m.d + 1);
  for (int i = 0; i <= m.d; ++i) m.monic[i] = poly[i].real();

  // Series of (1 + u)^(1/cover) in the variable Y = l^(-stride), where
  //   u(Y) = sum_{j>=1} monic[d-j] Y^j.
  // Recurrence from (1+u) w' = alpha u' w.
  const int K = std::max(order, 8);
  const double alpha = 1.0 / cover;
  std::vector<double> u(K + 1, 0.0), s(K + 1, 0.0);
  for (int j = 1; j <= std::min(K, m.d); ++j) u[j] = m.monic[m.d - j];
  s[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    double acc = 0;
    for (int j = 1; j <= std::min(k, m.d); ++j)
      acc += (alpha * j - (k - j)) * u[j] * s[k - j];
    s[k] = acc / k;
  }

  // Integrate term by term; a split cover integrates in xi itself while a
  // connected cover pulls back through xi = l^cover.
  const double factor = m.even ? 1.0 : static_cast<double>(cover);
  m.c.assign(K + 1, 0.0);
  for (int i = 0; i <= K; ++i) {
    double E = m.exponent(i);
    if (E == 0.0) {
      m.log_index = i;
      m.c_log = factor * s[i];
    } else {
      m.c[i] = factor * s[i] / E;
    }
  }

  double max_root = 0;
  for (const PolyRoot& rt : roots) max_root = std::max(max_root, std::abs(rt.z));
  m.R0 = 2.0 * (1.0 + max_root);
  double tail = 0;
  const double E0 = m.exponent(0);
  for (int i = 1; i <= K; ++i) {
    if (i == m.log_index) {
      // log r <= C * r^(E0 - 1) for r >= R0, with C the max of the ratio.
      double ratio_at = [&](double r) { return std::log(r) / std::pow(r, E0 - 1); }(m.R0);
      double rstar = std::exp(1.0 / (E0 - 1));
      double peak = rstar >= m.R0 ? std::log(rstar) / std::pow(rstar, E0 - 1) : ratio_at;
      tail += std::abs(m.c_log) * std::max(ratio_at, peak);
    } else {
      tail += std::abs(m.c[i]) * std::pow(m.R0, m.exponent(i) - E0 + m.stride());
    }
  }
  m.C_R0 = tail;
  return m;
}

std::vector<double> find_zeros(const HyperellipticModel& m, double r) {
  const double w = m.window();
  const int expected = m.d + 2;
  const int M = std::max(64, 32 * expected);
  auto g = [&](double theta) { return m.deck_difference(r, theta); };

  std::vector<double> zeros;
  for (int attempt = 0; attempt < 4; ++attempt) {
    zeros.clear();
    const double off = attempt * w / (4.0 * M + 1.0);
    bool exact_hit = false;
    std::vector<double> gv(M + 1);
    for (int j = 0; j <= M; ++j) {
      gv[j] = g(off + j * w / M);
      if (gv[j] == 0.0) exact_hit = true;
    }
    if (exact_hit) continue;
    for (int j = 0; j < M; ++j) {
      if ((gv[j] > 0) == (gv[j + 1] > 0)) continue;
      double lo = off + j * w / M, hi = off + (j + 1) * w / M;
      double glo = gv[j];
      for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm > 0) == (glo > 0))
          lo = mid;
        else
          hi = mid;
      }
      double z = 0.5 * (lo + hi);
      if (z >= w) z -= w;
      if (z < 0) z += w;
      zeros.push_back(z);
    }
    break;
  }
  std::sort(zeros.begin(), zeros.end());
  if (m.cover == 2 && static_cast<int>(zeros.size()) != expected)
    throw TropError(ErrorCode::WrongZeroCount,
                    "found " + std::to_string(zeros.size()) + " deck-difference zeros at r=" +
                        std::to_string(r) + ", expected " + std::to_string(expected));
  return zeros;
}

namespace {

double cyclic_diff(double a, double b, double w) {
  double d = a - b;
  while (d > w / 2) d -= w;
  while (d <= -w / 2) d += w;
  return d;
}

}  // namespace

DriftReport track_zero_drift(const HyperellipticModel& m, double r_lo, double r_hi,
                             int steps) {
  DriftReport rep;
  rep.expected_exponent = m.stride() + 1;
  const double w = m.window();
  std::vector<double> prev;
  std::vector<double> xs, ys;  // log r, log rate
  double prev_r = 0;
  for (int j = 0; j < steps; ++j) {
    double r = r_lo * std::pow(r_hi / r_lo, steps == 1 ? 0.0 : double(j) / (steps - 1));
    rep.radii.push_back(r);
    std::vector<double> zs = find_zeros(m, r);
    if (!prev.empty() && zs.size() == prev.size() && !zs.empty()) {
      const int n = static_cast<int>(zs.size());
      // Allow a +-1 cyclic re-indexing in case a zero wrapped around.
      int best_k = 0;
      double best_cost = std::numeric_limits<double>::max();
      for (int k = -1; k <= 1; ++k) {
        double cost = 0;
        for (int i = 0; i < n; ++i)
          cost += std::abs(cyclic_diff(zs[((i + k) % n + n) % n], prev[i], w));
        if (cost < best_cost) {
          best_cost = cost;
          best_k = k;
        }
      }
      double mean_step = 0;
      for (int i = 0; i < n; ++i) {
        double dth = std::abs(cyclic_diff(zs[((i + best_k) % n + n) % n], prev[i], w));
        mean_step += dth;
        rep.max_step = std::max(rep.max_step, dth);
      }
      mean_step /= n;
      if (mean_step > 1e-14) {
        double rate = mean_step / (r - prev_r);
        xs.push_back(std::log(0.5 * (r + prev_r)));
        ys.push_back(std::log(rate));
        rep.steps_used++;
      }
    }
    prev = std::move(zs);
    prev_r = r;
  }
  if (xs.size() < 2) {
    rep.fitted_exponent = std::numeric_limits<double>::infinity();
    rep.pass = true;
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.fitted_exponent = -slope;
  rep.pass = rep.fitted_exponent >= rep.expected_exponent - 0.2;
  return rep;
}

}  // namespace troplag
