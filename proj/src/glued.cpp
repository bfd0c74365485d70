#include "troplag/glued.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace troplag {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double cyclic_distance(double a, double b, double period) {
  double d = std::fmod(std::fabs(a - b), period);
  return std::min(d, period - d);
}

}  // namespace

double GluedPotential::chi(double r) const {
  if (r <= R + eps) return 0.0;
  if (r >= R + 1.0) return 1.0;
  return smoothstep_inf((r - R - eps) / (1.0 - eps));
}

double GluedPotential::inner_value(const RhoRow& row, double r, double theta,
                                   int sheet) const {
  double t = row.eval(theta);
  if (outer.sheets == 2) return model.value(r, t, sheet == 0 ? +1 : -1);
  return model.value(r, t);
}

double GluedPotential::value(double r, double theta, int sheet) const {
  double c = chi(r);
  double v = 0;
  if (c > 0.0) v += c * outer.value(r, theta, sheet);
  if (c < 1.0) {
    RhoRow rw = rho.row(r);
    v += (1.0 - c) * inner_value(rw, r, theta, sheet);
  }
  return v;
}

double GluedPotential::deck_difference(double r, double theta) const {
  double c = chi(r);
  double v = 0;
  if (c > 0.0) v += c * outer.deck_difference(r, theta);
  if (c < 1.0) {
    RhoRow rw = rho.row(r);
    v += (1.0 - c) * model.deck_difference(r, rw.eval(theta));
  }
  return v;
}

GluedPotential glue(const OuterPotential& outer, const HyperellipticModel& model,
                    const RhoMap& rho, double a_d_initial) {
  if (!(a_d_initial > 0))
    throw TropError(ErrorCode::MalformedData, "leading coefficient must be positive");
  GluedPotential gp;
  gp.outer = outer;
  gp.model = model;
  gp.rho = rho;
  gp.R = rho.R;
  gp.eps = rho.eps;
  gp.a_d_initial = a_d_initial;
  gp.model.a_d = a_d_initial;

  const double W = outer.window();
  const int n = static_cast<int>(outer.crossings.size());
  if (n < 2)
    throw TropError(ErrorCode::GluingInconsistent,
                    "need at least two crossings on the handover annulus");

  // Probe radius in the interior of the handover annulus; the
  // reparametrization already places the model zeros on the crossings there.
  const double rp = gp.R + (gp.eps + 1.0) * 0.5;
  RhoRow prow = gp.rho.row(rp);

  // Branch alignment from a single probe between the first two crossings.
  // Both differences alternate sign across their common zero set, so one
  // interior sample fixes the global sign.
  double tp = 0.5 * (outer.crossings[0] + outer.crossings[1]);
  double od = outer.deck_difference(rp, tp);
  double idf = gp.model.deck_difference(rp, prow.eval(tp));
  if (od == 0.0 || idf == 0.0)
    throw TropError(ErrorCode::GluingInconsistent,
                    "degenerate deck difference between adjacent crossings");
  if ((od > 0.0) != (idf > 0.0)) gp.model.branch_flipped = !gp.model.branch_flipped;

  // The two differences must cross zero the same way at every crossing.
  for (int i = 0; i < n; ++i) {
    double s = outer.crossings[i];
    double so = outer.deck_difference_dtheta(rp, s);
    double si = gp.model.deck_difference_dtheta(rp, prow.eval(s)) * prow.deriv(s);
    if (so == 0.0 || si == 0.0 || ((so > 0.0) != (si > 0.0)))
      throw TropError(ErrorCode::GluingInconsistent,
                      "angular slopes disagree at crossing " + std::to_string(i));
  }

  // Away from the crossings the outer difference must dominate, so that the
  // chi blend keeps the sign of the glued difference. The model difference
  // scales exactly like a_d^(1/cover), so the number of halvings follows from
  // the worst sampled ratio.
  double minsp = W;
  for (int i = 0; i < n; ++i) {
    double next = outer.crossings[(i + 1) % n] + (i + 1 == n ? W : 0.0);
    minsp = std::min(minsp, next - outer.crossings[i]);
  }
  const double band = 0.2 * minsp;

  const int n_r = 48, n_t = 256;
  double maxratio = 0;
  for (int ir = 0; ir < n_r; ++ir) {
    double r = gp.R + gp.eps + (1.0 - gp.eps) * (ir + 0.5) / n_r;
    RhoRow row = gp.rho.row(r);
    for (int it = 0; it < n_t; ++it) {
      double theta = W * it / n_t;
      bool masked = false;
      for (int i = 0; i < n && !masked; ++i)
        masked = cyclic_distance(theta, outer.crossings[i], W) < band;
      if (masked) continue;
      double o = outer.deck_difference(r, theta);
      if (o == 0.0)
        throw TropError(ErrorCode::GluingInconsistent,
                        "outer deck difference vanishes away from the crossings");
      double m = gp.model.deck_difference(r, row.eval(theta));
      maxratio = std::max(maxratio, std::fabs(m) / std::fabs(o));
    }
  }

  const double per_halving = std::pow(2.0, -1.0 / gp.model.cover);
  int h = 0;
  double factor = 1.0;
  while (h < 60 && maxratio * factor > 1.0) {
    factor *= per_halving;
    ++h;
  }
  if (maxratio * factor > 1.0)
    throw TropError(ErrorCode::ShrinkExhausted,
                    "leading coefficient halved 60 times without domination");
  gp.halvings = h;
  gp.model.a_d = a_d_initial * std::pow(0.5, h);
  return gp;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Violated: return "Violated";
    default: return "Inconclusive";
  }
}

namespace {

// One radius of the glued deck difference with its reparametrization row
// prebuilt, so grid sweeps do not rebuild the zero ladder per sample.
struct SliceEval {
  const GluedPotential* gp = nullptr;
  double r = 0;
  double mix = 0;
  bool has_row = false;
  RhoRow row;

  void init(const GluedPotential& g, double radius) {
    gp = &g;
    r = radius;
    mix = g.chi(radius);
    has_row = mix < 1.0;
    if (has_row) row = g.rho.row(radius);
  }

  double delta(double theta) const {
    double v = 0;
    if (mix > 0.0) v += mix * gp->outer.deck_difference(r, theta);
    if (mix < 1.0) v += (1.0 - mix) * gp->model.deck_difference(r, row.eval(theta));
    return v;
  }

  double value(double theta, int sheet) const {
    double v = 0;
    if (mix > 0.0) v += mix * gp->outer.value(r, theta, sheet);
    if (mix < 1.0) v += (1.0 - mix) * gp->inner_value(row, r, theta, sheet);
    return v;
  }
};

// Central differences of the deck difference in both directions, sharing the
// three slices at r - h, r, r + h.
struct ResidualEval {
  SliceEval sm, s0, sp;
  double hr = 0, ht = 1e-6;

  void init(const GluedPotential& g, double radius) {
    hr = 1e-6 * radius;
    sm.init(g, radius - hr);
    s0.init(g, radius);
    sp.init(g, radius + hr);
  }

  double angular(double theta) const {
    return (s0.delta(theta + ht) - s0.delta(theta - ht)) / (2.0 * ht);
  }
  double radial(double theta) const {
    return (sp.delta(theta) - sm.delta(theta)) / (2.0 * hr);
  }
};

struct CellSample {
  double r, t, A, B;
};

// A cell is certified when one residual channel stays away from zero by more
// than the sampled Lipschitz bound times the cell diameter.
double cell_margin(const std::array<CellSample, 5>& s) {
  double amin = std::numeric_limits<double>::infinity();
  double bmin = amin;
  for (const auto& q : s) {
    amin = std::min(amin, std::fabs(q.A));
    bmin = std::min(bmin, std::fabs(q.B));
  }
  double la = 0, lb = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) {
      double dist = std::hypot(s[a].r - s[b].r, s[a].t - s[b].t);
      if (dist <= 0) continue;
      la = std::max(la, std::fabs(s[a].A - s[b].A) / dist);
      lb = std::max(lb, std::fabs(s[a].B - s[b].B) / dist);
    }
  double diam = std::hypot(s[0].r - s[3].r, s[0].t - s[3].t);
  double margin_a = amin - la * diam;
  double margin_b = bmin - lb * diam;
  return std::max(margin_a, margin_b);
}

}  // namespace

EmbeddednessCertificate verify_embedding(const GluedPotential& gp, int nr, int ntheta,
                                         double r_lo, double r_hi, bool parallel) {
  if (nr < 1 || ntheta < 1 || !(r_lo > 0) || !(r_hi > r_lo))
    throw TropError(ErrorCode::MalformedData, "bad certification grid");
  auto t0 = std::chrono::steady_clock::now();

  const double W = gp.window();
  const int nrad = 2 * nr + 1;  // corner radii interleaved with cell centers
  std::vector<ResidualEval> res(nrad);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < nrad; ++i) {
    double radius = r_lo + (r_hi - r_lo) * i / (nrad - 1);
    res[i].init(gp, radius);
  }

  const int ctcols = ntheta + 1;
  std::vector<double> Ac((nr + 1) * ctcols), Bc((nr + 1) * ctcols);
  std::vector<double> Am(nr * ntheta), Bm(nr * ntheta);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i <= nr; ++i) {
    const ResidualEval& e = res[2 * i];
    for (int j = 0; j <= ntheta; ++j) {
      double t = W * j / ntheta;
      Ac[i * ctcols + j] = e.angular(t);
      Bc[i * ctcols + j] = e.radial(t);
    }
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < nr; ++i) {
    const ResidualEval& e = res[2 * i + 1];
    for (int j = 0; j < ntheta; ++j) {
      double t = W * (j + 0.5) / ntheta;
      Am[i * ntheta + j] = e.angular(t);
      Bm[i * ntheta + j] = e.radial(t);
    }
  }

  std::vector<double> margins(static_cast<size_t>(nr) * ntheta);
  std::vector<double> lows(margins.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < nr; ++i) {
    double r0 = res[2 * i].s0.r, r1 = res[2 * i + 2].s0.r, rm = res[2 * i + 1].s0.r;
    for (int j = 0; j < ntheta; ++j) {
      double t0c = W * j / ntheta, t1c = W * (j + 1) / ntheta;
      std::array<CellSample, 5> s = {{
          {r0, t0c, Ac[i * ctcols + j], Bc[i * ctcols + j]},
          {r0, t1c, Ac[i * ctcols + j + 1], Bc[i * ctcols + j + 1]},
          {r1, t0c, Ac[(i + 1) * ctcols + j], Bc[(i + 1) * ctcols + j]},
          {r1, t1c, Ac[(i + 1) * ctcols + j + 1], Bc[(i + 1) * ctcols + j + 1]},
          {rm, 0.5 * (t0c + t1c), Am[i * ntheta + j], Bm[i * ntheta + j]},
      }};
      margins[static_cast<size_t>(i) * ntheta + j] = cell_margin(s);
      double low = std::numeric_limits<double>::infinity();
      for (const auto& q : s) low = std::min(low, std::max(std::fabs(q.A), std::fabs(q.B)));
      lows[static_cast<size_t>(i) * ntheta + j] = low;
    }
  }

  double scale = 0;
  for (double v : Ac) scale = std::max(scale, std::fabs(v));
  for (double v : Bc) scale = std::max(scale, std::fabs(v));
  const double vtol = 1e-8 * scale;

  EmbeddednessCertificate cert;
  cert.nr = nr;
  cert.ntheta = ntheta;
  cert.r_lo = r_lo;
  cert.r_hi = r_hi;
  cert.cells = static_cast<long long>(nr) * ntheta;
  double worst_margin = std::numeric_limits<double>::infinity();
  int worst_i = 0, worst_j = 0;
  bool violated = false;
  for (int i = 0; i < nr && !violated; ++i)
    for (int j = 0; j < ntheta; ++j) {
      size_t idx = static_cast<size_t>(i) * ntheta + j;
      if (margins[idx] <= 0.0 && lows[idx] <= vtol) {
        violated = true;
        worst_i = i;
        worst_j = j;
        worst_margin = margins[idx];
        break;
      }
      if (margins[idx] < worst_margin) {
        worst_margin = margins[idx];
        worst_i = i;
        worst_j = j;
      }
    }

  cert.verdict = violated ? Verdict::Violated
                          : (worst_margin > 0.0 ? Verdict::Certified : Verdict::Inconclusive);
  cert.margin = worst_margin;
  cert.worst.i = worst_i;
  cert.worst.j = worst_j;
  cert.worst.r0 = res[2 * worst_i].s0.r;
  cert.worst.r1 = res[2 * worst_i + 2].s0.r;
  cert.worst.t0 = W * worst_j / ntheta;
  cert.worst.t1 = W * (worst_j + 1) / ntheta;
  cert.worst.margin = worst_margin;
  cert.seconds = elapsed_seconds(t0);
  return cert;
}

std::pair<double, double> lagrangian_tangent_angles(std::complex<double> g0) {
  using C = std::complex<double>;
  // Tangent frame of {dx = g dxi} in coordinates (xi1 + i x1, xi2 + i x2),
  // where x = x1 - i x2. The Hermitian product is real on a Lagrangian
  // plane, so real orthonormalization is complex-unitary.
  auto plane = [](C g) {
    std::array<C, 4> U;  // columns (U[0], U[1]) and (U[2], U[3])
    C dxa = g;           // dxi = 1
    U[0] = C(1.0, dxa.real());
    U[1] = C(0.0, -dxa.imag());
    C dxb = g * C(0.0, 1.0);  // dxi = i
    U[2] = C(0.0, dxb.real());
    U[3] = C(1.0, -dxb.imag());
    auto herm = [&U](int a, int b) {
      return std::conj(U[2 * a]) * U[2 * b] + std::conj(U[2 * a + 1]) * U[2 * b + 1];
    };
    double n1 = std::sqrt(herm(0, 0).real());
    U[0] /= n1;
    U[1] /= n1;
    double p = herm(0, 1).real();
    U[2] -= p * U[0];
    U[3] -= p * U[1];
    double n2 = std::sqrt(herm(1, 1).real());
    U[2] /= n2;
    U[3] /= n2;
    return U;
  };
  auto Up = plane(g0);
  auto Um = plane(-g0);
  auto herm_cross = [&](int a, int b) {
    return std::conj(Up[2 * a]) * Um[2 * b] + std::conj(Up[2 * a + 1]) * Um[2 * b + 1];
  };
  C M00 = herm_cross(0, 0), M01 = herm_cross(0, 1);
  C M10 = herm_cross(1, 0), M11 = herm_cross(1, 1);
  // Canonical angles are half the eigenvalue arguments of M M^T (plain
  // transpose), folded into (0, pi].
  C S00 = M00 * M00 + M01 * M01;
  C S01 = M00 * M10 + M01 * M11;
  C S10 = M10 * M00 + M11 * M01;
  C S11 = M10 * M10 + M11 * M11;
  C tr = S00 + S11;
  C det = S00 * S11 - S01 * S10;
  C disc = std::sqrt(tr * tr - 4.0 * det);
  auto fold = [](C lam) {
    double a = 0.5 * std::arg(lam);
    if (a <= 0.0) a += M_PI;
    return a;
  };
  double a1 = fold(0.5 * (tr + disc));
  double a2 = fold(0.5 * (tr - disc));
  if (a1 > a2) std::swap(a1, a2);
  return {a1, a2};
}

std::vector<ImmersedPointReport> immersed_points(const GluedPotential& gp) {
  const auto& m = gp.model;
  std::vector<ImmersedPointReport> out;
  for (size_t i = 0; i < m.roots.size(); ++i) {
    if (m.roots[i].mult != 2) continue;
    if (m.cover != 2)
      throw TropError(ErrorCode::UnsupportedDegree,
                      "immersed point analysis needs a double cover");
    std::complex<double> xi0 = m.roots[i].z;
    std::complex<double> prod = m.a_d;
    for (size_t j = 0; j < m.roots.size(); ++j) {
      if (j == i) continue;
      for (int t = 0; t < m.roots[j].mult; ++t) prod *= xi0 - m.roots[j].z;
    }
    ImmersedPointReport rep;
    rep.xi = xi0;
    rep.g0 = std::sqrt(prod);
    auto [a1, a2] = lagrangian_tangent_angles(rep.g0);
    rep.angle1 = a1;
    rep.angle2 = a2;
    rep.angle_sum = a1 + a2;
    rep.degree = static_cast<int>(std::lround((a1 + a2) / M_PI));
    rep.degree_other = rep.degree;
    out.push_back(rep);
  }
  return out;
}

namespace {

// Downstairs base point of an upstairs sample.
std::pair<double, double> base_point(double r, double theta, int k) {
  double rho = std::pow(r, k);
  return {rho * std::cos(k * theta), rho * std::sin(k * theta)};
}

// Pushforward of the potential gradient to cotangent coordinates: with
// downstairs polar s = r^k, psi = k theta, the graph point is
// x = phi_s e_psi + (phi_psi / s) e_psi^perp.
std::pair<double, double> gradient_point(double r, double theta, int k, double phi_r,
                                         double phi_t) {
  double s = std::pow(r, k);
  double a = phi_r / (k * std::pow(r, k - 1));
  double b = phi_t / (k * s);
  double c = std::cos(k * theta), sn = std::sin(k * theta);
  return {a * c - b * sn, a * sn + b * c};
}

}  // namespace

Cloud sample_lagrangian(const GluedPotential& gp, int n_rows, int n_theta, double r_max,
                        double r_min) {
  if (n_rows < 2 || n_theta < 8 || !(r_max > 0) || r_min < 0 || r_min >= r_max)
    throw TropError(ErrorCode::MalformedData, "bad sampling grid");
  Cloud cloud;
  cloud.n_rows = n_rows;
  cloud.n_theta = n_theta;
  cloud.seam_r = gp.R;

  const int k = gp.outer.k;
  const int sheets = gp.outer.sheets;
  const double floor_r = 1e-3 * gp.R;
  const double ht = 1e-6;

  std::vector<double> radii;
  for (int i = 0; i < n_rows; ++i) {
    double r = r_min + (r_max - r_min) * (i + 0.5) / n_rows;
    if (r < floor_r) {
      cloud.branch_points_skipped += static_cast<long long>(sheets) * n_theta;
      continue;
    }
    radii.push_back(r);
  }
  std::sort(radii.begin(), radii.end());

  int n_inner = 0;
  for (double r : radii)
    if (r <= gp.R) ++n_inner;
  cloud.inner_rows = n_inner;

  // One continuation value per (sheet, column), seeded from the analytic
  // model gradient at the topmost inner row (the glued potential is the bare
  // model below R) and marched inward afterwards.
  std::vector<std::vector<std::complex<double>>> carry(
      sheets, std::vector<std::complex<double>>(n_theta));
  bool carry_ready = false;

  auto curve_xi = [&](double r, double theta) {
    auto [x, y] = base_point(r, theta, k);
    return std::complex<double>(x, y);
  };
  auto model_gradient = [&](double r, double theta, int sheet) {
    int branch = sheets == 2 ? (sheet == 0 ? +1 : -1) : +1;
    double pr = gp.model.dr(r, theta, branch);
    double pt = gp.model.dtheta(r, theta, branch);
    return gradient_point(r, theta, k, pr, pt);
  };

  // Emit rows from the outside in so the continuation marches toward the
  // branch points, then reverse into ascending order at the end.
  std::vector<CloudPoint> pts;
  pts.reserve(radii.size() * sheets * n_theta);
  for (int ir = static_cast<int>(radii.size()) - 1; ir >= 0; --ir) {
    double r = radii[ir];
    if (r > gp.R) {
      ResidualEval e;
      e.init(gp, r);
      for (int s = 0; s < sheets; ++s)
        for (int j = 0; j < n_theta; ++j) {
          double theta = 2.0 * M_PI * j / n_theta;
          double phi_r = (e.sp.value(theta, s) - e.sm.value(theta, s)) / (2.0 * e.hr);
          double phi_t =
              (e.s0.value(theta + ht, s) - e.s0.value(theta - ht, s)) / (2.0 * ht);
          auto [x1, x2] = gradient_point(r, theta, k, phi_r, phi_t);
          auto xi = curve_xi(r, theta);
          pts.push_back({r, theta, xi.real(), xi.imag(), x1, x2, s});
        }
      continue;
    }
    // Inner row: exact curve points, sign chosen by continuity down each
    // column. The first inner row also records the seam mismatch between the
    // gradient and the exact curve.
    bool at_seam = !carry_ready;
    for (int s = 0; s < sheets; ++s)
      for (int j = 0; j < n_theta; ++j) {
        double theta = 2.0 * M_PI * j / n_theta;
        auto xi = curve_xi(r, theta);
        std::complex<double> near;
        if (at_seam) {
          auto [gx1, gx2] = model_gradient(r, theta, s);
          near = std::complex<double>(gx1, -gx2);
        } else {
          near = carry[s][j];
        }
        std::complex<double> w = gp.model.sqrt_f_continuous(xi, near);
        if (at_seam)
          cloud.seam_mismatch = std::max(cloud.seam_mismatch, std::abs(w - near));
        carry[s][j] = w;
        pts.push_back({r, theta, xi.real(), xi.imag(), w.real(), -w.imag(), s});
      }
    carry_ready = true;
  }

  std::reverse(pts.begin(), pts.end());
  // Reversal flipped the order inside each row as well; restore it.
  size_t row_len = static_cast<size_t>(sheets) * n_theta, at = 0;
  while (at + row_len <= pts.size()) {
    std::reverse(pts.begin() + at, pts.begin() + at + row_len);
    at += row_len;
  }
  cloud.pts = std::move(pts);
  return cloud;
}

namespace {

struct ScanRow {
  double r = 0, rho = 0;
  int sheet = 0;
  int begin = 0, count = 0;
  int ordinal = 0;  // row index within its sheet
  double spacing = 0;
  std::vector<int> by_psi;  // point indices sorted by downstairs angle
};

double downstairs_angle(const CloudPoint& p) {
  double a = std::atan2(p.xi2, p.xi1);
  if (a < 0) a += 2.0 * M_PI;
  return a;
}

struct ScanPartial {
  long long compared = 0, collisions = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> pairs;
};

}  // namespace

CollisionReport collision_scan(const Cloud& cloud, const GluedPotential& gp,
                               bool parallel) {
  auto t0 = std::chrono::steady_clock::now();
  CollisionReport rep;
  if (cloud.pts.empty())
    throw TropError(ErrorCode::EmptySubject, "empty cloud");

  const int k = gp.outer.k;
  const int nt = cloud.n_theta;

  // Rebuild the row structure: points were emitted in contiguous runs of
  // constant (radius, sheet).
  std::vector<ScanRow> rows;
  {
    int i = 0, n = static_cast<int>(cloud.pts.size());
    while (i < n) {
      ScanRow row;
      row.r = cloud.pts[i].r;
      row.sheet = cloud.pts[i].sheet;
      row.begin = i;
      while (i < n && cloud.pts[i].r == row.r && cloud.pts[i].sheet == row.sheet) ++i;
      row.count = i - row.begin;
      row.rho = std::pow(row.r, k);
      rows.push_back(std::move(row));
    }
  }
  std::vector<int> per_sheet_count(gp.outer.sheets, 0);
  std::vector<std::vector<double>> sheet_rhos(gp.outer.sheets);
  for (auto& row : rows) {
    row.ordinal = per_sheet_count[row.sheet]++;
    sheet_rhos[row.sheet].push_back(row.rho);
  }
  for (auto& row : rows) {
    double angular = row.rho * (k * 2.0 * M_PI / nt);
    double radial = std::numeric_limits<double>::infinity();
    const auto& rs = sheet_rhos[row.sheet];
    if (row.ordinal > 0) radial = std::min(radial, row.rho - rs[row.ordinal - 1]);
    if (row.ordinal + 1 < static_cast<int>(rs.size()))
      radial = std::min(radial, rs[row.ordinal + 1] - row.rho);
    row.spacing = std::min(angular, radial);
    row.by_psi.resize(row.count);
    for (int j = 0; j < row.count; ++j) row.by_psi[j] = row.begin + j;
    std::sort(row.by_psi.begin(), row.by_psi.end(), [&](int a, int b) {
      return downstairs_angle(cloud.pts[a]) < downstairs_angle(cloud.pts[b]);
    });
  }

  std::vector<int> order(rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rows[a].rho < rows[b].rho; });

  double spacing_max = 0;
  for (const auto& row : rows) spacing_max = std::max(spacing_max, row.spacing);

  double x_scale = 1.0;
  for (const auto& p : cloud.pts)
    x_scale = std::max(x_scale, std::hypot(p.x1, p.x2));
  const double ctol = 1e-6 * x_scale;

  // Exclusion zones: near any root of the model polynomial the two fiber
  // sheets legitimately approach each other (folds at simple roots, designed
  // touching at double roots).
  struct Zone {
    double x, y;
  };
  std::vector<Zone> zones;
  for (const auto& root : gp.model.roots)
    zones.push_back({root.z.real(), root.z.imag()});

  auto near_zone = [&zones](double x, double y, double rad) {
    for (const auto& z : zones)
      if (std::hypot(x - z.x, y - z.y) < rad) return true;
    return false;
  };

  auto scan_pair = [&](const ScanRow& ra, const ScanRow& rb, bool same, ScanPartial& out) {
    double tau = 0.45 * std::min(ra.spacing, rb.spacing);
    if (std::fabs(ra.rho - rb.rho) > tau) return;
    double zone_rad = 3.0 * std::max(ra.spacing, rb.spacing);
    double rho_ref = std::max(ra.rho, rb.rho);
    double wpsi = rho_ref > 0 ? tau / rho_ref : M_PI;
    for (int ia = 0; ia < ra.count; ++ia) {
      int p = ra.by_psi[ia];
      const CloudPoint& P = cloud.pts[p];
      double psi = downstairs_angle(P);
      for (double shift : {-2.0 * M_PI, 0.0, 2.0 * M_PI}) {
        double lo = psi + shift - wpsi, hi = psi + shift + wpsi;
        if (hi < 0 || lo > 2.0 * M_PI) continue;
        auto cmp = [&](int idx, double v) { return downstairs_angle(cloud.pts[idx]) < v; };
        auto first = std::lower_bound(rb.by_psi.begin(), rb.by_psi.end(), lo, cmp);
        for (auto it = first; it != rb.by_psi.end(); ++it) {
          int q = *it;
          const CloudPoint& Q = cloud.pts[q];
          if (downstairs_angle(Q) > hi) break;
          if (same && q <= p) continue;
          if (std::hypot(P.xi1 - Q.xi1, P.xi2 - Q.xi2) > tau) continue;
          // Grid neighbors on a common sheet are not candidate double points.
          if (ra.sheet == rb.sheet && std::abs(ra.ordinal - rb.ordinal) <= 1) {
            int ja = p - ra.begin, jb = q - rb.begin;
            int dj = std::abs(ja - jb);
            dj = std::min(dj, nt - dj);
            if (dj <= 3) continue;
          }
          if (near_zone(P.xi1, P.xi2, zone_rad) || near_zone(Q.xi1, Q.xi2, zone_rad))
            continue;
          ++out.compared;
          double gap = std::hypot(P.x1 - Q.x1, P.x2 - Q.x2);
          out.min_gap = std::min(out.min_gap, gap);
          if (gap <= ctol) {
            ++out.collisions;
            if (out.pairs.size() < 64) out.pairs.emplace_back(p, q);
          }
        }
      }
    }
  };

  const int nrows = static_cast<int>(order.size());
  std::vector<ScanPartial> parts(nrows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int oi = 0; oi < nrows; ++oi) {
    const ScanRow& ra = rows[order[oi]];
    for (int oj = oi; oj < nrows; ++oj) {
      const ScanRow& rb = rows[order[oj]];
      if (rb.rho - ra.rho > 0.45 * spacing_max) break;
      scan_pair(ra, rb, order[oi] == order[oj], parts[oi]);
    }
  }

  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& part : parts) {
    rep.compared += part.compared;
    rep.collisions += part.collisions;
    min_gap = std::min(min_gap, part.min_gap);
    for (const auto& pr : part.pairs)
      if (rep.pairs.size() < 64) rep.pairs.push_back(pr);
  }
  rep.min_x_gap = std::isfinite(min_gap) ? min_gap : 0.0;
  rep.seconds = elapsed_seconds(t0);
  return rep;
}

}  // namespace troplag
