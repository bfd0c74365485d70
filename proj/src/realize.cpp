#include "troplag/realize.hpp"

#include <algorithm>
#include <cmath>

namespace troplag {

std::vector<PolyRoot> default_roots(int d) {
  if (d < 1) throw TropError(ErrorCode::MalformedData, "degree must be positive");
  std::vector<PolyRoot> roots;
  for (int i = 0; i < d; ++i)
    roots.push_back({std::complex<double>(static_cast<double>(i), 0.0), 1});
  return roots;
}

double choose_gluing_radius(const HyperellipticModel& m) {
  double R = 2.0 * m.R0;
  double c0 = m.c.empty() ? 0.0 : std::fabs(m.c[0]);
  if (m.C_R0 > 0 && c0 > 0)
    R = std::max(R, 1.1 * std::pow(2.0 * m.C_R0 / c0, 1.0 / m.stride()));
  return R;
}

RealizeResult realize(const TropicalMultiSection& ts, const RealizeOptions& opt) {
  if (!(opt.eps > 0 && opt.eps < 1))
    throw TropError(ErrorCode::MalformedData, "handover width must be in (0, 1)");

  RealizeResult out;
  out.validation = validate(ts);
  if (!out.validation.ok)
    throw TropError(out.validation.violations.front().code,
                    out.validation.violations.front().what);

  out.genericity = genericity_count(ts);
  out.verdict = realizability(ts);

  bool yes = out.verdict.verdict == Realizable::Yes;
  if (yes && !out.verdict.trivial && out.verdict.N >= 3) {
    out.topology = topology_from_N(ts.kind, out.verdict.N);
    out.ext = ext_from_N(out.verdict.N);
    out.predicted = true;
  }
  if (!yes || out.verdict.trivial || ts.degree != 2) return out;

  std::vector<PolyRoot> roots = opt.roots.empty() ? default_roots(out.verdict.d) : opt.roots;
  HyperellipticModel model =
      series_coefficients(std::move(roots), opt.a_d_initial, opt.series_order, 2);
  if (model.even != (ts.kind == CoveringKind::SplitPairE))
    throw TropError(ErrorCode::InadmissiblePolynomial,
                    "polynomial parity does not match the covering kind");
  if (model.d != out.verdict.d)
    throw TropError(ErrorCode::InadmissiblePolynomial,
                    "polynomial degree does not match the crossing count");

  double R = opt.R_override > 0 ? opt.R_override : choose_gluing_radius(model);
  double r_far = opt.r_far > 0 ? opt.r_far : R + 5.0;
  if (!(r_far > R + 1.0))
    throw TropError(ErrorCode::MalformedData, "far radius must exceed R + 1");

  CircleRestriction cr = circle_restriction(ts);
  OuterPotential outer = smooth_outer(cr, out.genericity, R);
  RhoMap rho = build_rho(outer, model, R, opt.eps);
  check_rho_drift(rho, R + opt.eps, r_far);
  GluedPotential gp = glue(outer, model, rho, opt.a_d_initial);

  EmbeddednessCertificate near =
      verify_embedding(gp, opt.grid_nr, opt.grid_ntheta, R + opt.eps, R + 1.0, opt.parallel);
  EmbeddednessCertificate far =
      verify_embedding(gp, opt.grid_nr, opt.grid_ntheta, R + 1.0, r_far, opt.parallel);
  auto rank = [](Verdict v) { return v == Verdict::Violated ? 2 : v == Verdict::Inconclusive ? 1 : 0; };
  bool pick_far = rank(far.verdict) > rank(near.verdict) ||
                  (rank(far.verdict) == rank(near.verdict) && far.margin < near.margin);
  out.certificate = pick_far ? far : near;
  out.certificate.seconds = near.seconds + far.seconds;
  out.drift = track_zero_drift(gp.model, R + 1.0, std::max(5.0 * R, R + 20.0),
                               opt.drift_steps);
  out.zero_radii = {R + opt.eps, R + 1.0, R + 2.0, r_far};
  for (double r : out.zero_radii) out.zeros.push_back(find_zeros(gp.model, r));
  out.immersed = immersed_points(gp);
  out.glued = std::move(gp);
  out.built = true;

  if (opt.cloud_rows > 0 && opt.cloud_cols > 0) {
    out.cloud = sample_lagrangian(*out.glued, opt.cloud_rows, opt.cloud_cols, r_far);
    out.scan = collision_scan(*out.cloud, *out.glued, opt.parallel);
    out.scanned = true;
  }
  return out;
}

}  // namespace troplag
