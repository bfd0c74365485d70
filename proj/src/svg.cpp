#include "troplag/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace troplag {

namespace {

constexpr double kSize = 640.0;
constexpr double kCx = 320.0, kCy = 320.0;

void num(std::string& out, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  out += buf;
}

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n"
         "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
}

void line(std::string& out, double x1, double y1, double x2, double y2,
          const char* color, double width, bool dashed = false) {
  out += "<line x1=\"";
  num(out, x1);
  out += "\" y1=\"";
  num(out, y1);
  out += "\" x2=\"";
  num(out, x2);
  out += "\" y2=\"";
  num(out, y2);
  out += "\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"";
  num(out, width);
  out += "\"";
  if (dashed) out += " stroke-dasharray=\"6 4\"";
  out += "/>\n";
}

void dot(std::string& out, double x, double y, double r, const char* color,
         double opacity = 1.0) {
  out += "<circle cx=\"";
  num(out, x);
  out += "\" cy=\"";
  num(out, y);
  out += "\" r=\"";
  num(out, r);
  out += "\" fill=\"";
  out += color;
  out += "\"";
  if (opacity < 1.0) {
    out += " fill-opacity=\"";
    num(out, opacity);
    out += "\"";
  }
  out += "/>\n";
}

void ring(std::string& out, double r, const char* color) {
  out += "<circle cx=\"320\" cy=\"320\" r=\"";
  num(out, r);
  out += "\" fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"1\"/>\n";
}

void text(std::string& out, double x, double y, const std::string& s) {
  out += "<text x=\"";
  num(out, x);
  out += "\" y=\"";
  num(out, y);
  out += "\" font-family=\"monospace\" font-size=\"14\" fill=\"#333\">";
  out += s;
  out += "</text>\n";
}

const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

// Piecewise restriction profile of one domain circle at r = 1.
double cr_value(const CircleRestriction& cr, int cycle, double theta) {
  double start = 0;
  bool found = false;
  for (const auto& a : cr.arcs)
    if (a.cycle == cycle && (!found || a.lo < start)) {
      start = a.lo;
      found = true;
    }
  if (!found) throw TropError(ErrorCode::EmptySubject, "cycle has no arcs");
  double t = theta;
  while (t < start) t += 2.0 * M_PI;
  while (t >= start + 2.0 * M_PI) t -= 2.0 * M_PI;
  const CircleRestriction::Arc* hit = nullptr;
  for (const auto& a : cr.arcs)
    if (a.cycle == cycle) {
      hit = &a;  // rounding at the wrap end falls back to the last arc
      if (a.lo <= t && t < a.hi) break;
    }
  return hit->coeff.x * std::cos(cr.k * t) + hit->coeff.y * std::sin(cr.k * t);
}

}  // namespace

std::string fan_to_svg(const Fan& fan) {
  if (fan.rays.empty()) throw TropError(ErrorCode::EmptySubject, "fan has no rays");
  std::string out = header();
  ring(out, 240.0, "#cccccc");
  for (int i = 0; i < fan.n(); ++i) {
    Vec2 v = fan.ray(i);
    double len = std::hypot(double(v.x), double(v.y));
    double ux = v.x / len, uy = -v.y / len;  // svg y axis points down
    line(out, kCx, kCy, kCx + 240.0 * ux, kCy + 240.0 * uy, "#1f77b4", 2.0);
    text(out, kCx + 258.0 * ux - 10.0, kCy + 258.0 * uy + 5.0,
         "v" + std::to_string(i) + "=" + to_string(v));
  }
  out += "</svg>\n";
  return out;
}

std::string multisection_to_svg(const TropicalMultiSection& ts) {
  if (ts.lifts.empty())
    throw TropError(ErrorCode::EmptySubject, "multi-section has no lifts");
  CircleRestriction cr = circle_restriction(ts);
  std::string out = header();
  ring(out, 170.0, "#dddddd");

  // One polar profile per deck translate: 170 is the zero level, amplitude
  // scaled to 120 pixels.
  const int samples = 720;
  const int translates = ts.kind == CoveringKind::SplitPairE ? 2 : ts.degree;
  double vmax = 0;
  for (int t = 0; t < translates; ++t)
    for (int s = 0; s < samples; ++s) {
      double theta = 2.0 * M_PI * s / samples;
      double v = ts.kind == CoveringKind::SplitPairE
                     ? cr_value(cr, t, theta)
                     : cr_value(cr, 0, theta + t * cr.deck_shift);
      vmax = std::max(vmax, std::fabs(v));
    }
  if (vmax == 0) vmax = 1;
  for (int t = 0; t < translates; ++t) {
    out += "<path fill=\"none\" stroke=\"";
    out += palette(t);
    out += "\" stroke-width=\"1.5\" d=\"";
    for (int s = 0; s <= samples; ++s) {
      double theta = 2.0 * M_PI * (s % samples) / samples;
      double v = ts.kind == CoveringKind::SplitPairE
                     ? cr_value(cr, t, theta)
                     : cr_value(cr, 0, theta + t * cr.deck_shift);
      double rad = 170.0 + 120.0 * v / vmax;
      double x = kCx + rad * std::cos(theta), y = kCy - rad * std::sin(theta);
      out += s == 0 ? "M" : "L";
      num(out, x);
      out += " ";
      num(out, y);
    }
    out += "\"/>\n";
  }

  GenericityReport gen = genericity_count(ts);
  if (gen.ok) {
    for (const auto& c : gen.crossings) {
      double psi = std::atan2(double(c.direction.y), double(c.direction.x));
      for (int j = 0; j < cr.k; ++j) {
        double theta = (psi + 2.0 * M_PI * j) / cr.k;
        line(out, kCx + 40.0 * std::cos(theta), kCy - 40.0 * std::sin(theta),
             kCx + 310.0 * std::cos(theta), kCy - 310.0 * std::sin(theta), "#999999",
             1.0, true);
      }
    }
    text(out, 16.0, 28.0, "N=" + std::to_string(gen.N));
  } else {
    text(out, 16.0, 28.0, "non-generic");
  }
  out += "</svg>\n";
  return out;
}

std::string cloud_to_svg(const Cloud& cloud, int max_points) {
  if (cloud.pts.empty()) throw TropError(ErrorCode::EmptySubject, "empty cloud");
  double lo1 = cloud.pts[0].xi1, hi1 = lo1, lo2 = cloud.pts[0].xi2, hi2 = lo2;
  for (const auto& p : cloud.pts) {
    lo1 = std::min(lo1, p.xi1);
    hi1 = std::max(hi1, p.xi1);
    lo2 = std::min(lo2, p.xi2);
    hi2 = std::max(hi2, p.xi2);
  }
  double span = std::max(hi1 - lo1, hi2 - lo2);
  if (span <= 0) span = 1;
  double scale = 600.0 / span;
  double mx = 0.5 * (lo1 + hi1), my = 0.5 * (lo2 + hi2);

  std::string out = header();
  size_t stride = std::max<size_t>(1, cloud.pts.size() / std::max(1, max_points));
  for (size_t i = 0; i < cloud.pts.size(); i += stride) {
    const auto& p = cloud.pts[i];
    dot(out, kCx + (p.xi1 - mx) * scale, kCy - (p.xi2 - my) * scale, 1.0,
        palette(p.sheet), 0.5);
  }
  text(out, 16.0, 28.0, std::to_string(cloud.pts.size()) + " points");
  out += "</svg>\n";
  return out;
}

}  // namespace troplag
