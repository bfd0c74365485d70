#include "troplag/kaneyama.hpp"

#include <algorithm>
#include <set>

namespace troplag {

KaneyamaBundle KaneyamaBundle::canonical() const {
  if (!dual) return *this;
  return {a, b, c, k0 - a, k1 - b, k2 - c, false};
}

bool KaneyamaBundle::equivalent(const KaneyamaBundle& o) const {
  return canonical() == o.canonical();
}

Fan p2_fan() { return build_fan({{1, 0}, {0, 1}, {-1, -1}}); }

namespace {

// Divisor coefficient carried by ray index i of the canonical plane fan:
// ray 0 = D1 |-> b, ray 1 = D2 |-> c, ray 2 = D0 |-> a.
long long summand_coeff(const KaneyamaBundle& kb, int ray) {
  return ray == 0 ? kb.b : ray == 1 ? kb.c : kb.a;
}

ToricDivisor ray_divisor(const Fan& fan, int ray, long long coeff) {
  ToricDivisor d{std::vector<long long>(fan.n(), 0)};
  d.coeffs[ray] = coeff;
  return d;
}

ToricDivisor twist_divisor(const KaneyamaBundle& kb) {
  return ToricDivisor{{kb.k1, kb.k2, kb.k0}};
}

}  // namespace

std::array<std::pair<Vec2, Vec2>, 3> fixed_point_characters(const KaneyamaBundle& kb) {
  if (kb.a < 1 || kb.b < 1 || kb.c < 1)
    throw TropError(ErrorCode::NotInFamily, "family parameters must be positive");
  Fan fan = p2_fan();
  ToricDivisor tw = twist_divisor(kb);
  std::array<std::pair<Vec2, Vec2>, 3> out;
  for (int cone = 0; cone < 3; ++cone) {
    // On the chart of `cone` the map 1 -> (Z0^a, Z1^b, Z2^c) trivializes the
    // summand of the omitted coordinate, leaving the weights of the two
    // summands along the cone's own rays.
    Vec2 w1 = divisor_character(fan, ray_divisor(fan, cone, summand_coeff(kb, cone)), cone);
    Vec2 w2 = divisor_character(
        fan, ray_divisor(fan, fan.mod(cone + 1), summand_coeff(kb, fan.mod(cone + 1))),
        cone);
    if (kb.dual) {
      w1 = -w1;
      w2 = -w2;
    }
    Vec2 t = divisor_character(fan, tw, cone);
    out[cone] = {w1 + t, w2 + t};
    if (lex_less(out[cone].second, out[cone].first))
      std::swap(out[cone].first, out[cone].second);
  }
  return out;
}

TropicalMultiSection kaneyama_tropicalize(const KaneyamaBundle& kb) {
  TropicalMultiSection ts;
  ts.fan = p2_fan();
  ts.degree = 2;
  ts.kind = CoveringKind::MaximalO;
  auto chars = fixed_point_characters(kb);
  for (int cone = 0; cone < 3; ++cone) {
    ts.lifts.push_back({cone, 0, chars[cone].first, 1});
    ts.lifts.push_back({cone, 1, chars[cone].second, 1});
  }
  // Match sheets across each ray by the common restriction of their weights.
  for (int ray = 0; ray < 3; ++ray) {
    int lo = ts.fan.mod(ray - 1), hi = ray;
    const Vec2 v = ts.fan.ray(ray);
    long long a0 = dot(chars[lo].first, v), a1 = dot(chars[lo].second, v);
    long long b0 = dot(chars[hi].first, v), b1 = dot(chars[hi].second, v);
    if (a0 == a1 || b0 == b1)
      throw TropError(ErrorCode::GluingInconsistent,
                      "weights restrict equally along ray " + std::to_string(ray));
    int sheet = 0;
    for (int s = 0; s < 2; ++s) {
      long long want = s == 0 ? a0 : a1;
      int match = want == b0 ? 0 : want == b1 ? 1 : -1;
      if (match < 0)
        throw TropError(ErrorCode::GluingInconsistent,
                        "weights do not match along ray " + std::to_string(ray));
      ts.adjacency.push_back({ray, sheet++, 1, {lo, s}, {hi, match}});
    }
  }
  return ts;
}

namespace {

// Orient v so its preferred coordinate is positive; empty when v is zero.
std::optional<Vec2> oriented(Vec2 v, bool prefer_y) {
  if (v.is_zero()) return std::nullopt;
  bool flip = prefer_y ? (v.y < 0 || (v.y == 0 && v.x < 0)) : (v.x < 0 || (v.x == 0 && v.y < 0));
  return flip ? -v : v;
}

}  // namespace

KaneyamaBundle rigidity_invert(const TropicalMultiSection& ts) {
  Fan fan = p2_fan();
  if (!(ts.fan == fan))
    throw TropError(ErrorCode::NotInFamily, "weight data does not live on the plane fan");
  if (ts.degree != 2 || ts.kind != CoveringKind::MaximalO)
    throw TropError(ErrorCode::NotInFamily, "family members are connected double covers");
  if (!validate(ts).ok)
    throw TropError(ErrorCode::NotInFamily, "invalid multi-section");

  std::array<std::pair<Vec2, Vec2>, 3> got;
  for (int cone = 0; cone < 3; ++cone) {
    got[cone] = {ts.lift(cone, 0).slope, ts.lift(cone, 1).slope};
    if (lex_less(got[cone].second, got[cone].first))
      std::swap(got[cone].first, got[cone].second);
  }

  // The slope differences per cone are (+-(-b,c), +-(a-c,c), +-(b,a-b)): twist
  // cancels and dualizing only flips signs, so (a,b,c) is read off directly.
  auto d0 = oriented(got[0].first - got[0].second, true);
  auto d1 = oriented(got[1].first - got[1].second, true);
  auto d2 = oriented(got[2].first - got[2].second, false);
  if (!d0 || !d1 || !d2)
    throw TropError(ErrorCode::NotInFamily, "coinciding weights on a chart");
  long long b = -d0->x, c = d0->y;
  if (d1->y != c)
    throw TropError(ErrorCode::NotInFamily, "chart differences are inconsistent");
  long long a = d1->x + c;
  if (a < 1 || b < 1 || c < 1 || !(*d2 == Vec2{b, a - b}) )
    throw TropError(ErrorCode::NotInFamily, "chart differences do not fit the family");

  // Recover the twist for both dual flags and keep the candidates that
  // reproduce the data exactly.
  std::vector<KaneyamaBundle> found;
  for (int dual = 0; dual < 2; ++dual) {
    KaneyamaBundle base{a, b, c, 0, 0, 0, dual == 1};
    auto raw = fixed_point_characters(base);
    // Twist characters per cone, from either pairing of the two weights.
    std::array<Vec2, 3> tchar;
    bool ok = true;
    for (int cone = 0; cone < 3 && ok; ++cone) {
      std::optional<Vec2> t;
      for (int flip = 0; flip < 2; ++flip) {
        Vec2 u0 = flip ? raw[cone].second : raw[cone].first;
        Vec2 u1 = flip ? raw[cone].first : raw[cone].second;
        if (got[cone].first - u0 == got[cone].second - u1) {
          t = got[cone].first - u0;
          break;
        }
      }
      if (!t)
        ok = false;
      else
        tchar[cone] = *t;
    }
    if (!ok) continue;
    // The three characters must come from one divisor: <t_cone, v> = -k_v on
    // both rays of the cone, consistently across cones.
    long long k[3];
    bool consistent = true;
    for (int ray = 0; ray < 3 && consistent; ++ray) {
      long long from_lo = -dot(tchar[fan.mod(ray - 1)], fan.ray(ray));
      long long from_hi = -dot(tchar[ray], fan.ray(ray));
      if (from_lo != from_hi) consistent = false;
      k[ray] = from_hi;
    }
    if (!consistent) continue;
    KaneyamaBundle cand{a, b, c, k[2], k[0], k[1], dual == 1};
    auto back = fixed_point_characters(cand);
    bool match = true;
    for (int cone = 0; cone < 3; ++cone)
      if (!(back[cone] == got[cone])) match = false;
    if (match) found.push_back(cand.canonical());
  }
  if (found.empty())
    throw TropError(ErrorCode::NotInFamily, "no family member reproduces the data");
  for (const auto& f : found)
    if (!(f == found[0]))
      throw TropError(ErrorCode::AmbiguousMatch,
                      "two inequivalent family members share the data");
  return found[0];
}

MirrorSummary mirror_summary(const KaneyamaBundle& kb) {
  MirrorSummary ms;
  ms.bundle = kb.canonical();
  TropicalMultiSection ts = kaneyama_tropicalize(kb);
  GenericityReport gen = genericity_count(ts);
  if (!gen.ok) throw TropError(ErrorCode::GenericityViolated, gen.detail);
  ms.N = gen.N;
  RealizabilityVerdict v = realizability(ts);
  ms.d = v.d;
  ms.topology = topology_from_N(ts.kind, gen.N);
  ms.ext = ext_from_N(gen.N);
  ms.exact_filling = ms.topology.b1 == 0;
  return ms;
}

}  // namespace troplag
