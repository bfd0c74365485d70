#include "troplag/multisection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace troplag {

int TropicalMultiSection::lift_index(int cone, int sheet) const {
  for (size_t i = 0; i < lifts.size(); ++i)
    if (lifts[i].cone == cone && lifts[i].sheet == sheet) return static_cast<int>(i);
  return -1;
}

const Lift& TropicalMultiSection::lift(int cone, int sheet) const {
  int i = lift_index(cone, sheet);
  if (i < 0)
    throw TropError(ErrorCode::MalformedData,
                    "no lift for cone " + std::to_string(cone) + " sheet " +
                        std::to_string(sheet));
  return lifts[i];
}

namespace {

void add_violation(ValidationReport& rep, ErrorCode code, std::string what) {
  rep.ok = false;
  rep.violations.push_back({code, std::move(what)});
}

}  // namespace

ValidationReport validate(const TropicalMultiSection& ts) {
  ValidationReport rep;
  const Fan& fan = ts.fan;
  const int n = fan.n();
  const int r = ts.degree;

  if (r < 2) {
    add_violation(rep, ErrorCode::MalformedData, "covering degree must be at least 2");
    return rep;
  }
  if (ts.kind == CoveringKind::SplitPairE && r != 2)
    add_violation(rep, ErrorCode::MalformedData, "a split pair has exactly 2 sheets");

  // Sheet labels must be unique per cone and multiplicities must sum to the
  // covering degree over every maximal cone.
  std::vector<long long> cone_mult(n, 0);
  std::set<std::pair<int, int>> seen;
  for (const Lift& L : ts.lifts) {
    if (L.cone < 0 || L.cone >= n) {
      add_violation(rep, ErrorCode::NonMaximalCone,
                    "lift references cone " + std::to_string(L.cone));
      continue;
    }
    if (L.mult < 1)
      add_violation(rep, ErrorCode::MalformedData, "lift multiplicity < 1");
    if (!seen.insert({L.cone, L.sheet}).second)
      add_violation(rep, ErrorCode::MalformedData,
                    "duplicate sheet label " + std::to_string(L.sheet) + " on cone " +
                        std::to_string(L.cone));
    cone_mult[L.cone] += L.mult;
  }
  for (int c = 0; c < n; ++c) {
    if (cone_mult[c] != r)
      add_violation(rep, ErrorCode::MalformedData,
                    "multiplicities over cone " + std::to_string(c) + " sum to " +
                        std::to_string(cone_mult[c]) + ", expected " + std::to_string(r));
  }

  // Ray lifts: reference checks, slope agreement along the shared ray, and
  // multiplicity bookkeeping per ray.
  std::vector<long long> ray_mult(n, 0);
  // forward[lift index] = ray lift leaving it counterclockwise; backward likewise.
  std::vector<int> forward(ts.lifts.size(), -1), backward(ts.lifts.size(), -1);
  bool adjacency_sound = true;
  for (size_t a = 0; a < ts.adjacency.size(); ++a) {
    const RayLift& rl = ts.adjacency[a];
    if (rl.ray < 0 || rl.ray >= n) {
      add_violation(rep, ErrorCode::MalformedData,
                    "ray lift references ray " + std::to_string(rl.ray));
      adjacency_sound = false;
      continue;
    }
    ray_mult[rl.ray] += rl.mult;
    int lo = ts.lift_index(rl.lower.first, rl.lower.second);
    int hi = ts.lift_index(rl.upper.first, rl.upper.second);
    if (lo < 0 || hi < 0) {
      add_violation(rep, ErrorCode::MalformedData,
                    "ray lift on ray " + std::to_string(rl.ray) +
                        " references a missing cone lift");
      adjacency_sound = false;
      continue;
    }
    if (rl.lower.first != fan.mod(rl.ray - 1) || rl.upper.first != fan.mod(rl.ray)) {
      add_violation(rep, ErrorCode::MalformedData,
                    "ray lift on ray " + std::to_string(rl.ray) +
                        " does not connect the two adjacent cones");
      adjacency_sound = false;
      continue;
    }
    const Lift& L = ts.lifts[lo];
    const Lift& U = ts.lifts[hi];
    if (dot(L.slope - U.slope, fan.ray(rl.ray)) != 0)
      add_violation(rep, ErrorCode::MalformedData,
                    "slopes " + to_string(L.slope) + " and " + to_string(U.slope) +
                        " disagree along ray " + std::to_string(rl.ray));
    if (rl.mult != L.mult || rl.mult != U.mult)
      add_violation(rep, ErrorCode::MalformedData,
                    "multiplicity mismatch across ray " + std::to_string(rl.ray));
    if (forward[lo] != -1 || backward[hi] != -1) {
      add_violation(rep, ErrorCode::MalformedData,
                    "cone lift bounded by two lifts of ray " + std::to_string(rl.ray));
      adjacency_sound = false;
    } else {
      forward[lo] = static_cast<int>(a);
      backward[hi] = static_cast<int>(a);
    }
  }
  for (int t = 0; t < n; ++t) {
    if (ray_mult[t] != r)
      add_violation(rep, ErrorCode::MalformedData,
                    "multiplicities over ray " + std::to_string(t) + " sum to " +
                        std::to_string(ray_mult[t]) + ", expected " + std::to_string(r));
  }
  for (size_t i = 0; i < ts.lifts.size(); ++i) {
    if (forward[i] == -1 || backward[i] == -1) {
      add_violation(rep, ErrorCode::MalformedData,
                    "cone lift (" + std::to_string(ts.lifts[i].cone) + "," +
                        std::to_string(ts.lifts[i].sheet) + ") is missing a ray lift");
      adjacency_sound = false;
    }
  }
  if (!adjacency_sound) return rep;

  // Walk the counterclockwise cycles of the covering.
  std::vector<char> visited(ts.lifts.size(), 0);
  std::vector<std::vector<int>> cycles;
  // Deterministic starts: cone-0 lifts in increasing sheet order, then the rest.
  std::vector<int> starts;
  for (size_t i = 0; i < ts.lifts.size(); ++i)
    if (ts.lifts[i].cone == 0) starts.push_back(static_cast<int>(i));
  std::sort(starts.begin(), starts.end(),
            [&](int a, int b) { return ts.lifts[a].sheet < ts.lifts[b].sheet; });
  for (size_t i = 0; i < ts.lifts.size(); ++i) starts.push_back(static_cast<int>(i));
  for (int s : starts) {
    if (visited[s]) continue;
    std::vector<int> cyc;
    int cur = s;
    while (!visited[cur]) {
      visited[cur] = 1;
      cyc.push_back(cur);
      cur = ts.lift_index(ts.adjacency[forward[cur]].upper.first,
                          ts.adjacency[forward[cur]].upper.second);
    }
    if (cur != s) {
      add_violation(rep, ErrorCode::MalformedData, "adjacency walk is not a closed cycle");
      return rep;
    }
    // Each step advances the cone index by one, so a closed cycle has length
    // divisible by n; rotate so it starts over cone 0.
    auto it = std::find_if(cyc.begin(), cyc.end(),
                           [&](int i) { return ts.lifts[i].cone == 0; });
    std::rotate(cyc.begin(), it, cyc.end());
    cycles.push_back(std::move(cyc));
  }
  for (const auto& cyc : cycles) {
    for (size_t t = 0; t < cyc.size(); ++t) {
      if (ts.lifts[cyc[t]].cone != static_cast<int>(t) % n) {
        add_violation(rep, ErrorCode::MalformedData, "cycle does not advance one cone per step");
        return rep;
      }
    }
  }

  bool all_unit = std::all_of(ts.lifts.begin(), ts.lifts.end(),
                              [](const Lift& L) { return L.mult == 1; });
  if (ts.kind == CoveringKind::MaximalO) {
    if (!all_unit || cycles.size() != 1 ||
        static_cast<int>(cycles[0].size()) != r * n)
      add_violation(rep, ErrorCode::MalformedData,
                    "declared connected maximal covering, found " +
                        std::to_string(cycles.size()) + " cycle(s)");
  } else {
    if (!all_unit || cycles.size() != 2 ||
        static_cast<int>(cycles[0].size()) != n ||
        static_cast<int>(cycles[1].size()) != n)
      add_violation(rep, ErrorCode::MalformedData,
                    "declared split pair, found " + std::to_string(cycles.size()) +
                        " cycle(s)");
  }
  if (rep.ok) rep.cycles = std::move(cycles);
  return rep;
}

namespace {

// Downstairs ray angles lifted to a weakly increasing sequence psi_0 < ... <
// psi_{n-1} < psi_0 + 2*pi.
std::vector<double> ray_angles(const Fan& fan) {
  std::vector<double> psi(fan.n());
  for (int i = 0; i < fan.n(); ++i) {
    psi[i] = std::atan2(static_cast<double>(fan.ray(i).y),
                        static_cast<double>(fan.ray(i).x));
    if (i > 0)
      while (psi[i] < psi[i - 1]) psi[i] += 2 * M_PI;
  }
  return psi;
}

// Slope of deck translate `trip` over downstairs arc t, given the rotated
// cycles from validation.
struct TranslateTable {
  const TropicalMultiSection* ts;
  const std::vector<std::vector<int>>* cycles;
  int n;
  const Vec2& slope(int trip, int t) const {
    if (ts->kind == CoveringKind::MaximalO)
      return ts->lifts[(*cycles)[0][(trip * n + t) % (ts->degree * n)]].slope;
    return ts->lifts[(*cycles)[trip][t]].slope;
  }
  // Slope of the branch that arrives at (trip, t) from below ray t. On a
  // connected cover the wrap across ray 0 shifts the translate label, so the
  // arc preceding (trip, 0) belongs to translate trip - 1.
  const Vec2& slope_before_ray(int trip, int t) const {
    if (ts->kind == CoveringKind::MaximalO) {
      const int len = ts->degree * n;
      return ts->lifts[(*cycles)[0][(trip * n + t - 1 + len) % len]].slope;
    }
    return ts->lifts[(*cycles)[trip][(t - 1 + n) % n]].slope;
  }
};

}  // namespace

CircleRestriction circle_restriction(const TropicalMultiSection& ts) {
  ValidationReport rep = validate(ts);
  if (!rep.ok)
    throw TropError(ErrorCode::MalformedData,
                    "circle restriction of invalid data: " + rep.violations[0].what);
  if (ts.kind == CoveringKind::SplitPairE && ts.degree != 2)
    throw TropError(ErrorCode::UnsupportedDegree, "split pair with degree != 2");

  const Fan& fan = ts.fan;
  const int n = fan.n();
  std::vector<double> psi = ray_angles(fan);
  auto psi_at = [&](int s) { return psi[s % n] + 2 * M_PI * (s / n); };

  CircleRestriction cr;
  if (ts.kind == CoveringKind::MaximalO) {
    const int r = ts.degree;
    cr.k = r;
    cr.deck_shift = 2 * M_PI / r;
    const auto& cyc = rep.cycles[0];
    for (int s = 0; s < r * n; ++s) {
      const Lift& L = ts.lifts[cyc[s]];
      cr.arcs.push_back({0, L.cone, L.sheet, L.slope, psi_at(s) / r, psi_at(s + 1) / r,
                         fan.ray(s % n), fan.ray(s + 1)});
    }
  } else {
    cr.k = 1;
    cr.deck_shift = 0;
    for (int cycle = 0; cycle < 2; ++cycle) {
      for (int t = 0; t < n; ++t) {
        const Lift& L = ts.lifts[rep.cycles[cycle][t]];
        cr.arcs.push_back({cycle, L.cone, L.sheet, L.slope, psi_at(t), psi_at(t + 1),
                           fan.ray(t), fan.ray(t + 1)});
      }
    }
  }
  return cr;
}

namespace {

struct PairCount {
  bool ok = true;
  int count = 0;
  GenericityFailure failure = GenericityFailure::None;
  std::string detail;
  std::vector<Crossing> crossings;
};

// Zeros of the difference <m_a(t) - m_b(t), u(psi)> over the full downstairs
// circle, counted exactly. A zero interior to an arc is transversal whenever
// the endpoint signs differ (the difference is a sinusoid on a window shorter
// than pi, so it has at most one zero there). A zero exactly at a ray is
// admitted only when both sheets pass through the ray without a kink.
PairCount count_pair(const TranslateTable& tab, const Fan& fan, int a, int b) {
  PairCount pc;
  const int n = fan.n();
  std::vector<Vec2> dm(n);
  for (int t = 0; t < n; ++t) {
    dm[t] = tab.slope(a, t) - tab.slope(b, t);
    if (dm[t].is_zero()) {
      pc.ok = false;
      pc.failure = GenericityFailure::CoincidingGraphs;
      pc.detail = "translates " + std::to_string(a) + "," + std::to_string(b) +
                  " coincide over cone " + std::to_string(t);
      return pc;
    }
  }
  auto record = [&](int arc, bool on_ray, Vec2 dir) {
    pc.count++;
    pc.crossings.push_back({arc, on_ray, primitive_of(dir), a, b});
  };
  for (int t = 0; t < n; ++t) {
    long long glo = dot(dm[t], fan.ray(t));
    long long ghi = dot(dm[t], fan.ray(t + 1));
    if (glo != 0 && ghi != 0 && sign_of(glo) != sign_of(ghi)) {
      // Interior zero: the crossing direction is the perp line of dm inside
      // the cone.
      Vec2 z = perp(dm[t]);
      if (!(cross(fan.ray(t), z) > 0 && cross(z, fan.ray(t + 1)) > 0)) z = -z;
      record(t, false, z);
    }
    if (glo == 0) {
      // Zero exactly at ray t, shared with the arcs arriving from below.
      const Vec2& prev_a = tab.slope_before_ray(a, t);
      const Vec2& prev_b = tab.slope_before_ray(b, t);
      if (!(prev_a == tab.slope(a, t)) || !(prev_b == tab.slope(b, t))) {
        pc.ok = false;
        pc.failure = GenericityFailure::CornerHit;
        pc.detail = "translates " + std::to_string(a) + "," + std::to_string(b) +
                    " cross at the kinked direction " + to_string(fan.ray(t));
        return pc;
      }
      // Both branches are affine across the ray, so their difference below it
      // equals dm[t] and the flanking interior signs are the far endpoint
      // signs of the two windows sharing the ray.
      int left = sign_of(dot(dm[t], fan.ray(t - 1)));
      int right = sign_of(ghi);
      if (left == 0 || right == 0 || left == right) {
        pc.ok = false;
        pc.failure = GenericityFailure::TangentTouch;
        pc.detail = "translates " + std::to_string(a) + "," + std::to_string(b) +
                    " touch without crossing at " + to_string(fan.ray(t));
        return pc;
      }
      record(t, true, fan.ray(t));
    }
  }
  return pc;
}

}  // namespace

GenericityReport genericity_count(const TropicalMultiSection& ts) {
  ValidationReport vrep = validate(ts);
  if (!vrep.ok)
    throw TropError(ErrorCode::MalformedData,
                    "genericity of invalid data: " + vrep.violations[0].what);
  const Fan& fan = ts.fan;
  const int n = fan.n();
  const int r = ts.degree;
  TranslateTable tab{&ts, &vrep.cycles, n};

  GenericityReport rep;
  if (ts.kind == CoveringKind::SplitPairE) {
    PairCount pc = count_pair(tab, fan, 0, 1);
    if (!pc.ok) {
      rep.failure = pc.failure;
      rep.detail = pc.detail;
      return rep;
    }
    rep.ok = true;
    rep.N = pc.count;
    rep.pair_counts = {pc.count};
    rep.crossings = std::move(pc.crossings);
    return rep;
  }

  // Connected maximal cover: count every unordered translate pair. The deck
  // difference of gap delta is continuous and periodic around the covering
  // circle, so the counts over the r fundamental windows of a gap class can
  // differ by at most the distribution of an even total; genericity demands
  // they are balanced and all gap classes agree on N = floor(total / r).
  std::map<std::pair<int, int>, PairCount> by_pair;
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b < r; ++b) {
      PairCount pc = count_pair(tab, fan, a, b);
      if (!pc.ok) {
        rep.failure = pc.failure;
        rep.detail = pc.detail;
        return rep;
      }
      by_pair[{a, b}] = std::move(pc);
    }
  }
  int N = -1;
  for (int delta = 1; delta < r; ++delta) {
    long long total = 0;
    int cmin = INT32_MAX, cmax = 0;
    for (int j = 0; j < r; ++j) {
      int aa = j, bb = (j + delta) % r;
      const PairCount& pc = by_pair[{std::min(aa, bb), std::max(aa, bb)}];
      total += pc.count;
      cmin = std::min(cmin, pc.count);
      cmax = std::max(cmax, pc.count);
    }
    int Nd = static_cast<int>(total / r);
    if (cmax - cmin > 1 || (N >= 0 && Nd != N)) {
      rep.failure = GenericityFailure::UnbalancedPairs;
      rep.detail = "translate pairs disagree on the crossing count";
      return rep;
    }
    N = Nd;
  }
  rep.ok = true;
  rep.N = N;
  for (auto& [key, pc] : by_pair) {
    rep.pair_counts.push_back(pc.count);
    for (auto& c : pc.crossings) rep.crossings.push_back(c);
  }
  return rep;
}

RealizabilityVerdict realizability(const TropicalMultiSection& ts, int d_max) {
  GenericityReport gen = genericity_count(ts);
  RealizabilityVerdict v;
  if (!gen.ok) {
    v.verdict = Realizable::Unknown;
    v.reason = "crossing data is not generic: " + gen.detail;
    return v;
  }
  v.N = gen.N;
  const int r = ts.degree;
  if (ts.kind == CoveringKind::SplitPairE) {
    // Two sections always realize the datum; with N >= 4 crossings the pair
    // also deforms to a single embedded surface of model degree N - 2.
    v.verdict = Realizable::Yes;
    if (gen.N >= 4) {
      v.d = gen.N - 2;
    } else {
      v.d = 0;
      v.trivial = true;
      v.reason = gen.N == 0 ? "disjoint sections" : "immersed union of two sections";
    }
    return v;
  }
  if (r == 2) {
    if (gen.N % 2 == 0) {
      // Unreachable for generic data: each transversal crossing flips the sign
      // of the deck difference, and one trip around the base circle of a
      // connected double cover must flip it an odd number of times. Kept as a
      // guard so a counting regression surfaces as Unknown instead of a bogus
      // Yes/No.
      v.verdict = Realizable::Unknown;
      v.reason = "even crossing count on a connected cover matches no smoothing model";
    } else if (gen.N >= 3) {
      v.verdict = Realizable::Yes;
      v.d = gen.N - 2;
    } else {
      v.verdict = Realizable::No;
      v.reason = "a connected double cover with a single crossing has no embedded "
                 "exact filling";
    }
    return v;
  }
  // Higher covering degree: look for the smallest model degree d coprime to r
  // whose crossing count floor(2(d/r + 1)) matches N.
  if (d_max <= 0) d_max = 8 * r;
  for (int d = 1; d <= d_max; ++d) {
    if (std::gcd(d, r) != 1) continue;
    if (2 * (d + r) / r == gen.N) {
      v.verdict = Realizable::Yes;
      v.d = d;
      return v;
    }
  }
  v.verdict = Realizable::Unknown;
  v.reason = "no model degree coprime to " + std::to_string(r) +
             " matches crossing count " + std::to_string(gen.N);
  return v;
}

TopologyPrediction topology_from_N(CoveringKind kind, int N) {
  TopologyPrediction tp;
  if (kind == CoveringKind::MaximalO) {
    if (N % 2 == 0)
      throw TropError(ErrorCode::ParityMismatch,
                      "connected double cover needs an odd crossing count, got " +
                          std::to_string(N));
    if (N < 3)
      throw TropError(ErrorCode::NotRealizable,
                      "no embedded model below 3 crossings");
    tp.genus = (N - 3) / 2;
    tp.punctures = 1;
  } else {
    if (N % 2 == 1)
      throw TropError(ErrorCode::ParityMismatch,
                      "split pair needs an even crossing count, got " + std::to_string(N));
    if (N < 4)
      throw TropError(ErrorCode::NotRealizable,
                      "split pair below 4 crossings is realized by disjoint sections only");
    tp.genus = (N - 4) / 2;
    tp.punctures = 2;
  }
  tp.b0 = 1;
  tp.b1 = N - 3;
  tp.b2 = 0;
  return tp;
}

TopologyPrediction topology_prediction(const TropicalMultiSection& ts) {
  GenericityReport gen = genericity_count(ts);
  if (!gen.ok)
    throw TropError(ErrorCode::GenericityViolated, gen.detail);
  return topology_from_N(ts.kind, gen.N);
}

ExtPrediction ext_from_N(int N) {
  if (N < 3)
    throw TropError(ErrorCode::NotRealizable,
                    "endomorphism prediction needs at least 3 crossings");
  return {1, N - 3, 0};
}

ExtPrediction ext_prediction(const TropicalMultiSection& ts) {
  GenericityReport gen = genericity_count(ts);
  if (!gen.ok)
    throw TropError(ErrorCode::GenericityViolated, gen.detail);
  return ext_from_N(gen.N);
}

ConicalLagrangian tropical_conical_lagrangian(const TropicalMultiSection& ts) {
  ValidationReport rep = validate(ts);
  if (!rep.ok)
    throw TropError(ErrorCode::MalformedData, rep.violations[0].what);
  ConicalLagrangian L;
  if (ts.kind == CoveringKind::MaximalO)
    L.strata.push_back({0, -1, {0, 0}, ts.degree});
  else {
    L.strata.push_back({0, -1, {0, 0}, 1});
    L.strata.push_back({0, -1, {0, 0}, 1});
  }
  for (const RayLift& rl : ts.adjacency)
    L.strata.push_back({1, rl.ray, ts.lift(rl.upper.first, rl.upper.second).slope,
                        rl.mult});
  for (const Lift& l : ts.lifts) L.strata.push_back({2, l.cone, l.slope, l.mult});
  return L;
}

TropicalMultiSection twist(const TropicalMultiSection& ts, const ToricDivisor& d) {
  TropicalMultiSection out = ts;
  std::vector<Vec2> chars(ts.fan.n());
  for (int c = 0; c < ts.fan.n(); ++c) chars[c] = divisor_character(ts.fan, d, c);
  for (Lift& L : out.lifts) L.slope = L.slope + chars[L.cone];
  return out;
}

TropicalMultiSection random_multisection(const Fan& fan, CoveringKind kind,
                                         uint64_t seed, long long slope_box,
                                         int degree) {
  const int n = fan.n();
  const int r = kind == CoveringKind::SplitPairE ? 2 : degree;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> step(-2, 2);
  std::uniform_int_distribution<long long> base(-slope_box / 2, slope_box / 2);

  // A counterclockwise slope cycle changes by an integer multiple of
  // perp(ray) at every ray crossing. Free choices everywhere except the last
  // two steps, which must close the cycle; the 2x2 integral solve can fail,
  // in which case we resample.
  auto make_cycle = [&](int trips) -> std::optional<std::vector<Vec2>> {
    const int len = trips * n;
    std::vector<Vec2> m(len);
    m[0] = {base(rng), base(rng)};
    Vec2 acc{0, 0};
    for (int s = 1; s <= len - 2; ++s) {
      Vec2 w = perp(fan.ray(s % n));
      long long j = step(rng);
      m[s] = m[s - 1] + w * j;
      acc = acc + w * j;
    }
    Vec2 wa = perp(fan.ray((len - 1) % n));
    Vec2 wb = perp(fan.ray(0));
    long long det = cross(wa, wb);
    Vec2 v = -acc;
    long long ja_num = cross(v, wb), jb_num = cross(wa, v);
    if (det == 0 || ja_num % det != 0 || jb_num % det != 0) return std::nullopt;
    m[len - 1] = m[len - 2] + wa * (ja_num / det);
    if (!(m[len - 1] + wb * (jb_num / det) == m[0])) return std::nullopt;
    for (const Vec2& s : m)
      if (std::llabs(s.x) > slope_box || std::llabs(s.y) > slope_box) return std::nullopt;
    return m;
  };

  for (int attempt = 0; attempt < 4000; ++attempt) {
    TropicalMultiSection ts;
    ts.fan = fan;
    ts.degree = r;
    ts.kind = kind;
    bool built = true;
    if (kind == CoveringKind::MaximalO) {
      auto m = make_cycle(r);
      if (!m) continue;
      for (int s = 0; s < r * n; ++s)
        ts.lifts.push_back({s % n, s / n, (*m)[s], 1});
      for (int s = 0; s < r * n; ++s) {
        int t = (s + 1) % n;
        int cur_sheet = s / n, nxt_sheet = ((s + 1) % (r * n)) / n;
        ts.adjacency.push_back({t, s % 2, 1, {s % n, cur_sheet}, {t, nxt_sheet}});
      }
    } else {
      std::vector<std::vector<Vec2>> cycles;
      for (int c = 0; c < 2; ++c) {
        auto m = make_cycle(1);
        if (!m) {
          built = false;
          break;
        }
        cycles.push_back(*m);
      }
      if (!built) continue;
      for (int c = 0; c < 2; ++c)
        for (int t = 0; t < n; ++t) ts.lifts.push_back({t, c, cycles[c][t], 1});
      for (int c = 0; c < 2; ++c)
        for (int t = 0; t < n; ++t)
          ts.adjacency.push_back({(t + 1) % n, c, 1, {t, c}, {(t + 1) % n, c}});
    }
    // Fix up ray-lift sheet labels to be unique per ray.
    std::map<int, int> next_label;
    for (RayLift& rl : ts.adjacency) rl.sheet = next_label[rl.ray]++;
    if (!validate(ts).ok) continue;
    if (!genericity_count(ts).ok) continue;
    return ts;
  }
  throw TropError(ErrorCode::MalformedData,
                  "could not sample a generic multi-section (seed " +
                      std::to_string(seed) + ")");
}

}  // namespace troplag
