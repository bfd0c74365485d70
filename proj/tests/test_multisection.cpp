#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "troplag/multisection.hpp"

using namespace troplag;
using troplag::testing::load_multisection;

namespace {

// Value of the circle restriction at upstairs angle theta on the given domain
// circle, with the angle reduced into the cycle's fundamental window.
double cr_eval(const CircleRestriction& cr, int cycle, double theta) {
  const CircleRestriction::Arc* first = nullptr;
  const CircleRestriction::Arc* last = nullptr;
  for (const auto& a : cr.arcs) {
    if (a.cycle != cycle) continue;
    if (!first) first = &a;
    last = &a;
  }
  REQUIRE(first != nullptr);
  const double lo = first->lo;
  while (theta < lo) theta += 2 * M_PI;
  while (theta >= lo + 2 * M_PI) theta -= 2 * M_PI;
  const CircleRestriction::Arc* hit = last;
  for (const auto& a : cr.arcs) {
    if (a.cycle != cycle) continue;
    if (theta >= a.lo && theta < a.hi) {
      hit = &a;
      break;
    }
  }
  const double psi = cr.k * theta;
  return hit->coeff.x * std::cos(psi) + hit->coeff.y * std::sin(psi);
}

// Sign changes of the deck difference sampled on a dense grid; an independent
// estimate of the crossing count per deck pair.
int sampled_crossings(const TropicalMultiSection& ts) {
  CircleRestriction cr = circle_restriction(ts);
  const int samples = 100000;
  const double start = cr.arcs[0].lo + 0.371e-4 * 2 * M_PI / samples;
  double span;
  int cyc_a, cyc_b;
  double shift;
  if (ts.kind == CoveringKind::MaximalO) {
    REQUIRE(ts.degree == 2);
    span = M_PI;  // half the covering circle; zeros come in deck pairs
    cyc_a = cyc_b = 0;
    shift = cr.deck_shift;
  } else {
    span = 2 * M_PI;
    cyc_a = 0;
    cyc_b = 1;
    shift = 0;
  }
  int flips = 0;
  int prev = 0;
  for (int i = 0; i <= samples; ++i) {
    double t = start + span * i / samples;
    double d = cr_eval(cr, cyc_a, t) - cr_eval(cr, cyc_b, t + shift);
    int s = (d > 0) - (d < 0);
    if (s != 0 && prev != 0 && s != prev) flips++;
    if (s != 0) prev = s;
  }
  return flips;
}

}  // namespace

TEST_CASE("the standard rank-2 example validates with a single six-cycle") {
  TropicalMultiSection ts = load_multisection("e111_multisection.json");
  ValidationReport rep = validate(ts);
  REQUIRE(rep.ok);
  REQUIRE(rep.cycles.size() == 1);
  CHECK(rep.cycles[0].size() == 6);
  CHECK(ts.lift_index(0, 0) == 0);
  CHECK(ts.lift(1, 1).slope == Vec2{1, 0});
  CHECK(ts.lift_index(5, 0) == -1);
}

TEST_CASE("the standard rank-2 example has three off-ray crossings") {
  TropicalMultiSection ts = load_multisection("e111_multisection.json");
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  CHECK(gen.N == 3);
  std::set<std::pair<long long, long long>> dirs;
  for (const auto& c : gen.crossings) {
    CHECK_FALSE(c.on_ray);
    dirs.insert({c.direction.x, c.direction.y});
  }
  std::set<std::pair<long long, long long>> expect{{1, 1}, {-1, 0}, {0, -1}};
  CHECK(dirs == expect);

  RealizabilityVerdict v = realizability(ts);
  CHECK(v.verdict == Realizable::Yes);
  CHECK(v.d == 1);
  CHECK_FALSE(v.trivial);

  TopologyPrediction tp = topology_prediction(ts);
  CHECK(tp.genus == 0);
  CHECK(tp.punctures == 1);
  CHECK(tp.b1 == 0);
  ExtPrediction ep = ext_prediction(ts);
  CHECK(ep.ext0 == 1);
  CHECK(ep.ext1 == 0);
  CHECK(ep.ext2 == 0);
}

TEST_CASE("validation rejects broken continuity and bad multiplicity totals") {
  TropicalMultiSection broken = load_multisection("broken_multisection.json");
  ValidationReport rep = validate(broken);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.violations.empty());

  TropicalMultiSection ts = load_multisection("e111_multisection.json");
  TropicalMultiSection missing = ts;
  missing.lifts.pop_back();
  CHECK_FALSE(validate(missing).ok);

  TropicalMultiSection overfull = ts;
  overfull.lifts[0].mult = 2;
  CHECK_FALSE(validate(overfull).ok);

  TropicalMultiSection bad_adj = ts;
  bad_adj.adjacency[0].upper = {1, 0};
  CHECK_FALSE(validate(bad_adj).ok);
}

TEST_CASE("a split pair can cross exactly on rays") {
  TropicalMultiSection ts = load_multisection("split_cross_n2.json");
  REQUIRE(validate(ts).ok);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  CHECK(gen.N == 2);
  REQUIRE(gen.crossings.size() == 2);
  for (const auto& c : gen.crossings) CHECK(c.on_ray);
  std::set<std::pair<long long, long long>> dirs;
  for (const auto& c : gen.crossings) dirs.insert({c.direction.x, c.direction.y});
  std::set<std::pair<long long, long long>> expect{{0, 1}, {0, -1}};
  CHECK(dirs == expect);

  RealizabilityVerdict v = realizability(ts);
  CHECK(v.verdict == Realizable::Yes);
  CHECK(v.trivial);
  CHECK(v.d == 0);
}

TEST_CASE("a rank three cover is matched to the coprime model degree") {
  TropicalMultiSection ts = load_multisection("rank3_cross.json");
  REQUIRE(validate(ts).ok);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  CHECK(gen.N == 3);
  std::vector<int> counts = gen.pair_counts;
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{3, 3, 4});

  RealizabilityVerdict v = realizability(ts);
  CHECK(v.verdict == Realizable::Yes);
  CHECK(v.d == 2);
}

TEST_CASE("a connected cover with one crossing is not realizable") {
  TropicalMultiSection ts = load_multisection("maximal_n1_square.json");
  ValidationReport rep = validate(ts);
  REQUIRE(rep.ok);
  CHECK(rep.cycles[0].size() == 8);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  CHECK(gen.N == 1);
  CHECK_FALSE(gen.crossings[0].on_ray);
  RealizabilityVerdict v = realizability(ts);
  CHECK(v.verdict == Realizable::No);
}

TEST_CASE("a ray crossing kinked across the wrap ray is a corner hit") {
  // The two branches meeting over direction (1,0) swap sheets there, so the
  // kink test must follow the deck pairing rather than the per-sheet labels.
  TropicalMultiSection ts = load_multisection("maximal_even_square.json");
  REQUIRE(validate(ts).ok);
  GenericityReport gen = genericity_count(ts);
  CHECK_FALSE(gen.ok);
  CHECK(gen.failure == GenericityFailure::CornerHit);
}

TEST_CASE("a smooth ray crossing at the wrap ray is admitted") {
  TropicalMultiSection ts = load_multisection("maximal_onray_square.json");
  REQUIRE(validate(ts).ok);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  CHECK(gen.N == 3);
  int on_ray = 0;
  for (const auto& c : gen.crossings)
    if (c.on_ray) {
      on_ray++;
      CHECK(c.direction == Vec2{1, 0});
    }
  CHECK(on_ray == 1);
  RealizabilityVerdict v = realizability(ts);
  CHECK(v.verdict == Realizable::Yes);
  CHECK(v.d == 1);
}

TEST_CASE("coinciding graphs fail genericity") {
  TropicalMultiSection ts = load_multisection("nongeneric_multisection.json");
  GenericityReport gen = genericity_count(ts);
  CHECK_FALSE(gen.ok);
  CHECK(gen.failure == GenericityFailure::CoincidingGraphs);

  // Sections differing by a constant slope cross every ray perpendicular to
  // the difference transversally; rotating the split example keeps N = 2.
  TropicalMultiSection rot = load_multisection("split_cross_n2.json");
  for (auto& l : rot.lifts)
    if (l.sheet == 1) l.slope = {0, 1};
  REQUIRE(validate(rot).ok);
  GenericityReport gr = genericity_count(rot);
  REQUIRE(gr.ok);
  CHECK(gr.N == 2);
  for (const auto& c : gr.crossings) CHECK(c.on_ray);
}

TEST_CASE("twisting by a divisor moves all sheets in lockstep") {
  TropicalMultiSection ts = load_multisection("e111_multisection.json");
  ToricDivisor d{{1, 2, 3}};
  TropicalMultiSection tw = twist(ts, d);
  REQUIRE(validate(tw).ok);
  GenericityReport a = genericity_count(ts);
  GenericityReport b = genericity_count(tw);
  REQUIRE(a.ok);
  REQUIRE(b.ok);
  CHECK(a.N == b.N);
  REQUIRE(a.crossings.size() == b.crossings.size());
  for (size_t i = 0; i < a.crossings.size(); ++i) {
    CHECK(a.crossings[i].direction == b.crossings[i].direction);
    CHECK(a.crossings[i].on_ray == b.crossings[i].on_ray);
  }
  CHECK(realizability(tw).d == realizability(ts).d);
}

TEST_CASE("the spanned conical Lagrangian has full multiplicity over every cone") {
  TropicalMultiSection ts = load_multisection("e111_multisection.json");
  ConicalLagrangian cl = tropical_conical_lagrangian(ts);
  int origin_mult = 0;
  std::vector<int> ray_mult(3, 0), cone_mult(3, 0);
  for (const auto& s : cl.strata) {
    if (s.dim == 0) origin_mult += s.mult;
    if (s.dim == 1) ray_mult[s.index] += s.mult;
    if (s.dim == 2) cone_mult[s.index] += s.mult;
  }
  CHECK(origin_mult == 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(ray_mult[i] == 2);
    CHECK(cone_mult[i] == 2);
  }
}

TEST_CASE("random multi-sections: sampled crossings match the exact count") {
  Fan p2 = build_fan({{1, 0}, {0, 1}, {-1, -1}});
  Fan square = build_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  Fan hexagon = build_fan({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
  const Fan* fans[3] = {&p2, &square, &hexagon};
  int checked = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    for (int f = 0; f < 3; ++f) {
      for (CoveringKind kind : {CoveringKind::MaximalO, CoveringKind::SplitPairE}) {
        TropicalMultiSection ts = random_multisection(*fans[f], kind, seed * 31 + f);
        GenericityReport gen = genericity_count(ts);
        REQUIRE(gen.ok);
        CHECK(sampled_crossings(ts) == gen.N);
        checked++;
      }
    }
  }
  CHECK(checked == 300);
}

TEST_CASE("random multi-sections obey the crossing parity of their covering") {
  Fan square = build_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  Fan p2 = build_fan({{1, 0}, {0, 1}, {-1, -1}});
  for (uint64_t seed = 100; seed < 160; ++seed) {
    TropicalMultiSection o = random_multisection(square, CoveringKind::MaximalO, seed);
    GenericityReport go = genericity_count(o);
    REQUIRE(go.ok);
    CHECK(go.N % 2 == 1);

    TropicalMultiSection e = random_multisection(p2, CoveringKind::SplitPairE, seed);
    GenericityReport ge = genericity_count(e);
    REQUIRE(ge.ok);
    CHECK(ge.N % 2 == 0);

    // Realizability follows the crossing count.
    RealizabilityVerdict vo = realizability(o);
    if (go.N >= 3) {
      CHECK(vo.verdict == Realizable::Yes);
      CHECK(vo.d == go.N - 2);
    } else {
      CHECK(vo.verdict == Realizable::No);
    }
    RealizabilityVerdict ve = realizability(e);
    CHECK(ve.verdict == Realizable::Yes);
    CHECK(ve.trivial == (ge.N < 4));
  }
}

TEST_CASE("topology and endomorphism predictions by crossing count") {
  for (int N : {3, 5, 7}) {
    TopologyPrediction tp = topology_from_N(CoveringKind::MaximalO, N);
    CHECK(tp.genus == (N - 3) / 2);
    CHECK(tp.punctures == 1);
    CHECK(tp.b0 == 1);
    CHECK(tp.b1 == N - 3);
    CHECK(tp.b2 == 0);
    ExtPrediction ep = ext_from_N(N);
    CHECK(ep.ext0 == 1);
    CHECK(ep.ext1 == N - 3);
    CHECK(ep.ext2 == 0);
  }
  for (int N : {4, 6}) {
    TopologyPrediction tp = topology_from_N(CoveringKind::SplitPairE, N);
    CHECK(tp.genus == (N - 4) / 2);
    CHECK(tp.punctures == 2);
    CHECK(tp.b1 == N - 3);
  }
  CHECK_THROWS_AS(topology_from_N(CoveringKind::MaximalO, 4), TropError);
  CHECK_THROWS_AS(topology_from_N(CoveringKind::MaximalO, 2), TropError);
  try {
    topology_from_N(CoveringKind::MaximalO, 4);
  } catch (const TropError& e) {
    CHECK(e.code == ErrorCode::ParityMismatch);
  }
  try {
    topology_from_N(CoveringKind::SplitPairE, 2);
  } catch (const TropError& e) {
    CHECK(e.code == ErrorCode::NotRealizable);
  }
}
