#include "troplag/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace troplag {

namespace {

using nlohmann::json;

json parse_doc(const std::string& text, const char* want_type) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw TropError(ErrorCode::ParseError, std::string("bad json: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", std::string()) != "troplag/1")
    throw TropError(ErrorCode::ParseError, "missing schema tag \"troplag/1\"");
  if (j.value("type", std::string()) != want_type)
    throw TropError(ErrorCode::ParseError,
                    std::string("expected a \"") + want_type + "\" document");
  return j;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw TropError(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return *it;
}

long long int_from(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw TropError(ErrorCode::ParseError, std::string(what) + " must be an integer");
  return j.get<long long>();
}

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw TropError(ErrorCode::ParseError, "expected an integer pair [x, y]");
  return {int_from(j[0], "lattice coordinate"), int_from(j[1], "lattice coordinate")};
}

json vec_to(const Vec2& v) { return json::array({v.x, v.y}); }

std::vector<Vec2> rays_from(const json& j) {
  if (!j.is_array())
    throw TropError(ErrorCode::ParseError, "\"rays\" must be an array of pairs");
  std::vector<Vec2> rays;
  for (const auto& e : j) rays.push_back(vec_from(e));
  return rays;
}

json fan_body(const Fan& fan) {
  json rays = json::array();
  for (const auto& r : fan.rays) rays.push_back(vec_to(r));
  return json{{"rays", std::move(rays)}};
}

const char* kind_name(CoveringKind k) {
  return k == CoveringKind::MaximalO ? "maximal" : "split";
}

CoveringKind kind_from(const std::string& s) {
  if (s == "maximal") return CoveringKind::MaximalO;
  if (s == "split") return CoveringKind::SplitPairE;
  throw TropError(ErrorCode::ParseError, "\"kind\" must be \"maximal\" or \"split\"");
}

const char* failure_name(GenericityFailure f) {
  switch (f) {
    case GenericityFailure::None: return "none";
    case GenericityFailure::CornerHit: return "corner_hit";
    case GenericityFailure::CoincidingGraphs: return "coinciding_graphs";
    case GenericityFailure::TangentTouch: return "tangent_touch";
    default: return "unbalanced_pairs";
  }
}

const char* realizable_name(Realizable r) {
  switch (r) {
    case Realizable::Yes: return "yes";
    case Realizable::No: return "no";
    default: return "unknown";
  }
}

json complex_to(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json topology_to(const TopologyPrediction& t) {
  return json{{"genus", t.genus},
              {"punctures", t.punctures},
              {"betti", json::array({t.b0, t.b1, t.b2})}};
}

json ext_to(const ExtPrediction& e) {
  return json{{"dimensions", json::array({e.ext0, e.ext1, e.ext2})}};
}

json certificate_body(const EmbeddednessCertificate& cert) {
  return json{{"verdict", verdict_name(cert.verdict)},
              {"margin", cert.margin},
              {"grid", json::array({cert.nr, cert.ntheta})},
              {"range", json::array({cert.r_lo, cert.r_hi})},
              {"cells", cert.cells},
              {"seconds", cert.seconds},
              {"worst_cell",
               json{{"i", cert.worst.i},
                    {"j", cert.worst.j},
                    {"r", json::array({cert.worst.r0, cert.worst.r1})},
                    {"theta", json::array({cert.worst.t0, cert.worst.t1})},
                    {"margin", cert.worst.margin}}}};
}

json collision_body(const CollisionReport& rep) {
  json pairs = json::array();
  for (const auto& p : rep.pairs) pairs.push_back(json::array({p.first, p.second}));
  return json{{"compared", rep.compared},
              {"collisions", rep.collisions},
              {"min_x_gap", rep.min_x_gap},
              {"pairs", std::move(pairs)},
              {"seconds", rep.seconds}};
}

json genericity_body(const GenericityReport& rep) {
  json crossings = json::array();
  for (const auto& c : rep.crossings)
    crossings.push_back(json{{"arc", c.arc},
                             {"on_ray", c.on_ray},
                             {"direction", vec_to(c.direction)},
                             {"translates", json::array({c.trip_a, c.trip_b})}});
  return json{{"ok", rep.ok},
              {"N", rep.N},
              {"pair_counts", rep.pair_counts},
              {"failure", failure_name(rep.failure)},
              {"detail", rep.detail},
              {"crossings", std::move(crossings)}};
}

std::string with_header(json j, const char* type) {
  j["schema"] = "troplag/1";
  j["type"] = type;
  return j.dump(2) + "\n";
}

}  // namespace

std::string document_type(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw TropError(ErrorCode::ParseError, std::string("bad json: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", std::string()) != "troplag/1")
    throw TropError(ErrorCode::ParseError, "missing schema tag \"troplag/1\"");
  std::string type = j.value("type", std::string());
  if (type.empty()) throw TropError(ErrorCode::ParseError, "missing \"type\" tag");
  return type;
}

Fan fan_from_json(const std::string& text) {
  json j = parse_doc(text, "fan");
  return build_fan(rays_from(field(j, "rays")));
}

std::string fan_to_json(const Fan& fan) { return with_header(fan_body(fan), "fan"); }

TropicalMultiSection multisection_from_json(const std::string& text) {
  json j = parse_doc(text, "multisection");
  TropicalMultiSection ts;
  const json& jf = field(j, "fan");
  if (!jf.is_object())
    throw TropError(ErrorCode::ParseError, "\"fan\" must be an object");
  ts.fan = build_fan(rays_from(field(jf, "rays")));
  ts.degree = static_cast<int>(int_from(field(j, "degree"), "\"degree\""));
  const json& jk = field(j, "kind");
  if (!jk.is_string())
    throw TropError(ErrorCode::ParseError, "\"kind\" must be a string");
  ts.kind = kind_from(jk.get<std::string>());
  const json& jl = field(j, "lifts");
  if (!jl.is_array())
    throw TropError(ErrorCode::ParseError, "\"lifts\" must be an array");
  for (const auto& e : jl) {
    Lift lift;
    lift.cone = static_cast<int>(int_from(field(e, "cone"), "\"cone\""));
    lift.sheet = static_cast<int>(int_from(field(e, "sheet"), "\"sheet\""));
    lift.slope = vec_from(field(e, "slope"));
    lift.mult = static_cast<int>(e.contains("mult") ? int_from(e["mult"], "\"mult\"") : 1);
    ts.lifts.push_back(lift);
  }
  const json& ja = field(j, "adjacency");
  if (!ja.is_array())
    throw TropError(ErrorCode::ParseError, "\"adjacency\" must be an array");
  for (const auto& e : ja) {
    RayLift rl;
    rl.ray = static_cast<int>(int_from(field(e, "ray"), "\"ray\""));
    rl.sheet = static_cast<int>(int_from(field(e, "sheet"), "\"sheet\""));
    rl.mult = static_cast<int>(e.contains("mult") ? int_from(e["mult"], "\"mult\"") : 1);
    auto side = [&e](const char* key) {
      const json& s = field(e, key);
      if (!s.is_array() || s.size() != 2)
        throw TropError(ErrorCode::ParseError, "adjacency sides must be [cone, sheet]");
      return std::pair<int, int>(static_cast<int>(int_from(s[0], "cone")),
                                 static_cast<int>(int_from(s[1], "sheet")));
    };
    rl.lower = side("lower");
    rl.upper = side("upper");
    ts.adjacency.push_back(rl);
  }
  return ts;
}

std::string multisection_to_json(const TropicalMultiSection& ts) {
  json lifts = json::array();
  for (const auto& l : ts.lifts)
    lifts.push_back(json{{"cone", l.cone},
                         {"sheet", l.sheet},
                         {"slope", vec_to(l.slope)},
                         {"mult", l.mult}});
  json adjacency = json::array();
  for (const auto& a : ts.adjacency)
    adjacency.push_back(json{{"ray", a.ray},
                             {"sheet", a.sheet},
                             {"mult", a.mult},
                             {"lower", json::array({a.lower.first, a.lower.second})},
                             {"upper", json::array({a.upper.first, a.upper.second})}});
  return with_header(json{{"fan", fan_body(ts.fan)},
                          {"degree", ts.degree},
                          {"kind", kind_name(ts.kind)},
                          {"lifts", std::move(lifts)},
                          {"adjacency", std::move(adjacency)}},
                     "multisection");
}

KaneyamaBundle bundle_from_json(const std::string& text) {
  json j = parse_doc(text, "bundle");
  KaneyamaBundle kb;
  kb.a = int_from(field(j, "a"), "\"a\"");
  kb.b = int_from(field(j, "b"), "\"b\"");
  kb.c = int_from(field(j, "c"), "\"c\"");
  if (j.contains("twist")) {
    const json& t = j["twist"];
    if (!t.is_array() || t.size() != 3)
      throw TropError(ErrorCode::ParseError, "\"twist\" must be [k0, k1, k2]");
    kb.k0 = int_from(t[0], "twist coefficient");
    kb.k1 = int_from(t[1], "twist coefficient");
    kb.k2 = int_from(t[2], "twist coefficient");
  }
  if (j.contains("dual")) {
    if (!j["dual"].is_boolean())
      throw TropError(ErrorCode::ParseError, "\"dual\" must be a boolean");
    kb.dual = j["dual"].get<bool>();
  }
  if (kb.a < 1 || kb.b < 1 || kb.c < 1)
    throw TropError(ErrorCode::ParseError, "weights a, b, c must be positive");
  return kb;
}

std::string bundle_to_json(const KaneyamaBundle& kb) {
  return with_header(json{{"a", kb.a},
                          {"b", kb.b},
                          {"c", kb.c},
                          {"twist", json::array({kb.k0, kb.k1, kb.k2})},
                          {"dual", kb.dual}},
                     "bundle");
}

std::string validation_to_json(const ValidationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back(json{{"code", error_code_name(v.code)}, {"what", v.what}});
  return with_header(json{{"ok", rep.ok},
                          {"violations", std::move(violations)},
                          {"cycles", rep.cycles}},
                     "validation");
}

std::string genericity_to_json(const GenericityReport& rep) {
  return with_header(genericity_body(rep), "genericity");
}

std::string certificate_to_json(const EmbeddednessCertificate& cert) {
  return with_header(certificate_body(cert), "certificate");
}

std::string collision_to_json(const CollisionReport& rep) {
  return with_header(collision_body(rep), "collision_scan");
}

std::string realize_to_json(const RealizeResult& res) {
  json j{{"verdict", realizable_name(res.verdict.verdict)},
         {"N", res.verdict.N},
         {"d", res.verdict.d},
         {"trivial", res.verdict.trivial},
         {"reason", res.verdict.reason},
         {"genericity", genericity_body(res.genericity)},
         {"built", res.built}};
  if (res.predicted) {
    j["topology"] = topology_to(res.topology);
    j["ext"] = ext_to(res.ext);
  }
  if (res.built) {
    const GluedPotential& gp = *res.glued;
    j["model"] = json{{"degree", gp.model.d},
                      {"leading_coefficient", gp.model.a_d},
                      {"halvings", gp.halvings},
                      {"branch_flipped", gp.model.branch_flipped},
                      {"R", gp.R},
                      {"eps", gp.eps}};
    j["certificate"] = certificate_body(res.certificate);
    j["drift"] = json{{"pass", res.drift.pass},
                      {"fitted_exponent", res.drift.fitted_exponent},
                      {"expected_exponent", res.drift.expected_exponent},
                      {"max_step", res.drift.max_step},
                      {"steps", res.drift.steps_used}};
    j["zero_radii"] = res.zero_radii;
    j["zeros"] = res.zeros;
    json imms = json::array();
    for (const auto& ip : res.immersed)
      imms.push_back(json{{"xi", complex_to(ip.xi)},
                          {"g0", complex_to(ip.g0)},
                          {"angles", json::array({ip.angle1, ip.angle2})},
                          {"angle_sum", ip.angle_sum},
                          {"degree", ip.degree}});
    j["immersed_points"] = std::move(imms);
  }
  if (res.scanned) j["scan"] = collision_body(res.scan);
  return with_header(std::move(j), "realization");
}

std::string mirror_to_json(const MirrorSummary& s) {
  return with_header(json{{"bundle", json{{"a", s.bundle.a},
                                          {"b", s.bundle.b},
                                          {"c", s.bundle.c},
                                          {"twist", json::array({s.bundle.k0, s.bundle.k1,
                                                                 s.bundle.k2})},
                                          {"dual", s.bundle.dual}}},
                          {"N", s.N},
                          {"d", s.d},
                          {"topology", topology_to(s.topology)},
                          {"ext", ext_to(s.ext)},
                          {"exact_filling", s.exact_filling}},
                     "mirror_summary");
}

std::string cloud_to_csv(const Cloud& cloud) {
  std::string out = "r,theta,xi1,xi2,x1,x2,sheet\n";
  out.reserve(out.size() + cloud.pts.size() * 96);
  char buf[192];
  for (const auto& p : cloud.pts) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", p.r,
                  p.theta, p.xi1, p.xi2, p.x1, p.x2, p.sheet);
    out += buf;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TropError(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TropError(ErrorCode::MalformedData, "cannot write " + path);
  out << content;
}

}  // namespace troplag
