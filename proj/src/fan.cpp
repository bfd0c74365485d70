#include "troplag/fan.hpp"

#include <algorithm>

namespace troplag {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::DuplicateRay: return "DuplicateRay";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NonMaximalCone: return "NonMaximalCone";
    case ErrorCode::NonIntegralCharacter: return "NonIntegralCharacter";
    case ErrorCode::MalformedData: return "MalformedData";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::GenericityViolated: return "GenericityViolated";
    case ErrorCode::InadmissiblePolynomial: return "InadmissiblePolynomial";
    case ErrorCode::WrongZeroCount: return "WrongZeroCount";
    case ErrorCode::DriftBoundViolated: return "DriftBoundViolated";
    case ErrorCode::MonotonicityFailure: return "MonotonicityFailure";
    case ErrorCode::ShrinkExhausted: return "ShrinkExhausted";
    case ErrorCode::GluingInconsistent: return "GluingInconsistent";
    case ErrorCode::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorCode::NotInFamily: return "NotInFamily";
    case ErrorCode::EmptySubject: return "EmptySubject";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Fan build_fan(std::vector<Vec2> rays) {
  if (rays.size() < 2)
    throw TropError(ErrorCode::NotComplete, "a complete fan needs at least 3 rays");
  for (const Vec2& v : rays) {
    if (v.is_zero() || !is_primitive(v))
      throw TropError(ErrorCode::NonPrimitiveRay, "ray " + to_string(v) + " is not primitive");
  }
  std::sort(rays.begin(), rays.end(), angular_less);
  for (size_t i = 0; i + 1 < rays.size(); ++i) {
    if (rays[i] == rays[i + 1])
      throw TropError(ErrorCode::DuplicateRay, "ray " + to_string(rays[i]) + " listed twice");
  }
  // Completeness: consecutive rays must span convex (angle < pi) cones that
  // together sweep out the whole plane. With the rays in strict
  // counterclockwise order this is exactly "every consecutive cross product
  // is positive", including the wrap-around pair.
  Fan fan{std::move(rays)};
  for (int i = 0; i < fan.n(); ++i) {
    if (cross(fan.ray(i), fan.ray(i + 1)) <= 0)
      throw TropError(ErrorCode::NotComplete,
                      "cone between " + to_string(fan.ray(i)) + " and " +
                          to_string(fan.ray(i + 1)) + " is not strictly convex");
  }
  return fan;
}

Vec2 divisor_character(const Fan& fan, const ToricDivisor& d, int cone) {
  if (cone < 0 || cone >= fan.n())
    throw TropError(ErrorCode::NonMaximalCone,
                    "cone index " + std::to_string(cone) + " out of range");
  if (static_cast<int>(d.coeffs.size()) != fan.n())
    throw TropError(ErrorCode::MalformedData, "divisor has wrong number of coefficients");
  const Vec2 u = fan.cone_lo(cone);
  const Vec2 v = fan.cone_hi(cone);
  const long long ku = d.coeffs[cone];
  const long long kv = d.coeffs[fan.mod(cone + 1)];
  // Solve <m,u> = -ku, <m,v> = -kv by Cramer's rule.
  const long long det = cross(u, v);
  const long long mx_num = -ku * v.y + kv * u.y;
  const long long my_num = -kv * u.x + ku * v.x;
  if (mx_num % det != 0 || my_num % det != 0)
    throw TropError(ErrorCode::NonIntegralCharacter,
                    "divisor is not Cartier-integral on cone " + std::to_string(cone));
  return {mx_num / det, my_num / det};
}

ConicalLagrangian conical_lagrangian(const Fan& fan) {
  ConicalLagrangian L;
  L.strata.push_back({0, -1, {0, 0}, 1});
  for (int i = 0; i < fan.n(); ++i) L.strata.push_back({1, i, {0, 0}, 1});
  for (int c = 0; c < fan.n(); ++c) L.strata.push_back({2, c, {0, 0}, 1});
  return L;
}

}  // namespace troplag
