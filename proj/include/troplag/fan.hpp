#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "troplag/lattice.hpp"

namespace troplag {

enum class ErrorCode {
  NonPrimitiveRay,
  DuplicateRay,
  NotComplete,
  NonMaximalCone,
  NonIntegralCharacter,
  MalformedData,
  UnsupportedDegree,
  ParityMismatch,
  NotRealizable,
  GenericityViolated,
  InadmissiblePolynomial,
  WrongZeroCount,
  DriftBoundViolated,
  MonotonicityFailure,
  ShrinkExhausted,
  GluingInconsistent,
  AmbiguousMatch,
  NotInFamily,
  EmptySubject,
  ParseError,
};

const char* error_code_name(ErrorCode code);

struct TropError : std::runtime_error {
  ErrorCode code;
  TropError(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

// Complete fan in R^2. Rays are primitive and stored in counterclockwise
// angular order starting from the positive x-axis; maximal cone i is spanned
// by rays i and i+1 (mod n), so ray i is the shared face of cones i-1 and i.
struct Fan {
  std::vector<Vec2> rays;

  int n() const { return static_cast<int>(rays.size()); }
  const Vec2& ray(int i) const { return rays[mod(i)]; }
  int mod(int i) const {
    int m = i % n();
    return m < 0 ? m + n() : m;
  }
  // Rays spanning maximal cone c, counterclockwise.
  const Vec2& cone_lo(int c) const { return ray(c); }
  const Vec2& cone_hi(int c) const { return ray(c + 1); }

  friend bool operator==(const Fan&, const Fan&) = default;
};

// Validates and canonicalizes a ray list into a complete fan. Throws
// NonPrimitiveRay, DuplicateRay or NotComplete.
Fan build_fan(std::vector<Vec2> rays);

// Toric divisor sum_i coeffs[i] * D_i, indexed by the canonical ray order.
struct ToricDivisor {
  std::vector<long long> coeffs;
};

// The character m with <m, v> = -coeff(v) on both rays of the given maximal
// cone. Solved exactly over Z; throws NonIntegralCharacter when the cone is
// not smooth enough for the divisor, NonMaximalCone for a bad cone index.
Vec2 divisor_character(const Fan& fan, const ToricDivisor& d, int cone);

// One stratum of a conical Lagrangian in T^*T^2 = M_R x N_R: the coset
// (base_covector + tau^perp) x tau over a cone tau of the fan.
struct ConicalStratum {
  int dim = 2;          // dim of the underlying cone: 0 origin, 1 ray, 2 maximal
  int index = -1;       // ray index (dim 1) or maximal cone index (dim 2)
  Vec2 base_covector;   // representative of the covector coset
  int mult = 1;
};

struct ConicalLagrangian {
  std::vector<ConicalStratum> strata;
};

// The conical Lagrangian associated to the fan itself: one stratum per cone
// of every dimension, all base covectors zero.
ConicalLagrangian conical_lagrangian(const Fan& fan);

}  // namespace troplag
