#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

namespace troplag {

// Integer lattice vector in N = Z^2, or a covector in the dual lattice M.
// The pairing between the two is the plain dot product below; everything at
// the combinatorial layer stays in exact integer arithmetic.
struct Vec2 {
  long long x = 0;
  long long y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(long long k) const { return {k * x, k * y}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline long long dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline long long cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Rotation by +90 degrees. perp(v) generates the annihilator of v in M, so the
// directions where a covector m vanishes on the unit circle are +-perp(m).
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline long long gcd_ll(long long a, long long b) {
  return std::gcd(std::llabs(a), std::llabs(b));
}

inline bool is_primitive(const Vec2& v) { return gcd_ll(v.x, v.y) == 1; }

inline Vec2 primitive_of(const Vec2& v) {
  long long g = gcd_ll(v.x, v.y);
  return g == 0 ? v : Vec2{v.x / g, v.y / g};
}

inline int sign_of(long long v) { return (v > 0) - (v < 0); }

// Exact counterclockwise angular order starting from the positive x-axis.
// Vectors are first split into the upper half (angle in [0, pi)) and the lower
// half; within a half the cross product decides.
inline int angular_half(const Vec2& v) {
  return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}

inline bool angular_less(const Vec2& a, const Vec2& b) {
  int ha = angular_half(a), hb = angular_half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

inline std::string to_string(const Vec2& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace troplag
