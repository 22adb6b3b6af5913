#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trirhomb/errors.hpp"
#include "trirhomb/rational.hpp"

namespace trirhomb {

// ---------------------------------------------------------------------------
// AngleParam: the rhombus angle in degrees with degeneracy classification.
// ---------------------------------------------------------------------------

enum class AngleClass { Interior, DegenerateZero, DegenerateFlat, Square };

struct AngleParam {
  Rational alpha_deg;
  AngleClass cls = AngleClass::Interior;

  static AngleParam from(const Rational& deg) {
    if (deg < Rational(0) || deg > Rational(180))
      throw ParseError("alpha must lie in [0, 180] degrees, got " + deg.str());
    AngleParam a;
    a.alpha_deg = deg;
    if (deg == Rational(0))
      a.cls = AngleClass::DegenerateZero;
    else if (deg == Rational(180))
      a.cls = AngleClass::DegenerateFlat;
    else if (deg == Rational(90))
      a.cls = AngleClass::Square;
    else
      a.cls = AngleClass::Interior;
    return a;
  }
  static AngleParam from_string(const std::string& s) { return from(Rational::parse(s)); }

  double degrees() const { return alpha_deg.to_double(); }
  double radians() const { return degrees() * 3.14159265358979323846 / 180.0; }
  bool degenerate() const {
    return cls == AngleClass::DegenerateZero || cls == AngleClass::DegenerateFlat;
  }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  double norm() const { return std::hypot(x, y); }
};

// ---------------------------------------------------------------------------
// Direction: a symbolic rotation/orientation, k*60 + m*alpha degrees.
// ---------------------------------------------------------------------------

struct Direction {
  int k = 0;  // canonical modulo 6
  int m = 0;

  Direction() = default;
  Direction(int k_, int m_) : k(((k_ % 6) + 6) % 6), m(m_) {}

  Direction negated() const { return Direction(k + 3, m); }
  friend Direction operator+(Direction a, Direction b) { return Direction(a.k + b.k, a.m + b.m); }
  friend Direction operator-(Direction a, Direction b) { return Direction(a.k - b.k, a.m - b.m); }
  friend bool operator==(Direction a, Direction b) { return a.k == b.k && a.m == b.m; }

  double angle_deg(const AngleParam& a) const {
    double v = std::fmod(60.0 * k + m * a.degrees(), 360.0);
    if (v < 0) v += 360.0;
    return v;
  }
};

// Returns the realized angle of `d` at `a` in [0, 360).
inline double direction_angle(Direction d, const AngleParam& a) { return d.angle_deg(a); }

// ---------------------------------------------------------------------------
// ExactPoint: integer combination of unit vectors along 60*k + m*alpha.
// Canonical basis keys are k in {0,1}; directions with other k fold in via
// u(2,m) = u(1,m) - u(0,m) and u(k+3,m) = -u(k,m), so equal canonical forms
// mean equal points at every generic alpha.
// ---------------------------------------------------------------------------

struct ExactPoint {
  static constexpr int kMinOrder = -2;
  static constexpr int kMaxOrder = 2;
  static constexpr int kOrders = kMaxOrder - kMinOrder + 1;

  std::array<std::int32_t, 2 * kOrders> c{};  // [k][m - kMinOrder]

  std::int32_t get(int k, int m) const {
    if (m < kMinOrder || m > kMaxOrder) return 0;
    return c[k * kOrders + (m - kMinOrder)];
  }
  void add_coeff(int k, int m, std::int32_t v) {
    if (v == 0) return;
    if (m < kMinOrder || m > kMaxOrder)
      throw OverflowOfAlphaOrder("alpha-rotation order " + std::to_string(m) +
                                 " exceeds the configured bound");
    c[k * kOrders + (m - kMinOrder)] += v;
  }

  bool is_zero() const {
    for (auto v : c)
      if (v != 0) return false;
    return true;
  }

  friend ExactPoint operator+(const ExactPoint& a, const ExactPoint& b) {
    ExactPoint r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend ExactPoint operator-(const ExactPoint& a, const ExactPoint& b) {
    ExactPoint r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  ExactPoint operator-() const {
    ExactPoint r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend bool operator==(const ExactPoint& a, const ExactPoint& b) { return a.c == b.c; }
  friend bool operator!=(const ExactPoint& a, const ExactPoint& b) { return !(a == b); }

  // Unit vector in direction k6*60 + m*alpha, folded onto the basis.
  static ExactPoint unit(int k6, int m) {
    k6 = ((k6 % 6) + 6) % 6;
    ExactPoint p;
    if (k6 < 2) {
      p.add_coeff(k6, m, 1);
    } else if (k6 == 2) {
      p.add_coeff(1, m, 1);
      p.add_coeff(0, m, -1);
    } else {
      p = -unit(k6 - 3, m);
    }
    return p;
  }

  Vec2 eval(double alpha_deg) const {
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    Vec2 r;
    for (int k = 0; k < 2; ++k)
      for (int m = kMinOrder; m <= kMaxOrder; ++m) {
        std::int32_t v = get(k, m);
        if (v == 0) continue;
        double t = (60.0 * k + m * alpha_deg) * kDegToRad;
        r.x += v * std::cos(t);
        r.y += v * std::sin(t);
      }
    return r;
  }
  Vec2 eval(const AngleParam& a) const { return eval(a.degrees()); }

  // Rotation by d.k*60 + d.m*alpha degrees (a rigid rotation at every alpha).
  ExactPoint rotated(Direction d) const {
    ExactPoint r;
    for (int k = 0; k < 2; ++k)
      for (int m = kMinOrder; m <= kMaxOrder; ++m) {
        std::int32_t v = get(k, m);
        if (v == 0) continue;
        ExactPoint u = unit(k + d.k, m + d.m);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += v * u.c[i];
      }
    return r;
  }

  // Reflection across the x-axis: direction theta maps to -theta.
  ExactPoint reflected() const {
    ExactPoint r;
    for (int k = 0; k < 2; ++k)
      for (int m = kMinOrder; m <= kMaxOrder; ++m) {
        std::int32_t v = get(k, m);
        if (v == 0) continue;
        ExactPoint u = unit(-k, -m);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += v * u.c[i];
      }
    return r;
  }

  // Structural 30-degree lattice automorphism: u(k,even m) -> u(k-1, m+1),
  // u(k,odd m) -> u(k+2, m-1).  Defined on the patch lattice.
  ExactPoint zhat() const {
    ExactPoint r;
    for (int k = 0; k < 2; ++k)
      for (int m = kMinOrder; m <= kMaxOrder; ++m) {
        std::int32_t v = get(k, m);
        if (v == 0) continue;
        ExactPoint u = (m % 2 == 0) ? unit(k - 1, m + 1) : unit(k + 2, m - 1);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += v * u.c[i];
      }
    return r;
  }
  ExactPoint zhat_pow(int n) const {
    int nn = ((n % 12) + 12) % 12;
    ExactPoint r = *this;
    for (int i = 0; i < nn; ++i) r = r.zhat();
    return r;
  }

  std::string serialize() const;
  static ExactPoint parse(const std::string& s);

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : c) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

enum class EqualityMode { Symbolic, Numeric };

// Symbolic mode: identical canonical coefficient maps (sound for every alpha).
// Numeric mode: evaluated distance below `tol` at the given alpha.
inline bool points_equal(const ExactPoint& p, const ExactPoint& q, const AngleParam& a,
                         EqualityMode mode, double tol = 1e-9) {
  if (mode == EqualityMode::Symbolic) return p == q;
  Vec2 d = p.eval(a) - q.eval(a);
  return d.norm() < tol;
}

// ---------------------------------------------------------------------------
// RigidMotion: optional reflection across the x-axis, then rotation, then
// translation.
// ---------------------------------------------------------------------------

struct RigidMotion {
  Direction rotation;
  bool flip = false;
  ExactPoint translation;

  static RigidMotion identity() { return RigidMotion{}; }

  ExactPoint apply(const ExactPoint& p) const {
    ExactPoint q = flip ? p.reflected() : p;
    return q.rotated(rotation) + translation;
  }

  // Composition: (a.compose(b))(x) == a(b(x)).
  RigidMotion compose(const RigidMotion& b) const {
    RigidMotion r;
    r.flip = flip != b.flip;
    Direction br = flip ? Direction(-b.rotation.k, -b.rotation.m) : b.rotation;
    r.rotation = rotation + br;
    ExactPoint bt = flip ? b.translation.reflected() : b.translation;
    r.translation = bt.rotated(rotation) + translation;
    return r;
  }
};

inline ExactPoint apply_motion(const RigidMotion& g, const ExactPoint& p) { return g.apply(p); }

inline ExactPoint translate(const ExactPoint& p, const ExactPoint& v) { return p + v; }

}  // namespace trirhomb

template <>
struct std::hash<trirhomb::ExactPoint> {
  std::size_t operator()(const trirhomb::ExactPoint& p) const noexcept { return p.hash(); }
};
