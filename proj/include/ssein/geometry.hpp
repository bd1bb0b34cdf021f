#pragma once

#include <cmath>

namespace ssein {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double f) const { return {x * f, y * f, z * f}; }
  Vec3 operator/(double f) const { return {x / f, y / f, z / f}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  bool operator==(const Vec3&) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double length() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / length(); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).length(); }

// Torsion angle a-b-c-d in degrees, in [-180, 180].
inline double dihedral_deg(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Vec3 b1 = b - a;
  Vec3 b2 = c - b;
  Vec3 b3 = d - c;
  double y = b2.length() * b1.dot(b2.cross(b3));
  double x = b1.cross(b2).dot(b2.cross(b3));
  return std::atan2(y, x) * (180.0 / M_PI);
}

} // namespace ssein
