#pragma once
// Quaternion and octonion arithmetic. Octonions are built by Cayley-Dickson
// doubling of the quaternions: (a,b)(c,d) = (ac - d̄b, da + bc̄).

#include <array>
#include <cmath>

namespace sphereform {

struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

  Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
};

struct Octonion {
  Quaternion a, b;  // o = a + b*e4

  Octonion() = default;
  Octonion(Quaternion a_, Quaternion b_) : a(a_), b(b_) {}

  static Octonion from_array(const std::array<double, 8>& v) {
    return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
  }
  static Octonion from_ptr(const double* v) {
    return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
  }
  std::array<double, 8> to_array() const {
    return {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z};
  }

  Octonion conj() const { return {a.conj(), -b}; }
  double norm2() const { return a.norm2() + b.norm2(); }
  double norm() const { return std::sqrt(norm2()); }

  Octonion operator+(const Octonion& o) const { return {a + o.a, b + o.b}; }
  Octonion operator-(const Octonion& o) const { return {a - o.a, b - o.b}; }
  Octonion operator-() const { return {-a, -b}; }
  Octonion operator*(double s) const { return {a * s, b * s}; }

  Octonion operator*(const Octonion& o) const {
    // (a,b)(c,d) = (ac - d̄b, da + bc̄)
    const Quaternion& c = o.a;
    const Quaternion& d = o.b;
    return {a * c - d.conj() * b, d * a + b * c.conj()};
  }

  double dot(const Octonion& o) const {
    return a.w * o.a.w + a.x * o.a.x + a.y * o.a.y + a.z * o.a.z +
           b.w * o.b.w + b.x * o.b.x + b.y * o.b.y + b.z * o.b.z;
  }
};

}  // namespace sphereform
