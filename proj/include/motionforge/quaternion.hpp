#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace motionforge {

// Hamilton quaternion w + x i + y j + z k over an arbitrary field T.
// T only needs the field operations, so exact rational types work as well
// as double.
template <typename T>
struct Quaternion {
  T w{};
  T x{};
  T y{};
  T z{};

  constexpr Quaternion() = default;
  constexpr Quaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}
  // Real scalar embedded as w.
  constexpr explicit Quaternion(T scalar) : w(scalar), x(T{}), y(T{}), z(T{}) {}

  static constexpr Quaternion identity() { return Quaternion(T{1}); }
  static constexpr Quaternion i() { return {T{}, T{1}, T{}, T{}}; }
  static constexpr Quaternion j() { return {T{}, T{}, T{1}, T{}}; }
  static constexpr Quaternion k() { return {T{}, T{}, T{}, T{1}}; }
  static constexpr Quaternion imaginary(T x_, T y_, T z_) { return {T{}, x_, y_, z_}; }

  constexpr std::array<T, 4> coeffs() const { return {w, x, y, z}; }

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
  // w² + x² + y² + z² (the real number q q*).
  constexpr T norm() const { return w * w + x * x + y * y + z * z; }
  constexpr Quaternion vector_part() const { return {T{}, x, y, z}; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(T s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(T s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, T s) { return a *= s; }
  friend constexpr Quaternion operator*(T s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, T s) { return a /= s; }

  // Hamilton product, not commutative.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
  }
};

using Quat = Quaternion<double>;

inline double max_abs(const Quat& q) {
  return std::fmax(std::fmax(std::fabs(q.w), std::fabs(q.x)),
                   std::fmax(std::fabs(q.y), std::fabs(q.z)));
}

// Dual quaternion primal + ε dual with ε² = 0.
template <typename T>
struct DualQuaternion {
  Quaternion<T> primal{};
  Quaternion<T> dual{};

  constexpr DualQuaternion() = default;
  constexpr DualQuaternion(const Quaternion<T>& p, const Quaternion<T>& d) : primal(p), dual(d) {}
  constexpr explicit DualQuaternion(const Quaternion<T>& p) : primal(p), dual() {}
  constexpr explicit DualQuaternion(T scalar) : primal(scalar), dual() {}

  static constexpr DualQuaternion identity() { return DualQuaternion(T{1}); }
  static constexpr DualQuaternion epsilon() { return {Quaternion<T>{}, Quaternion<T>::identity()}; }

  // Ordering [p0, p1, p2, p3, q0, q1, q2, q3].
  constexpr std::array<T, 8> coeffs() const {
    return {primal.w, primal.x, primal.y, primal.z, dual.w, dual.x, dual.y, dual.z};
  }
  static constexpr DualQuaternion from_coeffs(const std::array<T, 8>& c) {
    return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
  }

  // c* = p* + ε q*
  constexpr DualQuaternion conjugate() const { return {primal.conjugate(), dual.conjugate()}; }
  // c_ε = p − ε q
  constexpr DualQuaternion eps_conjugate() const { return {primal, -dual}; }

  constexpr DualQuaternion operator-() const { return {-primal, -dual}; }

  constexpr DualQuaternion& operator+=(const DualQuaternion& o) {
    primal += o.primal;
    dual += o.dual;
    return *this;
  }
  constexpr DualQuaternion& operator-=(const DualQuaternion& o) {
    primal -= o.primal;
    dual -= o.dual;
    return *this;
  }
  constexpr DualQuaternion& operator*=(T s) {
    primal *= s;
    dual *= s;
    return *this;
  }
  constexpr DualQuaternion& operator/=(T s) {
    primal /= s;
    dual /= s;
    return *this;
  }

  friend constexpr DualQuaternion operator+(DualQuaternion a, const DualQuaternion& b) { return a += b; }
  friend constexpr DualQuaternion operator-(DualQuaternion a, const DualQuaternion& b) { return a -= b; }
  friend constexpr DualQuaternion operator*(DualQuaternion a, T s) { return a *= s; }
  friend constexpr DualQuaternion operator*(T s, DualQuaternion a) { return a *= s; }
  friend constexpr DualQuaternion operator/(DualQuaternion a, T s) { return a /= s; }

  friend constexpr DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
  }

  friend constexpr bool operator==(const DualQuaternion& a, const DualQuaternion& b) {
    return a.primal == b.primal && a.dual == b.dual;
  }

  friend std::ostream& operator<<(std::ostream& os, const DualQuaternion& c) {
    return os << c.primal << " + e" << c.dual;
  }
};

using DualQuat = DualQuaternion<double>;

inline double max_abs(const DualQuat& c) { return std::fmax(max_abs(c.primal), max_abs(c.dual)); }

}  // namespace motionforge
