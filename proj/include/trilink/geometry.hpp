#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

#include "trilink/errors.hpp"

namespace trilink {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

/// Relative distinctness guard: a configuration is degenerate when its
/// smallest pairwise distance is at most this fraction of its diameter.
inline constexpr double kDistinctnessTolerance = 1e-12;

/// Quaternion re + im, basis (1, i, j, k) with ij = k. R^3 is identified with
/// the purely imaginary quaternions.
template <typename Scalar>
struct Quaternion {
  Scalar re{0};
  Vec3<Scalar> im{Vec3<Scalar>::Zero()};

  Quaternion() = default;
  Quaternion(Scalar real, const Vec3<Scalar>& imag) : re(real), im(imag) {}

  static Quaternion identity() { return {Scalar(1), Vec3<Scalar>::Zero()}; }
  static Quaternion pure(const Vec3<Scalar>& v) { return {Scalar(0), v}; }

  Quaternion conjugate() const { return {re, -im}; }
  Scalar squaredNorm() const { return re * re + im.squaredNorm(); }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Quaternion operator-(const Quaternion& a) { return {-a.re, -a.im}; }
  friend Quaternion operator*(Scalar s, const Quaternion& q) {
    return {s * q.re, s * q.im};
  }
  /// Hamilton product.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.re * b.re - a.im.dot(b.im),
            a.re * b.im + b.re * a.im + a.im.cross(b.im)};
  }
};

namespace detail {

template <typename Scalar>
void require_distinct(Scalar ab, Scalar bc, Scalar ca) {
  using std::max;
  using std::min;
  const Scalar smallest = min(ab, min(bc, ca));
  const Scalar diameter = max(ab, max(bc, ca));
  if (!(smallest > Scalar(kDistinctnessTolerance) * diameter)) {
    throw DegenerateInput("configuration points are not pairwise distinct");
  }
}

}  // namespace detail

/// Sides of the triangle xyz: a = z - y, b = x - z, c = y - x.
template <typename Scalar>
struct TriangleSides {
  Vec3<Scalar> a, b, c;
};

template <typename Scalar>
TriangleSides<Scalar> triangle_sides(const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                     const Vec3<Scalar>& z) {
  return {z - y, x - z, y - x};
}

/// The key map split into the part in the plane of the triangle,
/// [a] + [b] + [c], and the part along its normal, [b,c] + [c,a] + [a,b].
template <typename Scalar>
struct KeyMapParts {
  Vec3<Scalar> tangential;
  Vec3<Scalar> normal;
  Vec3<Scalar> sum() const { return tangential + normal; }
};

template <typename Scalar>
KeyMapParts<Scalar> key_map_parts(const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                  const Vec3<Scalar>& z) {
  const auto [a, b, c] = triangle_sides(x, y, z);
  const Scalar la = a.norm();
  const Scalar lb = b.norm();
  const Scalar lc = c.norm();
  detail::require_distinct(la, lb, lc);
  // Each normal term is (sin angle) n; at collinearity the cross products
  // vanish, so n is never formed on its own.
  return {a / la + b / lb + c / lc,
          b.cross(c) / (lb * lc) + c.cross(a) / (lc * la) + a.cross(b) / (la * lb)};
}

/// Euclidean key map F(x, y, z) = [a] + [b] + [c] + [b,c] + [c,a] + [a,b].
/// Never zero on distinct points.
template <typename Scalar>
Vec3<Scalar> key_map(const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z) {
  return key_map_parts(x, y, z).sum();
}

/// f = F / |F|, a point of the unit sphere.
template <typename Scalar>
Vec3<Scalar> normalized_key_map(const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                const Vec3<Scalar>& z) {
  return key_map(x, y, z).normalized();
}

/// Inverse stereographic projection from -1, R^3 -> S^3 \ {-1}.
template <typename Scalar>
Quaternion<Scalar> inverse_stereographic(const Vec3<Scalar>& q) {
  const Scalar r2 = q.squaredNorm();
  const Scalar denom = Scalar(1) + r2;
  return {(Scalar(1) - r2) / denom, (Scalar(2) / denom) * q};
}

/// Spherical key map F_S(u, v, w) = Im((v - w) conj(u - w)).
template <typename Scalar>
Vec3<Scalar> key_map_spherical(const Quaternion<Scalar>& u, const Quaternion<Scalar>& v,
                               const Quaternion<Scalar>& w) {
  const Quaternion<Scalar> vw = v - w;
  const Quaternion<Scalar> uw = u - w;
  detail::require_distinct(vw.norm(), uw.norm(), (u - v).norm());
  return (vw * uw.conjugate()).im;
}

/// Translate z to the origin and lift: (h(x - z), h(y - z), 1).
template <typename Scalar>
std::array<Quaternion<Scalar>, 3> based_lift(const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                             const Vec3<Scalar>& z) {
  const auto [a, b, c] = triangle_sides(x, y, z);
  detail::require_distinct(a.norm(), b.norm(), c.norm());
  return {inverse_stereographic<Scalar>(x - z), inverse_stereographic<Scalar>(y - z),
          Quaternion<Scalar>::identity()};
}

/// Pointwise lift (h(x), h(y), h(z)).
template <typename Scalar>
std::array<Quaternion<Scalar>, 3> stereographic_lift(const Vec3<Scalar>& x,
                                                     const Vec3<Scalar>& y,
                                                     const Vec3<Scalar>& z) {
  return {inverse_stereographic(x), inverse_stereographic(y), inverse_stereographic(z)};
}

/// |a|^2 b + a |b|^2 + a x b: the spherical key map on based lifts, up to
/// the positive factor bridge_scale().
template <typename Scalar>
Vec3<Scalar> reduced_bridge_map(const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                const Vec3<Scalar>& z) {
  const auto [a, b, c] = triangle_sides(x, y, z);
  detail::require_distinct(a.norm(), b.norm(), c.norm());
  return a.squaredNorm() * b + b.squaredNorm() * a + a.cross(b);
}

/// C = 4 / ((1 + |a|^2)(1 + |b|^2)).
template <typename Scalar>
Scalar bridge_scale(const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z) {
  const auto [a, b, c] = triangle_sides(x, y, z);
  return Scalar(4) / ((Scalar(1) + a.squaredNorm()) * (Scalar(1) + b.squaredNorm()));
}

/// Cosine of the angle between the Euclidean key map and the spherical key
/// map on the based lift. Stays above -1 on every distinct triple.
template <typename Scalar>
Scalar bridge_gap(const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z) {
  return normalized_key_map(x, y, z).dot(reduced_bridge_map(x, y, z).normalized());
}

}  // namespace trilink
