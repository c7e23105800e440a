#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>

#include "trilink/errors.hpp"
#include "trilink/geometry.hpp"

namespace trilink {

/// Closed curve theta -> sum_k cos_k cos(k theta) + sin_k sin(k theta),
/// k = 0..K. Column k of each coefficient matrix is the k-th harmonic.
template <typename Scalar>
class TrigCurve {
 public:
  using Coeffs = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

  TrigCurve() : cos_(Coeffs::Zero(3, 1)), sin_(Coeffs::Zero(3, 1)) {}

  /// Shorter coefficient list is zero-padded to the longer one.
  TrigCurve(const Coeffs& cos_coeffs, const Coeffs& sin_coeffs) {
    const Eigen::Index cols = std::max<Eigen::Index>(
        1, std::max(cos_coeffs.cols(), sin_coeffs.cols()));
    cos_ = Coeffs::Zero(3, cols);
    sin_ = Coeffs::Zero(3, cols);
    cos_.leftCols(cos_coeffs.cols()) = cos_coeffs;
    sin_.leftCols(sin_coeffs.cols()) = sin_coeffs;
  }

  static TrigCurve constant(const Vec3<Scalar>& p) {
    Coeffs c(3, 1);
    c.col(0) = p;
    return TrigCurve(c, Coeffs::Zero(3, 1));
  }

  /// center + major cos(theta) + minor sin(theta).
  static TrigCurve ellipse(const Vec3<Scalar>& center, const Vec3<Scalar>& major,
                           const Vec3<Scalar>& minor) {
    Coeffs c = Coeffs::Zero(3, 2);
    Coeffs s = Coeffs::Zero(3, 2);
    c.col(0) = center;
    c.col(1) = major;
    s.col(1) = minor;
    return TrigCurve(c, s);
  }

  int harmonics() const { return static_cast<int>(cos_.cols()) - 1; }
  const Coeffs& cos_coeffs() const { return cos_; }
  const Coeffs& sin_coeffs() const { return sin_; }

  Vec3<Scalar> eval(Scalar theta) const {
    theta = reduce(theta);
    Vec3<Scalar> p = cos_.col(0);
    for (Eigen::Index k = 1; k < cos_.cols(); ++k) {
      const Scalar kt = Scalar(k) * theta;
      p += std::cos(kt) * cos_.col(k) + std::sin(kt) * sin_.col(k);
    }
    return p;
  }

  Vec3<Scalar> derivative(Scalar theta) const {
    theta = reduce(theta);
    Vec3<Scalar> d = Vec3<Scalar>::Zero();
    for (Eigen::Index k = 1; k < cos_.cols(); ++k) {
      const Scalar kt = Scalar(k) * theta;
      d += Scalar(k) * (std::cos(kt) * sin_.col(k) - std::sin(kt) * cos_.col(k));
    }
    return d;
  }

  /// The same point set traversed backwards: theta -> -theta.
  TrigCurve reversed() const { return TrigCurve(cos_, -sin_); }

  /// scale * R * p + v applied to every point of the curve.
  TrigCurve transformed(const Mat3<Scalar>& rotation, const Vec3<Scalar>& translation,
                        Scalar scale) const {
    Coeffs c = scale * (rotation * cos_);
    Coeffs s = scale * (rotation * sin_);
    c.col(0) += translation;
    return TrigCurve(c, s);
  }

  bool operator==(const TrigCurve& o) const {
    return cos_.cols() == o.cos_.cols() && cos_ == o.cos_ && sin_ == o.sin_;
  }

 private:
  static Scalar reduce(Scalar theta) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    return std::remainder(theta, two_pi);
  }

  Coeffs cos_;
  Coeffs sin_;
};

struct LinkOptions {
  double epsilon = 1e-6;
  int probe_samples = 512;
};

/// Nearest approach between two curves on a probe grid.
template <typename Scalar>
struct ClosestApproach {
  Scalar distance;
  Scalar param_a;
  Scalar param_b;
};

template <typename Scalar>
ClosestApproach<Scalar> closest_approach(const TrigCurve<Scalar>& a, const TrigCurve<Scalar>& b,
                                         int samples) {
  const Scalar h = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(samples);
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> pa(3, samples), pb(3, samples);
  for (int i = 0; i < samples; ++i) {
    pa.col(i) = a.eval(h * Scalar(i));
    pb.col(i) = b.eval(h * Scalar(i));
  }
  ClosestApproach<Scalar> best{std::numeric_limits<Scalar>::infinity(), 0, 0};
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const Scalar d2 = (pa.col(i) - pb.col(j)).squaredNorm();
      if (d2 < best.distance) best = {d2, h * Scalar(i), h * Scalar(j)};
    }
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

/// Ordered, oriented three-component link X, Y, Z with pairwise disjoint
/// components. Immutable once constructed.
template <typename Scalar>
class Link3 {
 public:
  Link3(TrigCurve<Scalar> x, TrigCurve<Scalar> y, TrigCurve<Scalar> z,
        const LinkOptions& options = {})
      : curves_{std::move(x), std::move(y), std::move(z)} {
    static constexpr std::array<const char*, 3> names{"X", "Y", "Z"};
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const auto probe = closest_approach(curves_[i], curves_[j], options.probe_samples);
        if (!(probe.distance > Scalar(options.epsilon))) {
          std::ostringstream msg;
          msg << "components " << names[i] << " and " << names[j] << " come within "
              << probe.distance << " at parameters (" << probe.param_a << ", "
              << probe.param_b << ")";
          throw DisjointnessViolation(msg.str(), double(probe.param_a),
                                      double(probe.param_b), double(probe.distance));
        }
      }
    }
  }

  const TrigCurve<Scalar>& x() const { return curves_[0]; }
  const TrigCurve<Scalar>& y() const { return curves_[1]; }
  const TrigCurve<Scalar>& z() const { return curves_[2]; }
  const TrigCurve<Scalar>& component(int i) const { return curves_.at(i); }

  bool operator==(const Link3& o) const { return curves_ == o.curves_; }

 private:
  std::array<TrigCurve<Scalar>, 3> curves_;
};

/// Apply p -> scale * R p + v to every component. R must be a rotation.
template <typename Scalar>
Link3<Scalar> transform_link(const Link3<Scalar>& link,
                             const Mat3<std::type_identity_t<Scalar>>& rotation,
                             const Vec3<std::type_identity_t<Scalar>>& translation,
                             std::type_identity_t<Scalar> scale) {
  const Scalar orth = (rotation.transpose() * rotation - Mat3<Scalar>::Identity()).norm();
  if (std::abs(rotation.determinant() - Scalar(1)) > Scalar(1e-9) || orth > Scalar(1e-9)) {
    throw NotARotation("transform matrix is not a rotation (det must be +1)");
  }
  if (!(scale > Scalar(0))) throw InvalidArgument("scale must be positive");
  return Link3<Scalar>(link.x().transformed(rotation, translation, scale),
                       link.y().transformed(rotation, translation, scale),
                       link.z().transformed(rotation, translation, scale),
                       LinkOptions{0.0, 64});
}

}  // namespace trilink
