#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "trilink/errors.hpp"
#include "trilink/fft.hpp"
#include "trilink/geometry.hpp"
#include "trilink/grid.hpp"
#include "trilink/link.hpp"

namespace trilink {

/// An invariant is accepted as round(value) only within this distance.
inline constexpr double kRoundingAcceptance = 0.1;

/// Gauss linking integral
///   (1 / 4 pi) int (A'(s) x B'(t)) . (A(s) - B(t)) / |A(s) - B(t)|^3 ds dt
/// by the equal-weight periodic rule on a samples x samples grid.
template <typename Scalar>
Scalar pairwise_linking(const TrigCurve<Scalar>& a, const TrigCurve<Scalar>& b, int samples,
                        Scalar epsilon = Scalar(1e-6)) {
  if (samples < 8) throw InvalidArgument("pairwise_linking needs at least 8 samples");
  const Scalar h = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(samples);
  using Points = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;
  Points pa(3, samples), da(3, samples), pb(3, samples), db(3, samples);
  for (int i = 0; i < samples; ++i) {
    const Scalar theta = h * Scalar(i);
    pa.col(i) = a.eval(theta);
    da.col(i) = a.derivative(theta);
    pb.col(i) = b.eval(theta);
    db.col(i) = b.derivative(theta);
  }
  Scalar sum = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec3<Scalar> p = pa.col(i);
    const Vec3<Scalar> dp = da.col(i);
    for (int j = 0; j < samples; ++j) {
      const Vec3<Scalar> diff = p - pb.col(j);
      const Scalar r = diff.norm();
      if (!(r > epsilon)) {
        std::ostringstream msg;
        msg << "curves come within " << r << " at parameters (" << h * Scalar(i) << ", "
            << h * Scalar(j) << ")";
        throw DisjointnessViolation(msg.str(), double(h * Scalar(i)), double(h * Scalar(j)),
                                    double(r));
      }
      sum += dp.cross(Vec3<Scalar>(db.col(j))).dot(diff) / (r * r * r);
    }
  }
  return sum * h * h / (Scalar(4) * std::numbers::pi_v<Scalar>);
}

/// Degree of the generalized Gauss map restricted to the coordinate 2-torus
/// on which `frozen` is held at `fixed_value`. The free axes are taken in
/// cyclic order (s frozen: (t, u); t: (u, s); u: (s, t)), which orients the
/// subtorus positively against the frozen circle.
template <typename Scalar>
Scalar subtorus_degree(const Link3<Scalar>& link, Axis frozen, Scalar fixed_value, int grid) {
  if (grid < 16) throw InvalidArgument("subtorus_degree needs grid >= 16");
  const int f = static_cast<int>(frozen);
  const int v_axis = (f + 1) % 3;
  const int w_axis = (f + 2) % 3;
  const Scalar h = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(grid);

  using Points = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;
  const Vec3<Scalar> fixed_point = link.component(f).eval(fixed_value);
  Points vs(3, grid), ws(3, grid);
  for (int i = 0; i < grid; ++i) {
    vs.col(i) = link.component(v_axis).eval(h * Scalar(i));
    ws.col(i) = link.component(w_axis).eval(h * Scalar(i));
  }

  // F on the (v, w) grid, column i * grid + j.
  Points field(3, Eigen::Index(grid) * grid);
  std::array<Vec3<Scalar>, 3> pts;
  pts[f] = fixed_point;
  for (int i = 0; i < grid; ++i) {
    pts[v_axis] = vs.col(i);
    for (int j = 0; j < grid; ++j) {
      pts[w_axis] = ws.col(j);
      field.col(Eigen::Index(i) * grid + j) = key_map(pts[0], pts[1], pts[2]);
    }
  }

  FftPlan<Scalar> plan(grid);
  std::vector<std::complex<Scalar>> xy(grid), zz(grid);
  auto partial = [&](Eigen::Index stride, auto first_of) {
    Points out(3, field.cols());
    for (int p = 0; p < grid; ++p) {
      const Eigen::Index first = first_of(p);
      for (int i = 0; i < grid; ++i) {
        const auto c = field.col(first + i * stride);
        xy[i] = {c(0), c(1)};
        zz[i] = {c(2), Scalar(0)};
      }
      spectral_derivative_packed<Scalar>(plan, xy);
      spectral_derivative_packed<Scalar>(plan, zz);
      for (int i = 0; i < grid; ++i) {
        out.col(first + i * stride) << xy[i].real(), xy[i].imag(), zz[i].real();
      }
    }
    return out;
  };
  const Points dv = partial(grid, [](int p) { return Eigen::Index(p); });
  const Points dw = partial(1, [grid](int p) { return Eigen::Index(p) * grid; });

  Scalar sum = 0;
  for (Eigen::Index i = 0; i < field.cols(); ++i) {
    const Vec3<Scalar> F = field.col(i);
    const Scalar r = F.norm();
    sum += Vec3<Scalar>(dv.col(i)).cross(Vec3<Scalar>(dw.col(i))).dot(F) / (r * r * r);
  }
  return sum * h * h / (Scalar(4) * std::numbers::pi_v<Scalar>);
}

template <typename Scalar>
struct Rounded {
  std::array<long, 3> values{};
  Scalar residual = 0;
  bool converged() const { return residual < Scalar(kRoundingAcceptance); }
};

template <typename Scalar>
Rounded<Scalar> round_invariants(const Vec3<Scalar>& raw) {
  Rounded<Scalar> out;
  for (int i = 0; i < 3; ++i) {
    out.values[i] = std::lround(raw(i));
    out.residual = std::max(out.residual, std::abs(raw(i) - Scalar(out.values[i])));
  }
  return out;
}

/// Pairwise linking numbers (p, q, r) = (Lk(Y,Z), Lk(Z,X), Lk(X,Y)).
template <typename Scalar>
struct PairwiseReport {
  Scalar lk_yz = 0;
  Scalar lk_zx = 0;
  Scalar lk_xy = 0;
  Rounded<Scalar> rounded;

  Vec3<Scalar> raw() const { return {lk_yz, lk_zx, lk_xy}; }
};

template <typename Scalar>
PairwiseReport<Scalar> pairwise_report(const Link3<Scalar>& link, int samples) {
  PairwiseReport<Scalar> out;
  out.lk_yz = pairwise_linking(link.y(), link.z(), samples);
  out.lk_zx = pairwise_linking(link.z(), link.x(), samples);
  out.lk_xy = pairwise_linking(link.x(), link.y(), samples);
  out.rounded = round_invariants(out.raw());
  return out;
}

template <typename Scalar>
struct InvariantReport {
  PairwiseReport<Scalar> gauss;
  /// Subtorus degrees with s, t, u frozen at 0, i.e. slots p, q, r.
  Vec3<Scalar> degrees = Vec3<Scalar>::Zero();
  Rounded<Scalar> degrees_rounded;
};

/// Gauss integrals and subtorus degrees side by side. Throws
/// CorrespondenceMismatch if any slot differs by 0.1 or more.
template <typename Scalar>
InvariantReport<Scalar> invariant_report(const Link3<Scalar>& link, int samples, int grid) {
  InvariantReport<Scalar> out;
  out.gauss = pairwise_report(link, samples);
  for (Axis a : {Axis::s, Axis::t, Axis::u}) {
    out.degrees(static_cast<int>(a)) = subtorus_degree(link, a, Scalar(0), grid);
  }
  out.degrees_rounded = round_invariants(out.degrees);
  static constexpr std::array<const char*, 3> slots{"p = Lk(Y,Z) vs s-frozen degree",
                                                    "q = Lk(Z,X) vs t-frozen degree",
                                                    "r = Lk(X,Y) vs u-frozen degree"};
  const Vec3<Scalar> gauss = out.gauss.raw();
  for (int i = 0; i < 3; ++i) {
    if (!(std::abs(gauss(i) - out.degrees(i)) < Scalar(kRoundingAcceptance))) {
      std::ostringstream msg;
      msg << slots[i] << ": " << gauss(i) << " vs " << out.degrees(i);
      throw CorrespondenceMismatch(msg.str());
    }
  }
  return out;
}

}  // namespace trilink
