#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "trilink/errors.hpp"
#include "trilink/geometry.hpp"
#include "trilink/grid.hpp"
#include "trilink/link.hpp"

namespace trilink {

/// Gate on the triple-linking formulas: mean of the characteristic form and
/// the slice degrees it implies must both be below this.
inline constexpr double kNullHomologyTolerance = 1e-3;

/// Largest grid accepted by the O(N^6) helicity double sum.
inline constexpr int kMaxHelicityGrid = 24;

namespace detail {

template <typename Scalar, typename PointFn>
Grid3Field<Scalar> sample_on_grid(const Link3<Scalar>& link, int n, PointFn&& value) {
  Grid3Field<Scalar> out(n);
  const Scalar h = out.spacing();
  using Points = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;
  Points xs(3, n), ys(3, n), zs(3, n);
  for (int i = 0; i < n; ++i) {
    xs.col(i) = link.x().eval(h * Scalar(i));
    ys.col(i) = link.y().eval(h * Scalar(i));
    zs.col(i) = link.z().eval(h * Scalar(i));
  }
  for (int j = 0; j < n; ++j) {
    const Vec3<Scalar> x = xs.col(j);
    for (int k = 0; k < n; ++k) {
      const Vec3<Scalar> y = ys.col(k);
      for (int l = 0; l < n; ++l) out.at(j, k, l) = value(x, y, Vec3<Scalar>(zs.col(l)));
    }
  }
  return out;
}

}  // namespace detail

/// F(x(s), y(t), z(u)) on the n^3 grid, unnormalized.
template <typename Scalar>
Grid3Field<Scalar> sample_gauss_field(const Link3<Scalar>& link, int n) {
  return detail::sample_on_grid(link, n, [](const Vec3<Scalar>& x, const Vec3<Scalar>& y,
                                            const Vec3<Scalar>& z) { return key_map(x, y, z); });
}

/// F_S(h(x(s)), h(y(t)), h(z(u))): the spherical key map on the pointwise
/// stereographic lift of the link.
template <typename Scalar>
Grid3Field<Scalar> sample_spherical_field(const Link3<Scalar>& link, int n) {
  return detail::sample_on_grid(
      link, n, [](const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z) {
        const auto q = stereographic_lift(x, y, z);
        return key_map_spherical(q[0], q[1], q[2]);
      });
}

/// Pull back the normalized area form of S^2 along G / |G| for a sampled map
/// G: T^3 -> R^3 \ {0}. Column (j,k,l) of the result holds (p, q, r), the
/// dt^du, du^ds, ds^dt components; equivalently the dual vector field.
template <typename Scalar>
Grid3Field<Scalar> pullback_area_form(const Grid3Field<Scalar>& field) {
  Grid3Field<Scalar> ds = spectral_partial(field, Axis::s);
  const Grid3Field<Scalar> dt = spectral_partial(field, Axis::t);
  const Grid3Field<Scalar> du = spectral_partial(field, Axis::u);
  const Scalar four_pi = Scalar(4) * std::numbers::pi_v<Scalar>;
  // ds is overwritten column by column with the result.
  for (Eigen::Index i = 0; i < field.data.cols(); ++i) {
    const Vec3<Scalar> f = field.data.col(i);
    const Vec3<Scalar> fs = ds.data.col(i);
    const Vec3<Scalar> ft = dt.data.col(i);
    const Vec3<Scalar> fu = du.data.col(i);
    const Scalar r = f.norm();
    const Scalar w = Scalar(1) / (four_pi * r * r * r);
    ds.data.col(i) << w * ft.cross(fu).dot(f), w * fu.cross(fs).dot(f), w * fs.cross(ft).dot(f);
  }
  return ds;
}

/// Characteristic 2-form of the link on the n^3 grid (also the sampled
/// characteristic vector field).
template <typename Scalar>
Grid3Field<Scalar> characteristic_form(const Link3<Scalar>& link, int n) {
  return pullback_area_form(sample_gauss_field(link, n));
}

/// Degrees on the coordinate subtori implied by the mean of the form:
/// 4 pi^2 Re(c_0), ordered (p, q, r).
template <typename Scalar>
Vec3<Scalar> mean_slice_degrees(const FourierField<Scalar>& coeffs) {
  const Scalar four_pi2 = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return four_pi2 * coeffs.mean().real();
}

/// Throws NotNullHomologous unless |c_0| and the implied subtorus degrees are
/// below `tolerance`.
template <typename Scalar>
void require_null_homologous(const FourierField<Scalar>& coeffs,
                             Scalar tolerance = Scalar(kNullHomologyTolerance)) {
  const Scalar c0 = coeffs.mean().norm();
  const Vec3<Scalar> degrees = mean_slice_degrees(coeffs);
  if (!(c0 < tolerance) || !(degrees.cwiseAbs().maxCoeff() < tolerance)) {
    throw NotNullHomologous(
        "pairwise linking numbers are not all zero (|c0| = " + std::to_string(double(c0)) +
        ", degrees = (" + std::to_string(double(degrees(0))) + ", " +
        std::to_string(double(degrees(1))) + ", " + std::to_string(double(degrees(2))) + "))");
  }
}

/// Largest mode cutoff that avoids the Nyquist planes.
inline int full_mode_cutoff(int n) { return n / 2 - 1; }

/// 8 pi^3 sum_{0 < |m|_inf <= cutoff} (a_m x b_m) . m / |m|^2 with
/// c_m = a_m + i b_m. A negative cutoff means full_mode_cutoff(N). With
/// cutoff N/2 the Nyquist bins enter once per alias.
template <typename Scalar>
Scalar mu_fourier(const FourierField<Scalar>& coeffs, int cutoff = -1) {
  require_null_homologous(coeffs);
  const int n = coeffs.n;
  if (cutoff < 0) cutoff = full_mode_cutoff(n);
  if (cutoff > n / 2) {
    throw InvalidArgument("mode cutoff " + std::to_string(cutoff) + " exceeds N/2 = " +
                          std::to_string(n / 2));
  }
  Scalar sum = 0;
  for (int ms = -cutoff; ms <= cutoff; ++ms) {
    for (int mt = -cutoff; mt <= cutoff; ++mt) {
      for (int mu = -cutoff; mu <= cutoff; ++mu) {
        if (ms == 0 && mt == 0 && mu == 0) continue;
        const auto c = coeffs.at(ms, mt, mu);
        const Vec3<Scalar> a = c.real();
        const Vec3<Scalar> b = c.imag();
        const Vec3<Scalar> m{Scalar(ms), Scalar(mt), Scalar(mu)};
        sum += a.cross(b).dot(m) / m.squaredNorm();
      }
    }
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(8) * pi * pi * pi * sum;
}

/// Coefficients of the least-L2-norm primitive 1-form:
/// A_m = i (m x c_m) / |m|^2, A_0 = 0, Nyquist bins zeroed.
template <typename Scalar>
FourierField<Scalar> least_norm_primitive(const FourierField<Scalar>& coeffs) {
  require_null_homologous(coeffs);
  const int n = coeffs.n;
  FourierField<Scalar> out(n);
  using C = std::complex<Scalar>;
  const C i_unit(0, 1);
  for (int j = 0; j < n; ++j) {
    const int ms = signed_mode(j, n);
    for (int k = 0; k < n; ++k) {
      const int mt = signed_mode(k, n);
      for (int l = 0; l < n; ++l) {
        const int mu = signed_mode(l, n);
        if (ms == 0 && mt == 0 && mu == 0) continue;
        if (2 * ms == n || 2 * mt == n || 2 * mu == n) continue;
        const auto c = coeffs.at(ms, mt, mu);
        // m x c written out: Eigen's cross() conjugates complex results.
        const Eigen::Matrix<C, 3, 1> m_cross_c{Scalar(mt) * c(2) - Scalar(mu) * c(1),
                                               Scalar(mu) * c(0) - Scalar(ms) * c(2),
                                               Scalar(ms) * c(1) - Scalar(mt) * c(0)};
        out.at(ms, mt, mu) = (i_unit / Scalar(ms * ms + mt * mt + mu * mu)) * m_cross_c;
      }
    }
  }
  return out;
}

/// 1/2 integral over T^3 of alpha ^ omega, by the equal-weight rule on the grid.
template <typename Scalar>
Scalar whitehead_integral(const Grid3Field<Scalar>& primitive, const Grid3Field<Scalar>& form) {
  if (primitive.n != form.n) throw InvalidArgument("grid size mismatch");
  const Scalar h = form.spacing();
  return Scalar(0.5) * h * h * h * primitive.data.cwiseProduct(form.data).sum();
}

/// Triple linking number from the characteristic form and its least-norm
/// primitive, integrated in real space.
template <typename Scalar>
Scalar mu_whitehead_from_form(const Grid3Field<Scalar>& form) {
  const FourierField<Scalar> coeffs = dft3(form);
  return whitehead_integral(idft3(least_norm_primitive(coeffs)), form);
}

template <typename Scalar>
Scalar mu_whitehead(const Link3<Scalar>& link, int n) {
  return mu_whitehead_from_form(characteristic_form(link, n));
}

/// Same pipeline as mu_whitehead, driven by the spherical key map on the
/// stereographic image of the link.
template <typename Scalar>
Scalar mu_spherical(const Link3<Scalar>& link, int n) {
  return mu_whitehead_from_form(pullback_area_form(sample_spherical_field(link, n)));
}

namespace detail {

/// exp(i m x) for m = -cutoff..cutoff, entry m + cutoff.
template <typename Scalar>
std::vector<std::complex<Scalar>> mode_table(Scalar x, int cutoff) {
  std::vector<std::complex<Scalar>> out(2 * cutoff + 1);
  for (int m = -cutoff; m <= cutoff; ++m) out[m + cutoff] = std::polar(Scalar(1), Scalar(m) * x);
  return out;
}

template <typename Scalar>
void require_real(const std::complex<Scalar>& v, const char* what) {
  if (!(std::abs(v.imag()) < Scalar(1e-10))) {
    throw Error(std::string(what) + ": imaginary part " + std::to_string(double(v.imag())) +
                " does not cancel");
  }
}

}  // namespace detail

/// Fundamental solution of the Laplacian on the 3-torus,
/// (1 / 8 pi^3) sum_{0 < |m|_inf <= cutoff} exp(i m . x) / |m|^2.
/// Finite at x = 0 (the truncated sum).
template <typename Scalar>
Scalar phi(const Vec3<Scalar>& x, int cutoff) {
  if (cutoff < 1) throw InvalidArgument("phi cutoff must be at least 1");
  const auto e1 = detail::mode_table(x(0), cutoff);
  const auto e2 = detail::mode_table(x(1), cutoff);
  const auto e3 = detail::mode_table(x(2), cutoff);
  std::complex<Scalar> sum{};
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      const std::complex<Scalar> eab = e1[a + cutoff] * e2[b + cutoff];
      for (int c = -cutoff; c <= cutoff; ++c) {
        const int m2 = a * a + b * b + c * c;
        if (m2 == 0) continue;
        sum += eab * e3[c + cutoff] / Scalar(m2);
      }
    }
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  sum /= Scalar(8) * pi * pi * pi;
  detail::require_real(sum, "phi");
  return sum.real();
}

/// Termwise gradient of phi: (1 / 8 pi^3) sum i m exp(i m . x) / |m|^2.
template <typename Scalar>
Vec3<Scalar> grad_phi(const Vec3<Scalar>& x, int cutoff) {
  if (cutoff < 1) throw InvalidArgument("phi cutoff must be at least 1");
  const auto e1 = detail::mode_table(x(0), cutoff);
  const auto e2 = detail::mode_table(x(1), cutoff);
  const auto e3 = detail::mode_table(x(2), cutoff);
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 3, 1> sum = Eigen::Matrix<C, 3, 1>::Zero();
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      const C eab = e1[a + cutoff] * e2[b + cutoff];
      for (int c = -cutoff; c <= cutoff; ++c) {
        const int m2 = a * a + b * b + c * c;
        if (m2 == 0) continue;
        const C w = C(0, 1) * eab * e3[c + cutoff] / Scalar(m2);
        sum(0) += w * Scalar(a);
        sum(1) += w * Scalar(b);
        sum(2) += w * Scalar(c);
      }
    }
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  sum /= Scalar(8) * pi * pi * pi;
  for (int i = 0; i < 3; ++i) detail::require_real(sum(i), "grad_phi");
  return sum.real();
}

/// Fundamental solution on the 2-torus,
/// (1 / 4 pi^2) sum_{0 < |m| <= cutoff} exp(i m . x) / |m|^2 over the disc |m| <= cutoff.
template <typename Scalar>
Scalar phi2d(Scalar x1, Scalar x2, int cutoff) {
  if (cutoff < 1) throw InvalidArgument("phi cutoff must be at least 1");
  Scalar sum = 0;
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      const int m2 = a * a + b * b;
      if (m2 == 0 || m2 > cutoff * cutoff) continue;
      sum += std::cos(Scalar(a) * x1 + Scalar(b) * x2) / Scalar(m2);
    }
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return sum / (Scalar(4) * pi * pi);
}

/// Kernel of the helicity double sum on an n^3 grid: entry d holds
/// grad_y phi(x - y) = -grad_phi(node d) for x - y at node offset d.
template <typename Scalar>
Grid3Field<Scalar> helicity_kernel(int n, int cutoff) {
  Grid3Field<Scalar> out(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) out.at(j, k, l) = -grad_phi(out.node(j, k, l), cutoff);
    }
  }
  return out;
}

/// 1/2 sum_x sum_y (V(x) x V(y)) . kernel(x - y) h^6.
template <typename Scalar>
Scalar helicity_integral(const Grid3Field<Scalar>& field, const Grid3Field<Scalar>& kernel) {
  const int n = field.n;
  if (kernel.n != n) throw InvalidArgument("grid size mismatch");
  Scalar total = 0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        // (V(x) x V(y)) . K = V(x) . (V(y) x K)
        Vec3<Scalar> inner = Vec3<Scalar>::Zero();
        for (int jj = 0; jj < n; ++jj) {
          const int dj = (j - jj + n) % n;
          for (int kk = 0; kk < n; ++kk) {
            const int dk = (k - kk + n) % n;
            for (int ll = 0; ll < n; ++ll) {
              const int dl = (l - ll + n) % n;
              inner += Vec3<Scalar>(field.at(jj, kk, ll)).cross(Vec3<Scalar>(kernel.at(dj, dk, dl)));
            }
          }
        }
        total += Vec3<Scalar>(field.at(j, k, l)).dot(inner);
      }
    }
  }
  const Scalar h = field.spacing();
  const Scalar h3 = h * h * h;
  return Scalar(0.5) * h3 * h3 * total;
}

/// Triple linking number as one half the helicity of the characteristic
/// vector field. Validation path only: cost grows as N^6.
template <typename Scalar>
Scalar mu_helicity(const Link3<Scalar>& link, int n_small, int cutoff) {
  if (n_small > kMaxHelicityGrid) {
    throw GridTooLarge("helicity grid " + std::to_string(n_small) + " exceeds " +
                       std::to_string(kMaxHelicityGrid));
  }
  const Grid3Field<Scalar> form = characteristic_form(link, n_small);
  require_null_homologous(dft3(form));
  return helicity_integral(form, helicity_kernel<Scalar>(n_small, cutoff));
}

}  // namespace trilink
