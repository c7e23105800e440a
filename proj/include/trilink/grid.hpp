#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "trilink/errors.hpp"
#include "trilink/fft.hpp"
#include "trilink/geometry.hpp"

namespace trilink {

/// Axis of the 3-torus (s, t, u) = (R / 2 pi Z)^3.
enum class Axis { s = 0, t = 1, u = 2 };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::s: return "s";
    case Axis::t: return "t";
    case Axis::u: return "u";
  }
  return "?";
}

namespace detail {

inline void require_grid_size(int n) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidArgument("grid size must be even and at least 8, got " + std::to_string(n));
  }
}

/// Linear offset between consecutive nodes along an axis, in a row-major
/// (j, k, l) layout of an n^3 grid.
constexpr Eigen::Index axis_stride(Axis a, int n) {
  switch (a) {
    case Axis::s: return Eigen::Index(n) * n;
    case Axis::t: return n;
    case Axis::u: return 1;
  }
  return 0;
}

/// Calls fn(first) for the first node of every line parallel to `a`.
template <typename Fn>
void for_each_line(int n, Axis a, Fn&& fn) {
  const Eigen::Index nn = n;
  for (Eigen::Index p = 0; p < nn; ++p) {
    for (Eigen::Index q = 0; q < nn; ++q) {
      switch (a) {
        case Axis::s: fn(p * nn + q); break;
        case Axis::t: fn(p * nn * nn + q); break;
        case Axis::u: fn((p * nn + q) * nn); break;
      }
    }
  }
}

}  // namespace detail

/// Vec3 samples on the uniform n^3 grid of the 3-torus. Node (j, k, l) sits at
/// (s, t, u) = 2 pi (j, k, l) / n and is stored in column (j n + k) n + l.
template <typename Scalar>
struct Grid3Field {
  using Data = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

  int n = 0;
  Data data;

  Grid3Field() = default;
  explicit Grid3Field(int size) : n(size), data(Data::Zero(3, Eigen::Index(size) * size * size)) {
    detail::require_grid_size(size);
  }

  Eigen::Index index(int j, int k, int l) const {
    return (Eigen::Index(j) * n + k) * n + l;
  }
  Scalar spacing() const { return Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n); }
  Vec3<Scalar> node(int j, int k, int l) const {
    return spacing() * Vec3<Scalar>(Scalar(j), Scalar(k), Scalar(l));
  }
  auto at(int j, int k, int l) { return data.col(index(j, k, l)); }
  auto at(int j, int k, int l) const { return data.col(index(j, k, l)); }
};

/// Complex 3-vector Fourier coefficient c_n per mode n = (n_s, n_t, n_u),
/// stored at the periodic bin (n mod N) with the same layout as Grid3Field.
/// Convention: c_n = (1 / N^3) sum_nodes v(x) exp(-i n . x).
template <typename Scalar>
struct FourierField {
  using Complex = std::complex<Scalar>;
  using Data = Eigen::Matrix<Complex, 3, Eigen::Dynamic>;

  int n = 0;
  Data coeffs;

  FourierField() = default;
  explicit FourierField(int size)
      : n(size), coeffs(Data::Zero(3, Eigen::Index(size) * size * size)) {}

  static int bin(int mode, int size) { return ((mode % size) + size) % size; }

  Eigen::Index index(int ms, int mt, int mu) const {
    return (Eigen::Index(bin(ms, n)) * n + bin(mt, n)) * n + bin(mu, n);
  }
  /// Coefficient of mode m; any integer mode is accepted and aliased mod N.
  auto at(int ms, int mt, int mu) { return coeffs.col(index(ms, mt, mu)); }
  auto at(int ms, int mt, int mu) const { return coeffs.col(index(ms, mt, mu)); }

  /// c_0, the mean of the field.
  Eigen::Matrix<Complex, 3, 1> mean() const { return coeffs.col(0); }
};

/// Transforms every line of `data` (3 x n^3, complex) along `a`.
template <typename Scalar>
void transform_axis(Eigen::Matrix<std::complex<Scalar>, 3, Eigen::Dynamic>& data, int n, Axis a,
                    FftPlan<Scalar>& plan, bool inverse) {
  const Eigen::Index stride = detail::axis_stride(a, n);
  std::vector<std::complex<Scalar>> line(n);
  detail::for_each_line(n, a, [&](Eigen::Index first) {
    for (int c = 0; c < 3; ++c) {
      for (int i = 0; i < n; ++i) line[i] = data(c, first + i * stride);
      if (inverse) {
        plan.inverse(line);
      } else {
        plan.forward(line);
      }
      for (int i = 0; i < n; ++i) data(c, first + i * stride) = line[i];
    }
  });
}

/// Forward 3-D transform of a real field.
template <typename Scalar>
FourierField<Scalar> dft3(const Grid3Field<Scalar>& grid) {
  FourierField<Scalar> out(grid.n);
  out.coeffs = grid.data.template cast<std::complex<Scalar>>();
  FftPlan<Scalar> plan(grid.n);
  for (Axis a : {Axis::u, Axis::t, Axis::s}) transform_axis(out.coeffs, grid.n, a, plan, false);
  const Scalar norm = Scalar(1) / (Scalar(grid.n) * Scalar(grid.n) * Scalar(grid.n));
  out.coeffs *= norm;
  return out;
}

/// Inverse 3-D transform; the result is complex in general.
template <typename Scalar>
typename FourierField<Scalar>::Data idft3_complex(FourierField<Scalar> coeffs) {
  FftPlan<Scalar> plan(coeffs.n);
  for (Axis a : {Axis::s, Axis::t, Axis::u}) transform_axis(coeffs.coeffs, coeffs.n, a, plan, true);
  return std::move(coeffs.coeffs);
}

/// Inverse 3-D transform keeping the real part; exact for coefficients of a
/// real field (c_{-n} = conj(c_n)).
template <typename Scalar>
Grid3Field<Scalar> idft3(FourierField<Scalar> coeffs) {
  Grid3Field<Scalar> out;
  out.n = coeffs.n;
  out.data = idft3_complex(std::move(coeffs)).real();
  return out;
}

/// Spectral partial derivative of a real field along one axis.
template <typename Scalar>
Grid3Field<Scalar> spectral_partial(const Grid3Field<Scalar>& field, Axis a) {
  const int n = field.n;
  Grid3Field<Scalar> out(n);
  FftPlan<Scalar> plan(n);
  const Eigen::Index stride = detail::axis_stride(a, n);
  std::vector<std::complex<Scalar>> xy(n), zz(n);
  detail::for_each_line(n, a, [&](Eigen::Index first) {
    for (int i = 0; i < n; ++i) {
      const auto v = field.data.col(first + i * stride);
      xy[i] = {v(0), v(1)};
      zz[i] = {v(2), Scalar(0)};
    }
    spectral_derivative_packed<Scalar>(plan, xy);
    spectral_derivative_packed<Scalar>(plan, zz);
    for (int i = 0; i < n; ++i) {
      out.data.col(first + i * stride) << xy[i].real(), xy[i].imag(), zz[i].real();
    }
  });
  return out;
}

}  // namespace trilink
