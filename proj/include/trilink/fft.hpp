#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "trilink/errors.hpp"

namespace trilink {

constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 transform of a power-of-two length sequence.
/// Forward: X_m = sum_j x_j exp(-2 pi i j m / n); inverse uses exp(+...) and
/// is unnormalized.
template <typename Scalar>
void fft_radix2(std::span<std::complex<Scalar>> data, bool inverse) {
  const int n = static_cast<int>(data.size());
  if (!is_power_of_two(n)) {
    throw NonPowerOfTwo("radix-2 transform needs a power-of-two length, got " +
                        std::to_string(n));
  }
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const Scalar sign = inverse ? Scalar(1) : Scalar(-1);
  for (int len = 2; len <= n; len <<= 1) {
    const Scalar angle = sign * Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(len);
    const int half = len / 2;
    for (int k = 0; k < half; ++k) {
      const std::complex<Scalar> w = std::polar(Scalar(1), angle * Scalar(k));
      for (int i = 0; i < n; i += len) {
        const std::complex<Scalar> u = data[i + k];
        const std::complex<Scalar> v = data[i + k + half] * w;
        data[i + k] = u + v;
        data[i + k + half] = u - v;
      }
    }
  }
}

/// Length-n 1-D transform with precomputed twiddles. Power-of-two lengths use
/// the radix-2 path; other lengths fall back to direct O(n^2) summation.
template <typename Scalar>
class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n), fast_(is_power_of_two(n)), scratch_(n) {
    if (n <= 0) throw InvalidArgument("transform length must be positive");
    if (fast_) {
      for (int len = 2; len <= n; len <<= 1) {
        for (int k = 0; k < len / 2; ++k) {
          twiddles_.push_back(std::polar(
              Scalar(1), -Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(len)));
        }
      }
      bitrev_.resize(n);
      for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        bitrev_[i] = j;
      }
    } else {
      roots_.resize(n);
      for (int k = 0; k < n; ++k) {
        roots_[k] = std::polar(Scalar(1),
                               -Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(n));
      }
    }
  }

  int size() const { return n_; }
  bool fast() const { return fast_; }

  void forward(std::span<std::complex<Scalar>> data) { run(data, false); }
  void inverse(std::span<std::complex<Scalar>> data) { run(data, true); }

 private:
  void run(std::span<std::complex<Scalar>> data, bool inverse) {
    if (static_cast<int>(data.size()) != n_) throw InvalidArgument("transform length mismatch");
    if (fast_) {
      run_fast(data, inverse);
    } else {
      run_direct(data, inverse);
    }
  }

  void run_fast(std::span<std::complex<Scalar>> data, bool inverse) {
    for (int i = 1; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    }
    std::size_t offset = 0;
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len / 2;
      for (int k = 0; k < half; ++k) {
        const std::complex<Scalar> w =
            inverse ? std::conj(twiddles_[offset + k]) : twiddles_[offset + k];
        for (int i = 0; i < n_; i += len) {
          const std::complex<Scalar> u = data[i + k];
          const std::complex<Scalar> v = data[i + k + half] * w;
          data[i + k] = u + v;
          data[i + k + half] = u - v;
        }
      }
      offset += half;
    }
  }

  void run_direct(std::span<std::complex<Scalar>> data, bool inverse) {
    for (int m = 0; m < n_; ++m) {
      std::complex<Scalar> acc{};
      for (int j = 0; j < n_; ++j) {
        const auto& w = roots_[(static_cast<long>(j) * m) % n_];
        acc += data[j] * (inverse ? std::conj(w) : w);
      }
      scratch_[m] = acc;
    }
    std::copy(scratch_.begin(), scratch_.end(), data.begin());
  }

  int n_;
  bool fast_;
  std::vector<std::complex<Scalar>> twiddles_;
  std::vector<int> bitrev_;
  std::vector<std::complex<Scalar>> roots_;
  std::vector<std::complex<Scalar>> scratch_;
};

/// Signed frequency of DFT bin `index` in the range (-n/2, n/2].
constexpr int signed_mode(int index, int n) { return index <= n / 2 ? index : index - n; }

/// Spectral derivative of a real periodic sequence sampled at 2 pi j / n,
/// computed for two sequences at once packed as re + i im. The Nyquist
/// coefficient is dropped. `plan` must have length n.
template <typename Scalar>
void spectral_derivative_packed(FftPlan<Scalar>& plan, std::span<std::complex<Scalar>> data) {
  const int n = plan.size();
  plan.forward(data);
  const Scalar norm = Scalar(1) / Scalar(n);
  for (int m = 0; m < n; ++m) {
    const int freq = signed_mode(m, n);
    if (2 * freq == n) {
      data[m] = {};
    } else {
      data[m] *= std::complex<Scalar>(0, Scalar(freq) * norm);
    }
  }
  plan.inverse(data);
}

}  // namespace trilink
