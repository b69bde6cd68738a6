// Copyright 2026 The roomsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "roomsim/errors.hpp"

namespace roomsim {

/// Contract for a real-input FFT engine of fixed power-of-two size N.
///
/// forward() maps N real samples to the N/2+1 lower-half spectrum bins (the
/// upper half is redundant by Hermitian symmetry). inverse() is the exact
/// inverse including the 1/N normalization, so inverse(forward(x)) == x up to
/// rounding. Engines may keep internal scratch, so transforms are non-const;
/// one engine instance must not be shared between concurrent callers.
template <class F>
concept RealFftEngine =
    std::constructible_from<F, std::size_t> &&
    requires(F f, const F cf, std::span<const double> in,
             std::span<std::complex<double>> spec,
             std::span<const std::complex<double>> cspec,
             std::span<double> out) {
      { cf.size() } -> std::convertible_to<std::size_t>;
      { cf.spectrum_size() } -> std::convertible_to<std::size_t>;
      f.forward(in, spec);
      f.inverse(cspec, out);
    };

/// Pure-software radix-2 real FFT.
///
/// A real transform of size N is computed through one complex FFT of size N/2
/// by packing even samples into the real part and odd samples into the
/// imaginary part, then untangling the two interleaved spectra. This is the
/// standard trick that halves the work for real signals.
class RadixTwoRealFft {
 public:
  explicit RadixTwoRealFft(std::size_t size) : size_(size), half_(size / 2) {
    if (size < 2 || !std::has_single_bit(size))
      throw PlanError("FFT size must be a power of two >= 2");
    // Twiddles for the half-size complex FFT: exp(-2*pi*i*k/half), k < half/2.
    complex_twiddles_.resize(half_ / 2);
    for (std::size_t k = 0; k < complex_twiddles_.size(); ++k) {
      const double phase =
          -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(half_);
      complex_twiddles_[k] = {std::cos(phase), std::sin(phase)};
    }
    // Untangling rotations: exp(-2*pi*i*k/size), k <= half.
    real_twiddles_.resize(half_ + 1);
    for (std::size_t k = 0; k <= half_; ++k) {
      const double phase =
          -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size_);
      real_twiddles_[k] = {std::cos(phase), std::sin(phase)};
    }
    bit_reversal_.resize(half_);
    const int bits = std::countr_zero(half_);
    for (std::size_t i = 0; i < half_; ++i) {
      std::size_t rev = 0;
      for (int b = 0; b < bits; ++b) rev |= ((i >> b) & 1u) << (bits - 1 - b);
      bit_reversal_[i] = rev;
    }
    work_.resize(half_);
  }

  std::size_t size() const { return size_; }
  std::size_t spectrum_size() const { return half_ + 1; }

  /// in: size() real samples. out: spectrum_size() bins, X[0..N/2].
  void forward(std::span<const double> in, std::span<std::complex<double>> out) {
    check_spans(in.size(), out.size());
    for (std::size_t k = 0; k < half_; ++k) work_[k] = {in[2 * k], in[2 * k + 1]};
    complex_fft(work_, /*inverse=*/false);
    untangle(out);
  }

  /// in: spectrum_size() bins. out: size() real samples.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    check_spans(out.size(), in.size());
    // Rebuild the packed half-size spectrum from the real spectrum:
    //   Ze[k] = (X[k] + conj(X[M-k])) / 2
    //   Zo[k] = (X[k] - conj(X[M-k])) / 2 * exp(+2*pi*i*k/N)
    //   Z[k]  = Ze[k] + i * Zo[k]
    for (std::size_t k = 0; k < half_; ++k) {
      const std::complex<double> a = in[k];
      const std::complex<double> b = std::conj(in[half_ - k]);
      const std::complex<double> even = 0.5 * (a + b);
      const std::complex<double> odd = 0.5 * (a - b) * std::conj(real_twiddles_[k]);
      work_[k] = even + std::complex<double>(0.0, 1.0) * odd;
    }
    complex_fft(work_, /*inverse=*/true);
    const double scale = 1.0 / static_cast<double>(half_);
    for (std::size_t k = 0; k < half_; ++k) {
      out[2 * k] = work_[k].real() * scale;
      out[2 * k + 1] = work_[k].imag() * scale;
    }
  }

 private:
  void check_spans(std::size_t time_len, std::size_t spec_len) const {
    if (time_len != size_) throw PlanError("sample span does not match FFT size");
    if (spec_len != half_ + 1) throw PlanError("spectrum span does not match FFT size");
  }

  // Iterative in-place Cooley-Tukey over the member scratch buffer.
  void complex_fft(std::vector<std::complex<double>>& a, bool inverse) const {
    const std::size_t n = a.size();
    if (n <= 1) return;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = bit_reversal_[i];
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half_len = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t j = 0; j < half_len; ++j) {
          std::complex<double> w = complex_twiddles_[j * stride];
          if (inverse) w = std::conj(w);
          const std::complex<double> u = a[start + j];
          const std::complex<double> v = a[start + j + half_len] * w;
          a[start + j] = u + v;
          a[start + j + half_len] = u - v;
        }
      }
    }
  }

  // Split the packed transform Z into the real signal's spectrum:
  //   X[k] = Ze[k] + exp(-2*pi*i*k/N) * Zo[k],  k = 0..N/2
  // with Ze/Zo the even/odd-sample spectra recovered from Z's symmetry.
  void untangle(std::span<std::complex<double>> out) const {
    for (std::size_t k = 0; k <= half_; ++k) {
      const std::complex<double> a = work_[k % half_];
      const std::complex<double> b = std::conj(work_[(half_ - k) % half_]);
      const std::complex<double> even = 0.5 * (a + b);
      const std::complex<double> odd =
          std::complex<double>(0.0, -0.5) * (a - b);  // (a - b) / (2i)
      out[k] = even + real_twiddles_[k] * odd;
    }
  }

  std::size_t size_;
  std::size_t half_;
  std::vector<std::complex<double>> complex_twiddles_;
  std::vector<std::complex<double>> real_twiddles_;
  std::vector<std::size_t> bit_reversal_;
  std::vector<std::complex<double>> work_;
};

static_assert(RealFftEngine<RadixTwoRealFft>);

}  // namespace roomsim
