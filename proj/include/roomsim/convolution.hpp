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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "roomsim/audio_buffer.hpp"
#include "roomsim/errors.hpp"
#include "roomsim/fft.hpp"
#include "roomsim/room_model.hpp"

namespace roomsim {

enum class Strategy { direct, full_fft, overlap_add };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::direct: return "direct";
    case Strategy::full_fft: return "full_fft";
    case Strategy::overlap_add: return "overlap_add";
  }
  return "unknown";
}

/// Workload description for the multiplication-count models.
///
/// num_sources may be fractional when modeling an average workload (e.g. 2.55
/// sources per utterance); the convolution routines themselves always operate
/// on one concrete signal/RIR pair.
struct CostInputs {
  double num_sources = 1.0;   // I
  double num_mics = 1.0;      // J
  std::size_t signal_len = 0; // N_x
  std::size_t rir_len = 0;    // N_h

  void validate() const {
    if (num_sources <= 0.0 || num_mics <= 0.0)
      throw ConfigError("source and mic counts must be positive");
    if (signal_len == 0 || rir_len == 0)
      throw ConfigError("signal and RIR lengths must be positive");
  }
};

/// A chosen filtering strategy with its predicted cost in real multiplications.
struct ConvolutionPlan {
  Strategy strategy = Strategy::direct;
  std::optional<std::size_t> fft_size;  // absent for direct
  double predicted_cost = 0.0;
};

namespace detail {

inline std::size_t checked_fft_size(std::size_t n, std::size_t min_legal,
                                    const char* what) {
  if (n < 2 || !std::has_single_bit(n))
    throw PlanError(std::string(what) + ": FFT size must be a power of two >= 2");
  if (n < min_legal)
    throw PlanError(std::string(what) + ": FFT size too small for this workload");
  return n;
}

/// Smallest usable transform size covering n samples.
inline std::size_t fft_size_for(std::size_t n) {
  return std::bit_ceil(std::max<std::size_t>(n, 2));
}

}  // namespace detail

/// Multiplications for plain time-domain filtering: I * J * N_x * N_h.
inline double cost_direct(const CostInputs& c) {
  c.validate();
  return c.num_sources * c.num_mics * static_cast<double>(c.signal_len) *
         static_cast<double>(c.rir_len);
}

/// Real multiplications for one-shot FFT filtering: I * J * (6 N log2 N + 2 N).
///
/// Two forward transforms, one inverse (N/2 log2 N each under the radix-2
/// assumption, doubled for real multiplications), plus one complex product per
/// bin of the Hermitian lower half-spectrum.
inline double cost_full_fft(const CostInputs& c, std::size_t fft_size) {
  c.validate();
  detail::checked_fft_size(fft_size, c.signal_len + c.rir_len - 1, "full FFT");
  const auto n = static_cast<double>(fft_size);
  return c.num_sources * c.num_mics * (6.0 * n * std::log2(n) + 2.0 * n);
}

/// Blocks needed to cover the signal with fresh-sample length N - N_h + 1.
inline std::size_t ola_block_count(std::size_t signal_len, std::size_t rir_len,
                                   std::size_t fft_size) {
  const std::size_t block_len = fft_size - rir_len + 1;
  return (signal_len + block_len - 1) / block_len;
}

/// Real multiplications for overlap-add filtering:
/// I * J * (B * (4 N log2 N + 2 N) + 2 N log2 N), B = ceil(N_x / (N - N_h + 1)).
///
/// Each block pays one forward and one inverse transform plus the spectral
/// product; the RIR transform is paid once, not per block.
inline double cost_ola(const CostInputs& c, std::size_t fft_size) {
  c.validate();
  detail::checked_fft_size(fft_size, c.rir_len, "overlap-add");
  const auto n = static_cast<double>(fft_size);
  const auto blocks = static_cast<double>(
      ola_block_count(c.signal_len, c.rir_len, fft_size));
  return c.num_sources * c.num_mics *
         (blocks * (4.0 * n * std::log2(n) + 2.0 * n) + 2.0 * n * std::log2(n));
}

/// Best plan for a forced strategy (smallest predicted cost, ties to smaller N).
inline ConvolutionPlan plan_for(const CostInputs& c, Strategy strategy) {
  c.validate();
  switch (strategy) {
    case Strategy::direct:
      return {Strategy::direct, std::nullopt, cost_direct(c)};
    case Strategy::full_fft: {
      const std::size_t n = detail::fft_size_for(c.signal_len + c.rir_len - 1);
      return {Strategy::full_fft, n, cost_full_fft(c, n)};
    }
    case Strategy::overlap_add: {
      const std::size_t n_max = detail::fft_size_for(c.signal_len + c.rir_len - 1);
      ConvolutionPlan best;
      best.predicted_cost = std::numeric_limits<double>::infinity();
      for (std::size_t n = detail::fft_size_for(c.rir_len); n <= n_max; n <<= 1) {
        const double cost = cost_ola(c, n);
        if (cost < best.predicted_cost)
          best = {Strategy::overlap_add, n, cost};
      }
      return best;
    }
  }
  throw PlanError("unknown strategy");
}

/// Picks the cheaper of overlap-add (over all candidate power-of-two sizes up
/// to the one-shot size) and one-shot FFT filtering at its minimum legal size.
/// Ties go to overlap-add and to the smaller FFT size.
inline ConvolutionPlan choose_plan(const CostInputs& c) {
  const ConvolutionPlan ola = plan_for(c, Strategy::overlap_add);
  const ConvolutionPlan full = plan_for(c, Strategy::full_fft);
  return full.predicted_cost < ola.predicted_cost ? full : ola;
}

/// Ground-truth linear convolution by the definition sum.
inline AudioBuffer convolve_direct(const AudioBuffer& x, const Rir& h) {
  x.validate();
  if (!x.is_mono() || x.num_frames() == 0)
    throw DegenerateInputError("convolution input must be non-empty mono audio");
  if (h.samples.empty()) throw DegenerateInputError("empty impulse response");
  if (x.sample_rate != h.sample_rate)
    throw ConfigError("signal and RIR sample rates differ");

  const std::vector<double>& in = x.channel(0);
  std::vector<double> out(in.size() + h.samples.size() - 1, 0.0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double v = in[i];
    for (std::size_t j = 0; j < h.samples.size(); ++j) out[i + j] += v * h.samples[j];
  }
  return AudioBuffer::mono(std::move(out), x.sample_rate);
}

/// Filters with a single transform sized to cover the whole output.
template <RealFftEngine Fft = RadixTwoRealFft>
AudioBuffer convolve_full_fft(const AudioBuffer& x, const Rir& h) {
  x.validate();
  if (!x.is_mono() || x.num_frames() == 0)
    throw DegenerateInputError("convolution input must be non-empty mono audio");
  if (h.samples.empty()) throw DegenerateInputError("empty impulse response");
  if (x.sample_rate != h.sample_rate)
    throw ConfigError("signal and RIR sample rates differ");

  const std::vector<double>& in = x.channel(0);
  const std::size_t out_len = in.size() + h.samples.size() - 1;
  const std::size_t n = detail::fft_size_for(out_len);

  Fft fft(n);
  std::vector<double> padded(n, 0.0);
  std::vector<std::complex<double>> signal_spec(fft.spectrum_size());
  std::vector<std::complex<double>> rir_spec(fft.spectrum_size());

  std::copy(in.begin(), in.end(), padded.begin());
  fft.forward(padded, signal_spec);
  std::fill(padded.begin(), padded.end(), 0.0);
  std::copy(h.samples.begin(), h.samples.end(), padded.begin());
  fft.forward(padded, rir_spec);

  for (std::size_t k = 0; k < signal_spec.size(); ++k) signal_spec[k] *= rir_spec[k];
  fft.inverse(signal_spec, padded);

  std::vector<double> out(padded.begin(),
                          padded.begin() + static_cast<std::ptrdiff_t>(out_len));
  return AudioBuffer::mono(std::move(out), x.sample_rate);
}

/// Overlap-add block filtering at a fixed FFT size.
///
/// The RIR is transformed once; each block of N - N_h + 1 fresh samples pays
/// one forward transform, the spectral product over the lower half-spectrum,
/// and one inverse transform, with block outputs summed at their offsets.
template <RealFftEngine Fft = RadixTwoRealFft>
AudioBuffer convolve_ola(const AudioBuffer& x, const Rir& h, std::size_t fft_size) {
  x.validate();
  if (!x.is_mono() || x.num_frames() == 0)
    throw DegenerateInputError("convolution input must be non-empty mono audio");
  if (h.samples.empty()) throw DegenerateInputError("empty impulse response");
  if (x.sample_rate != h.sample_rate)
    throw ConfigError("signal and RIR sample rates differ");
  detail::checked_fft_size(fft_size, h.samples.size(), "overlap-add");

  const std::vector<double>& in = x.channel(0);
  const std::size_t block_len = fft_size - h.samples.size() + 1;
  const std::size_t out_len = in.size() + h.samples.size() - 1;

  Fft fft(fft_size);
  std::vector<double> padded(fft_size, 0.0);
  std::vector<std::complex<double>> rir_spec(fft.spectrum_size());
  std::vector<std::complex<double>> block_spec(fft.spectrum_size());

  std::copy(h.samples.begin(), h.samples.end(), padded.begin());
  fft.forward(padded, rir_spec);

  std::vector<double> out(out_len, 0.0);
  for (std::size_t start = 0; start < in.size(); start += block_len) {
    const std::size_t take = std::min(block_len, in.size() - start);
    std::fill(padded.begin(), padded.end(), 0.0);
    std::copy(in.begin() + static_cast<std::ptrdiff_t>(start),
              in.begin() + static_cast<std::ptrdiff_t>(start + take),
              padded.begin());
    fft.forward(padded, block_spec);
    for (std::size_t k = 0; k < block_spec.size(); ++k) block_spec[k] *= rir_spec[k];
    fft.inverse(block_spec, padded);
    const std::size_t limit = std::min(fft_size, out_len - start);
    for (std::size_t i = 0; i < limit; ++i) out[start + i] += padded[i];
  }
  return AudioBuffer::mono(std::move(out), x.sample_rate);
}

/// Runs the convolution described by a plan.
template <RealFftEngine Fft = RadixTwoRealFft>
AudioBuffer convolve(const AudioBuffer& x, const Rir& h, const ConvolutionPlan& plan) {
  switch (plan.strategy) {
    case Strategy::direct:
      return convolve_direct(x, h);
    case Strategy::full_fft:
      return convolve_full_fft<Fft>(x, h);
    case Strategy::overlap_add: {
      if (!plan.fft_size) throw PlanError("overlap-add plan is missing an FFT size");
      return convolve_ola<Fft>(x, h, *plan.fft_size);
    }
  }
  throw PlanError("unknown strategy");
}

}  // namespace roomsim
