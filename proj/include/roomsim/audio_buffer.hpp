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

#include <cstddef>
#include <utility>
#include <vector>

#include "roomsim/errors.hpp"

namespace roomsim {

/// Mono or multi-channel sample data in double precision.
///
/// All channels have equal length; samples are kept as doubles end to end and
/// only quantized at WAV export.
struct AudioBuffer {
  std::vector<std::vector<double>> channels;
  double sample_rate = 16000.0;

  AudioBuffer() = default;
  AudioBuffer(std::vector<std::vector<double>> chans, double rate)
      : channels(std::move(chans)), sample_rate(rate) {}

  /// Wraps a single channel of samples.
  static AudioBuffer mono(std::vector<double> samples, double rate) {
    AudioBuffer buf;
    buf.channels.push_back(std::move(samples));
    buf.sample_rate = rate;
    return buf;
  }

  std::size_t num_channels() const { return channels.size(); }

  std::size_t num_frames() const {
    return channels.empty() ? 0 : channels.front().size();
  }

  bool is_mono() const { return channels.size() == 1; }

  const std::vector<double>& channel(std::size_t i) const { return channels[i]; }
  std::vector<double>& channel(std::size_t i) { return channels[i]; }

  void validate() const {
    if (sample_rate <= 0.0) throw ConfigError("sample rate must be positive");
    for (const auto& ch : channels) {
      if (ch.size() != num_frames())
        throw ConfigError("audio channels must have equal length");
    }
  }
};

/// Mean squared amplitude over the whole buffer (all channels pooled).
inline double mean_power(const AudioBuffer& buf) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& ch : buf.channels) {
    for (double v : ch) acc += v * v;
    count += ch.size();
  }
  if (count == 0) throw DegenerateInputError("mean power of an empty buffer");
  return acc / static_cast<double>(count);
}

}  // namespace roomsim
