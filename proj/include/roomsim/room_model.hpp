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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <vector>

#include "roomsim/errors.hpp"

namespace roomsim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](std::size_t axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  double operator[](std::size_t axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) = default;
};

inline double norm(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// A cuboid room with uniformly reflective walls.
struct RoomConfig {
  Vec3 dimensions;                        // (Lx, Ly, Lz) in meters
  double reflection_coefficient = 0.0;    // wall amplitude attenuation per bounce
  double sample_rate = 16000.0;           // Hz
  double speed_of_sound = 343.0;          // m/s
  int image_order = 8;                    // per-axis image indices span {-K..K}
  std::optional<double> t60_estimate;     // seconds, informational only

  void validate() const {
    if (dimensions.x <= 0.0 || dimensions.y <= 0.0 || dimensions.z <= 0.0)
      throw ConfigError("room dimensions must be positive");
    if (reflection_coefficient <= 0.0 || reflection_coefficient >= 1.0)
      throw ConfigError("reflection coefficient must lie in (0, 1)");
    if (sample_rate <= 0.0) throw ConfigError("sample rate must be positive");
    if (speed_of_sound <= 0.0) throw ConfigError("speed of sound must be positive");
    if (image_order < 0) throw ConfigError("image order must be non-negative");
  }

  /// Total virtual sources (2K+1)^3, the real source included.
  std::size_t virtual_source_count() const {
    const std::size_t per_axis = 2 * static_cast<std::size_t>(image_order) + 1;
    return per_axis * per_axis * per_axis;
  }
};

/// A point strictly inside the room.
struct Placement {
  Vec3 position;
};

inline bool strictly_inside(const RoomConfig& room, const Vec3& p) {
  for (std::size_t a = 0; a < 3; ++a) {
    if (!(p[a] > 0.0 && p[a] < room.dimensions[a])) return false;
  }
  return true;
}

/// A sampled room impulse response.
struct Rir {
  std::vector<double> samples;
  double sample_rate = 16000.0;
  std::optional<double> truncation_db;  // eta applied, absent = untruncated

  std::size_t length() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// One mirrored copy of the source in the image lattice.
struct ImageSource {
  Vec3 position;
  int reflection_count = 0;  // g_v
};

/// Enumerates the (2K+1)^3 virtual sources of the image lattice.
///
/// Along each axis, index n maps the source coordinate s to n*L + s when n is
/// even and n*L + (L - s) when n is odd; the reflection count is the sum of
/// |n| over the three axes.
inline std::vector<ImageSource> enumerate_images(const RoomConfig& room,
                                                 const Placement& source) {
  room.validate();
  if (!strictly_inside(room, source.position))
    throw PlacementError("source must lie strictly inside the room");

  const int order = room.image_order;
  std::vector<ImageSource> images;
  images.reserve(room.virtual_source_count());
  for (int nx = -order; nx <= order; ++nx) {
    for (int ny = -order; ny <= order; ++ny) {
      for (int nz = -order; nz <= order; ++nz) {
        const std::array<int, 3> idx = {nx, ny, nz};
        Vec3 pos;
        for (std::size_t a = 0; a < 3; ++a) {
          const double length = room.dimensions[a];
          const double s = source.position[a];
          const double mirrored = (idx[a] % 2 == 0) ? s : length - s;
          pos[a] = static_cast<double>(idx[a]) * length + mirrored;
        }
        images.push_back({pos, std::abs(nx) + std::abs(ny) + std::abs(nz)});
      }
    }
  }
  return images;
}

/// Synthesizes the impulse response between a source and a microphone.
///
/// Every virtual source v at distance d_v with g_v reflections contributes an
/// impulse of amplitude r^g_v / d_v at sample index ceil(d_v * f_s / c_0);
/// impulses landing on the same index accumulate.
inline Rir synthesize_rir(const RoomConfig& room, const Placement& source,
                          const Placement& mic) {
  room.validate();
  if (!strictly_inside(room, source.position))
    throw PlacementError("source must lie strictly inside the room");
  if (!strictly_inside(room, mic.position))
    throw PlacementError("microphone must lie strictly inside the room");

  const auto images = enumerate_images(room, source);
  const double samples_per_meter = room.sample_rate / room.speed_of_sound;

  std::vector<std::pair<std::size_t, double>> taps;
  taps.reserve(images.size());
  std::size_t max_delay = 0;
  for (const ImageSource& image : images) {
    const double d = distance(image.position, mic.position);
    if (d <= 0.0)
      throw GeometryError("microphone coincides with an image source");
    const auto delay =
        static_cast<std::size_t>(std::ceil(d * samples_per_meter));
    const double amplitude =
        std::pow(room.reflection_coefficient, image.reflection_count) / d;
    taps.emplace_back(delay, amplitude);
    if (delay > max_delay) max_delay = delay;
  }

  Rir rir;
  rir.sample_rate = room.sample_rate;
  rir.samples.assign(max_delay + 1, 0.0);
  for (const auto& [delay, amplitude] : taps) rir.samples[delay] += amplitude;
  // All contributions are positive, so the tap at max_delay is nonzero and the
  // response is already trimmed to its last nonzero sample.
  return rir;
}

/// Power threshold eta dB below the maximum tap power.
inline double power_threshold(const Rir& rir, double eta_db) {
  if (rir.samples.empty()) throw DegenerateInputError("empty impulse response");
  if (eta_db <= 0.0) throw ConfigError("cut-off threshold must be positive dB");
  double max_power = 0.0;
  for (double v : rir.samples) max_power = std::max(max_power, v * v);
  if (max_power == 0.0)
    throw DegenerateInputError("all-zero impulse response has no power");
  return max_power * std::pow(10.0, -eta_db / 10.0);
}

/// Smallest index beyond which every tap has power below the threshold.
inline std::size_t cutoff_index(const Rir& rir, double threshold) {
  if (rir.samples.empty()) throw DegenerateInputError("empty impulse response");
  if (threshold <= 0.0) throw ConfigError("power threshold must be positive");
  // Equivalent to min{m : max_{n>m} h^2[n] < threshold}: the last index whose
  // power still reaches the threshold, or 0 if none does.
  for (std::size_t n = rir.samples.size(); n-- > 0;) {
    if (rir.samples[n] * rir.samples[n] >= threshold) return n;
  }
  return 0;
}

/// Cuts the tail whose power stays eta dB below the maximum.
///
/// Keeps samples 0..n_c+1 inclusive (one sample past the cut-off index),
/// clamped to the original length.
inline Rir truncate_rir(const Rir& rir, double eta_db) {
  const double threshold = power_threshold(rir, eta_db);
  const std::size_t cut = cutoff_index(rir, threshold);
  Rir out;
  out.sample_rate = rir.sample_rate;
  out.truncation_db = eta_db;
  const std::size_t keep = std::min(cut + 2, rir.samples.size());
  out.samples.assign(rir.samples.begin(),
                     rir.samples.begin() + static_cast<std::ptrdiff_t>(keep));
  return out;
}

}  // namespace roomsim
