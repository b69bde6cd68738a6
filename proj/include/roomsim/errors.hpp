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

#include <stdexcept>
#include <string>

namespace roomsim {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A source or microphone lies on or outside a wall.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry, e.g. a microphone coinciding with an image source.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An input signal is empty, all-zero, or otherwise unusable.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// An FFT size or strategy choice that cannot produce a correct convolution.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values or incompatible parameter ranges.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (open, read, write).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace roomsim
