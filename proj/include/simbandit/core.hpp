// Copyright 2026 The simbandit Authors.
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

// Shared vocabulary: index types, error types, seeding and the mean
// distributions used to draw arm means.

#ifndef SIMBANDIT_CORE_HPP_
#define SIMBANDIT_CORE_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace simbandit {

inline constexpr std::string_view kVersion = "0.1.0";

using ArmIndex = std::uint32_t;
using Round = std::uint64_t;
using Rng = std::mt19937_64;

inline constexpr ArmIndex kNoArm = std::numeric_limits<ArmIndex>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-finite means, epsilon <= 0, out-of-range indices.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Exhaustive oracles refuse graphs above their vertex cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A bound formula whose denominator is not positive for the given instance.
class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stable seed derivation. Depends only on its arguments, never on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::string_view tag) noexcept {
  return mix64(derive_seed(master, index) ^ hash_tag(tag));
}

enum class MeanDistribution { uniform01, gaussian01, half_triangle };

inline std::string_view to_string(MeanDistribution d) {
  switch (d) {
    case MeanDistribution::uniform01:
      return "uniform01";
    case MeanDistribution::gaussian01:
      return "gaussian01";
    case MeanDistribution::half_triangle:
      return "half_triangle";
  }
  return "?";
}

inline MeanDistribution parse_mean_distribution(std::string_view s) {
  if (s == "uniform01") return MeanDistribution::uniform01;
  if (s == "gaussian01") return MeanDistribution::gaussian01;
  if (s == "half_triangle") return MeanDistribution::half_triangle;
  throw InvalidInput("unknown mean distribution '" + std::string(s) + "'");
}

// Support lies inside [0, 1] (required for Bernoulli rewards).
constexpr bool has_unit_support(MeanDistribution d) noexcept {
  return d != MeanDistribution::gaussian01;
}

// Uniform on [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws one mean. half_triangle has density 2(1-x) on (0,1) and is sampled
// by inverting its CDF 1-(1-x)^2.
inline double sample_mean(MeanDistribution d, Rng& rng) {
  switch (d) {
    case MeanDistribution::uniform01:
      return uniform01(rng);
    case MeanDistribution::gaussian01:
      return std::normal_distribution<double>(0.0, 1.0)(rng);
    case MeanDistribution::half_triangle:
      return 1.0 - std::sqrt(1.0 - uniform01(rng));
  }
  return 0.0;
}

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("failed to format double");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw InvalidInput("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace simbandit

#endif  // SIMBANDIT_CORE_HPP_
