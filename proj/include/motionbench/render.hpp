// Copyright 2026 The Motionbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "motionbench/geometry.hpp"
#include "motionbench/signal.hpp"

namespace motionbench {

struct BinauralClip {
  SampleBuffer left;
  SampleBuffer right;
  double sample_rate = 44100.0;

  std::size_t size() const { return left.size(); }
  double duration() const { return static_cast<double>(left.size()) / sample_rate; }
  BinauralClip channel_swapped() const { return {right, left, sample_rate}; }
};

enum class NoiseCondition { Clean, SNR35, SNR25, SNR15 };

inline constexpr std::array<NoiseCondition, 4> kAllNoiseConditions = {
    NoiseCondition::Clean, NoiseCondition::SNR35, NoiseCondition::SNR25, NoiseCondition::SNR15};

std::string_view to_string(NoiseCondition cond);          // "clean", "snr35", ...
std::string_view column_label(NoiseCondition cond);       // "clean", "35 dB", ...
std::optional<NoiseCondition> parse_noise(std::string_view text);
// Target SNR in dB; nullopt for Clean.
std::optional<double> target_snr_db(NoiseCondition cond);

struct RenderConfig {
  double sample_rate = 44100.0;
  ListenerConfig listener;
  double radius = kDefaultRadius;
  double front_cutoff = 8000.0;
  double rear_cutoff = 2000.0;
  double reference_distance = 2.5;
  double min_distance = 0.2;
  double limiter_peak = 0.999;
  double normalize_peak = 0.7;
  std::size_t block_size = 64;
  bool direction_filter = true;

  void validate() const;
};

double propagation_delay(Position source, Position ear, double speed_of_sound);

double distance_gain(double distance, const RenderConfig& config);
double distance_gain(Position source, Position ear, const RenderConfig& config);

// Delay in seconds of the wavefront that reaches `ear_off` at time `t`, i.e.
// the positive root u of |offset(t - u) - ear| = c * u on the straight path.
double arrival_delay(const MotionPath& path, double t, Vec2 ear_off, double speed_of_sound);

// One ear: y(t) = g(t) * s(t - tau(t)) with tau the propagation delay of the
// arriving wavefront and g the distance gain at emission. Delay and gain are
// evaluated per block and ramped per sample; s is read with Catmull-Rom
// interpolation and is silent outside its support.
SampleBuffer render_ear(const SourceSignal& signal, const MotionPath& path, Ear ear,
                        const RenderConfig& config);

// Low-pass cutoff for a head-relative azimuth (0 = front, +pi/2 = right).
double direction_cutoff(double azimuth, const RenderConfig& config);

// Head-centre azimuth of the source at the start of each processing block.
std::vector<double> azimuth_track(const MotionPath& path, std::size_t samples,
                                  const RenderConfig& config);

// Time-varying one-pole low-pass; `azimuth_track` holds one azimuth per block
// and the coefficient is ramped linearly between block boundaries.
SampleBuffer apply_direction_filter(std::span<const double> buffer,
                                    std::span<const double> azimuth_track,
                                    const RenderConfig& config);

// Clean binaural clip: both ears rendered, direction-filtered, then peak
// normalised to config.normalize_peak.
BinauralClip render_clip(const SourceSignal& signal, const MotionPath& path,
                         const RenderConfig& config);

// RMS over both channels jointly.
double joint_rms(const BinauralClip& clip);

// Gaussian noise at the condition's SNR, independent per channel, followed by
// a hard limit at config.limiter_peak. Clean returns the input unchanged.
BinauralClip add_noise(const BinauralClip& clip, NoiseCondition cond, std::uint64_t seed,
                       const RenderConfig& config);

// 20 log10(rms(signal) / rms(noisy - signal)); +inf when the residual is zero.
double measure_snr(const BinauralClip& signal, const BinauralClip& noisy);

}  // namespace motionbench
