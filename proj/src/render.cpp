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

#include "motionbench/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "motionbench/errors.hpp"
#include "motionbench/rng.hpp"

namespace motionbench {

std::string_view to_string(NoiseCondition cond) {
  switch (cond) {
    case NoiseCondition::Clean: return "clean";
    case NoiseCondition::SNR35: return "snr35";
    case NoiseCondition::SNR25: return "snr25";
    case NoiseCondition::SNR15: return "snr15";
  }
  return "unknown";
}

std::string_view column_label(NoiseCondition cond) {
  switch (cond) {
    case NoiseCondition::Clean: return "clean";
    case NoiseCondition::SNR35: return "35 dB";
    case NoiseCondition::SNR25: return "25 dB";
    case NoiseCondition::SNR15: return "15 dB";
  }
  return "unknown";
}

std::optional<NoiseCondition> parse_noise(std::string_view text) {
  for (auto cond : kAllNoiseConditions) {
    if (to_string(cond) == text) return cond;
  }
  return std::nullopt;
}

std::optional<double> target_snr_db(NoiseCondition cond) {
  switch (cond) {
    case NoiseCondition::Clean: return std::nullopt;
    case NoiseCondition::SNR35: return 35.0;
    case NoiseCondition::SNR25: return 25.0;
    case NoiseCondition::SNR15: return 15.0;
  }
  return std::nullopt;
}

void RenderConfig::validate() const {
  listener.validate();
  if (!(sample_rate > 0.0)) throw ConfigError("sample_rate must be positive");
  if (!(rear_cutoff > 0.0 && rear_cutoff < front_cutoff))
    throw ConfigError("rear_cutoff must be positive and below front_cutoff");
  if (!(reference_distance > 0.0)) throw ConfigError("reference_distance must be positive");
  if (!(min_distance > 0.0)) throw ConfigError("min_distance must be positive");
  if (!(limiter_peak > 0.0 && limiter_peak <= 1.0))
    throw ConfigError("limiter_peak must lie in (0, 1]");
  if (!(normalize_peak > 0.0 && normalize_peak <= limiter_peak))
    throw ConfigError("normalize_peak must lie in (0, limiter_peak]");
  if (block_size == 0) throw ConfigError("block_size must be positive");
  if (!(radius > listener.ear_distance / 2.0))
    throw ConfigError("radius must exceed half the ear distance");
}

double propagation_delay(Position source, Position ear, double speed_of_sound) {
  return norm(source - ear) / speed_of_sound;
}

double distance_gain(double distance, const RenderConfig& config) {
  return config.reference_distance / std::max(distance, config.min_distance);
}

double distance_gain(Position source, Position ear, const RenderConfig& config) {
  return distance_gain(norm(source - ear), config);
}

double arrival_delay(const MotionPath& path, double t, Vec2 ear_off, double c) {
  // With w the source offset from the ear at reception time and v the path
  // velocity, |w - v u| = c u gives (c^2 - |v|^2) u^2 + 2 (w.v) u - |w|^2 = 0.
  const Vec2 w = path.offset_at(t) - ear_off;
  const Vec2 v = path.velocity();
  const double wv = dot(w, v);
  const double ww = dot(w, w);
  const double a = c * c - dot(v, v);
  if (!(a > 0.0)) throw std::domain_error("source speed must stay below the speed of sound");
  const double root = std::sqrt(wv * wv + a * ww);
  return wv > 0.0 ? ww / (wv + root) : (root - wv) / a;
}

namespace {

double catmull_rom(std::span<const double> s, double pos) {
  const double fl = std::floor(pos);
  const auto i = static_cast<long long>(fl);
  const double f = pos - fl;
  const auto n = static_cast<long long>(s.size());
  auto at = [&](long long k) { return (k >= 0 && k < n) ? s[static_cast<std::size_t>(k)] : 0.0; };
  if (i + 2 < 0 || i - 1 >= n) return 0.0;
  const double ym1 = at(i - 1);
  const double y0 = at(i);
  const double y1 = at(i + 1);
  const double y2 = at(i + 2);
  return y0 + 0.5 * f *
                  (y1 - ym1 +
                   f * (2.0 * ym1 - 5.0 * y0 + 4.0 * y1 - y2 + f * (3.0 * (y0 - y1) + y2 - ym1)));
}

double lowpass_coefficient(double cutoff, double sample_rate) {
  if (cutoff >= sample_rate / 2.0) return 1.0;
  return 1.0 - std::exp(-2.0 * std::numbers::pi * cutoff / sample_rate);
}

std::size_t block_count(std::size_t samples, std::size_t block) {
  return (samples + block - 1) / block;
}

}  // namespace

SampleBuffer render_ear(const SourceSignal& signal, const MotionPath& path, Ear ear,
                        const RenderConfig& config) {
  config.validate();
  if (signal.sample_rate != config.sample_rate)
    throw ConfigError("signal and render sample rates differ");
  if (!(path.duration > 0.0)) throw ConfigError("path duration must be positive");
  const double fs = config.sample_rate;
  if (std::abs(path.duration - signal.duration()) > 1.0 / fs)
    throw ConfigError("signal and trajectory durations differ");

  const std::size_t n_total = signal.samples.size();
  const std::size_t block = config.block_size;
  const std::size_t blocks = block_count(n_total, block);
  const double c = config.listener.speed_of_sound;
  const Vec2 ear_off = ear_offset(ear, config.listener);

  std::vector<double> delay(blocks + 1);
  std::vector<double> gain(blocks + 1);
  for (std::size_t b = 0; b <= blocks; ++b) {
    const double t = static_cast<double>(b * block) / fs;
    delay[b] = arrival_delay(path, t, ear_off, c);
    gain[b] = distance_gain(c * delay[b], config);
  }

  SampleBuffer out(n_total, 0.0);
  const std::span<const double> src(signal.samples);
  const double inv_block = 1.0 / static_cast<double>(block);
  for (std::size_t n = 0; n < n_total; ++n) {
    const std::size_t b = n / block;
    const double frac = static_cast<double>(n - b * block) * inv_block;
    const double tau = delay[b] + (delay[b + 1] - delay[b]) * frac;
    const double g = gain[b] + (gain[b + 1] - gain[b]) * frac;
    out[n] = g * catmull_rom(src, static_cast<double>(n) - tau * fs);
  }
  return out;
}

double direction_cutoff(double azimuth, const RenderConfig& config) {
  return config.rear_cutoff +
         (config.front_cutoff - config.rear_cutoff) * (1.0 + std::cos(azimuth)) / 2.0;
}

std::vector<double> azimuth_track(const MotionPath& path, std::size_t samples,
                                  const RenderConfig& config) {
  const std::size_t blocks = block_count(samples, config.block_size);
  std::vector<double> track(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const double t = static_cast<double>(b * config.block_size) / config.sample_rate;
    const Vec2 off = path.offset_at(t);
    track[b] = std::atan2(off.x, off.y);
  }
  return track;
}

SampleBuffer apply_direction_filter(std::span<const double> buffer,
                                    std::span<const double> azimuth_track,
                                    const RenderConfig& config) {
  const std::size_t block = config.block_size;
  const std::size_t blocks = block_count(buffer.size(), block);
  if (azimuth_track.size() != blocks)
    throw std::invalid_argument("azimuth track must hold one entry per block");

  std::vector<double> coeff(blocks + 1);
  for (std::size_t b = 0; b < blocks; ++b)
    coeff[b] = lowpass_coefficient(direction_cutoff(azimuth_track[b], config), config.sample_rate);
  if (blocks > 0) coeff[blocks] = coeff[blocks - 1];

  SampleBuffer out(buffer.size());
  double state = 0.0;
  const double inv_block = 1.0 / static_cast<double>(block);
  for (std::size_t n = 0; n < buffer.size(); ++n) {
    const std::size_t b = n / block;
    const double frac = static_cast<double>(n - b * block) * inv_block;
    const double a = coeff[b] + (coeff[b + 1] - coeff[b]) * frac;
    state = a == 1.0 ? buffer[n] : state + a * (buffer[n] - state);
    out[n] = state;
  }
  return out;
}

BinauralClip render_clip(const SourceSignal& signal, const MotionPath& path,
                         const RenderConfig& config) {
  BinauralClip clip;
  clip.sample_rate = config.sample_rate;
  clip.left = render_ear(signal, path, Ear::Left, config);
  clip.right = render_ear(signal, path, Ear::Right, config);
  if (config.direction_filter) {
    const auto track = azimuth_track(path, clip.size(), config);
    clip.left = apply_direction_filter(clip.left, track, config);
    clip.right = apply_direction_filter(clip.right, track, config);
  }
  double peak = 0.0;
  for (std::size_t n = 0; n < clip.size(); ++n)
    peak = std::max({peak, std::abs(clip.left[n]), std::abs(clip.right[n])});
  if (peak > 0.0) {
    const double scale = config.normalize_peak / peak;
    for (auto& x : clip.left) x *= scale;
    for (auto& x : clip.right) x *= scale;
  }
  return clip;
}

double joint_rms(const BinauralClip& clip) {
  if (clip.size() == 0) return 0.0;
  double acc = 0.0;
  for (double x : clip.left) acc += x * x;
  for (double x : clip.right) acc += x * x;
  return std::sqrt(acc / static_cast<double>(2 * clip.size()));
}

BinauralClip add_noise(const BinauralClip& clip, NoiseCondition cond, std::uint64_t seed,
                       const RenderConfig& config) {
  const auto snr = target_snr_db(cond);
  if (!snr) return clip;
  if (clip.left.size() != clip.right.size())
    throw std::invalid_argument("channel lengths differ");
  const double rms = joint_rms(clip);
  if (rms == 0.0) throw std::invalid_argument("cannot add noise at a fixed SNR to a silent clip");
  const double sigma = rms / std::pow(10.0, *snr / 20.0);
  const double limit = config.limiter_peak;

  BinauralClip out = clip;
  Rng left_rng(derive_seed(seed, std::uint64_t{0}));
  Rng right_rng(derive_seed(seed, std::uint64_t{1}));
  for (auto& x : out.left) x = std::clamp(x + sigma * left_rng.normal(), -limit, limit);
  for (auto& x : out.right) x = std::clamp(x + sigma * right_rng.normal(), -limit, limit);
  return out;
}

double measure_snr(const BinauralClip& signal, const BinauralClip& noisy) {
  if (signal.left.size() != noisy.left.size() || signal.right.size() != noisy.right.size())
    throw std::invalid_argument("clip lengths differ");
  BinauralClip residual{noisy.left, noisy.right, noisy.sample_rate};
  for (std::size_t n = 0; n < residual.left.size(); ++n) residual.left[n] -= signal.left[n];
  for (std::size_t n = 0; n < residual.right.size(); ++n) residual.right[n] -= signal.right[n];
  const double noise = joint_rms(residual);
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(joint_rms(signal) / noise);
}

}  // namespace motionbench
