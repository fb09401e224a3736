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

#include "motionbench/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "motionbench/errors.hpp"
#include "motionbench/rng.hpp"

namespace motionbench {

std::string_view TaskVariant::name() const {
  switch (kind) {
    case Kind::FixedPitch: return "fixed_pitch";
    case Kind::VariablePitch: return "variable_pitch";
    case Kind::VariableSpeed: return "variable_speed";
  }
  return "unknown";
}

std::optional<TaskVariant> parse_variant(std::string_view name, double speed_factor) {
  if (name == "fixed_pitch") return TaskVariant::fixed_pitch();
  if (name == "variable_pitch") return TaskVariant::variable_pitch();
  if (name == "variable_speed") return TaskVariant::variable_speed(speed_factor);
  return std::nullopt;
}

void PitchScale::validate() const {
  if (frequencies.empty()) throw ConfigError("pitch scale is empty");
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (!(frequencies[i] > 0.0)) throw ConfigError("pitch scale frequencies must be positive");
    if (i > 0 && !(frequencies[i] > frequencies[i - 1]))
      throw ConfigError("pitch scale must be strictly increasing");
  }
}

void SegmentSpec::validate(double sample_rate) const {
  if (!(pitch > 0.0)) throw ConfigError("segment pitch must be positive");
  if (!(duration > 0.0)) throw ConfigError("segment duration must be positive");
  if (attack < 0.0 || release < 0.0 || attack + release > duration)
    throw ConfigError("attack + release exceeds the segment duration");
  if (harmonic_gains.empty() || harmonic_gains.front() != 1.0)
    throw ConfigError("first harmonic gain must be 1");
  for (std::size_t k = 1; k < harmonic_gains.size(); ++k) {
    if (harmonic_gains[k] < 0.0 || harmonic_gains[k] > harmonic_gains[k - 1])
      throw ConfigError("harmonic gains must be non-negative and non-increasing");
  }
  const double top = pitch * static_cast<double>(harmonic_gains.size());
  if (top >= sample_rate / 2.0)
    throw ConfigError("harmonic " + std::to_string(harmonic_gains.size()) + " of " +
                      std::to_string(pitch) + " Hz reaches Nyquist");
}

void SynthConfig::validate() const {
  if (!(sample_rate > 0.0)) throw ConfigError("sample_rate must be positive");
  if (!(base_duration > 0.0) || !(segment_duration > 0.0))
    throw ConfigError("durations must be positive");
  scale.validate();
  SegmentSpec probe{std::max(fixed_pitch, scale.frequencies.back()), segment_duration, attack,
                    release, harmonic_gains};
  probe.validate(sample_rate);
}

std::size_t sample_count(double seconds, double sample_rate) {
  return static_cast<std::size_t>(std::llround(seconds * sample_rate));
}

namespace {

SampleBuffer synth_samples(const SegmentSpec& spec, std::size_t length, double sample_rate) {
  SampleBuffer out(length, 0.0);
  if (length == 0) return out;
  const double total_gain =
      std::accumulate(spec.harmonic_gains.begin(), spec.harmonic_gains.end(), 0.0);
  const std::size_t attack_n = sample_count(spec.attack, sample_rate);
  const std::size_t release_n = sample_count(spec.release, sample_rate);
  const double w = 2.0 * std::numbers::pi * spec.pitch / sample_rate;

  for (std::size_t n = 0; n < length; ++n) {
    double env = 1.0;
    if (n < attack_n)
      env *= 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(n) /
                                   static_cast<double>(attack_n)));
    const std::size_t from_end = length - 1 - n;
    if (from_end < release_n)
      env *= 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(from_end) /
                                   static_cast<double>(release_n)));
    if (env == 0.0) continue;
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.harmonic_gains.size(); ++k) {
      acc += spec.harmonic_gains[k] *
             std::sin(w * static_cast<double>(k + 1) * static_cast<double>(n));
    }
    out[n] = env * acc / total_gain;
  }
  return out;
}

}  // namespace

SampleBuffer synth_segment(const SegmentSpec& spec, double sample_rate) {
  spec.validate(sample_rate);
  return synth_samples(spec, sample_count(spec.duration, sample_rate), sample_rate);
}

SourceSignal build_source(const TaskVariant& variant, std::size_t traj_id, std::uint64_t seed,
                          const SynthConfig& config) {
  config.validate();
  if (!(variant.speed_factor > 0.0)) throw ConfigError("speed factor must be positive");
  switch (variant.kind) {
    case TaskVariant::Kind::FixedPitch:
    case TaskVariant::Kind::VariablePitch:
    case TaskVariant::Kind::VariableSpeed:
      break;
    default:
      throw ConfigError("unknown task variant");
  }

  const double fs = config.sample_rate;
  const double total_seconds = config.base_duration / variant.speed_factor;
  const std::size_t total = sample_count(total_seconds, fs);
  const auto segment_count = static_cast<std::size_t>(
      std::ceil(total_seconds / config.segment_duration - 1e-9));

  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i < segment_count; ++i) {
    bounds.push_back(std::min(sample_count(static_cast<double>(i) * config.segment_duration, fs),
                              total));
  }
  bounds.push_back(total);
  // A trailing sliver too short for its envelope is folded into its neighbour.
  const std::size_t min_len =
      sample_count(config.attack, fs) + sample_count(config.release, fs) + 2;
  if (bounds.size() > 2 && bounds[bounds.size() - 1] - bounds[bounds.size() - 2] < min_len)
    bounds.erase(bounds.end() - 2);

  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(traj_id)));
  SourceSignal out;
  out.sample_rate = fs;
  out.samples.reserve(total);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const std::size_t len = bounds[i + 1] - bounds[i];
    SegmentSpec spec;
    spec.pitch = variant.kind == TaskVariant::Kind::VariablePitch
                     ? config.scale.frequencies[rng.below(config.scale.frequencies.size())]
                     : config.fixed_pitch;
    spec.duration = static_cast<double>(len) / fs;
    spec.attack = config.attack;
    spec.release = config.release;
    spec.harmonic_gains = config.harmonic_gains;
    spec.validate(fs);
    const SampleBuffer seg = synth_samples(spec, len, fs);
    out.samples.insert(out.samples.end(), seg.begin(), seg.end());
    out.segments.push_back(std::move(spec));
  }
  return out;
}

}  // namespace motionbench
