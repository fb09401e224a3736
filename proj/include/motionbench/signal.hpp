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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "motionbench/variant.hpp"

namespace motionbench {

using SampleBuffer = std::vector<double>;

struct PitchScale {
  // C-major octave from middle C.
  std::vector<double> frequencies{261.63, 293.66, 329.63, 349.23, 392.00, 440.00, 493.88};

  void validate() const;
};

struct SegmentSpec {
  double pitch = 440.0;
  double duration = 0.5;
  double attack = 0.02;
  double release = 0.02;
  std::vector<double> harmonic_gains{1.0, 0.5, 0.25, 0.125, 0.0625};

  void validate(double sample_rate) const;
};

struct SynthConfig {
  double sample_rate = 44100.0;
  double fixed_pitch = 440.0;
  PitchScale scale;
  double base_duration = 6.0;
  double segment_duration = 0.5;
  double attack = 0.02;
  double release = 0.02;
  std::vector<double> harmonic_gains{1.0, 0.5, 0.25, 0.125, 0.0625};

  void validate() const;
};

struct SourceSignal {
  SampleBuffer samples;
  double sample_rate = 44100.0;
  std::vector<SegmentSpec> segments;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Number of samples covering `seconds`, rounded to nearest.
std::size_t sample_count(double seconds, double sample_rate);

// Harmonic tone with raised-cosine attack and release. Starts and ends at 0.
// Peak amplitude is at most 1: the harmonic sum is divided by the gain total.
SampleBuffer synth_segment(const SegmentSpec& spec, double sample_rate);

// Concatenated tonal segments covering base_duration / speed_factor seconds.
// Pitch schedule depends on the variant; VariablePitch draws each segment from
// the scale with a generator keyed on (traj_id, seed).
SourceSignal build_source(const TaskVariant& variant, std::size_t traj_id, std::uint64_t seed,
                          const SynthConfig& config);

}  // namespace motionbench
