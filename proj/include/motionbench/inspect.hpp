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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "motionbench/render.hpp"

namespace motionbench {

struct ClipDiagnostics {
  double sample_rate = 44100.0;
  std::size_t frame_samples = 0;
  std::vector<double> rms_left;
  std::vector<double> rms_right;
  std::vector<double> itd_us;  // positive: left ear trails, source to the right
  std::optional<double> snr_db;  // against the clean reference, when one exists

  double frame_seconds() const { return static_cast<double>(frame_samples) / sample_rate; }
};

ClipDiagnostics diagnose_clip(const BinauralClip& clip, const BinauralClip* clean_reference,
                              double frame_seconds = 0.05, const ListenerConfig& listener = {});

// The clean clip for ".../<variant>/<noise>/<traj>.wav" when <noise> is a
// known condition.
std::optional<std::filesystem::path> clean_reference_for(const std::filesystem::path& clip);

// Left/right RMS envelopes over time, one polyline per channel.
std::string envelope_svg(const ClipDiagnostics& diag, const std::string& title);

std::string diagnostics_text(const ClipDiagnostics& diag);

}  // namespace motionbench
