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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "motionbench/dataset.hpp"

namespace motionbench {

inline constexpr const char* kOutputDirEnv = "MOTIONBENCH_OUTPUT_DIR";

// Declarative tool configuration (JSON). Every key is optional and unknown
// keys are rejected.
struct ToolConfig {
  std::string output_dir = "motionbench_out";
  std::uint64_t global_seed = 7;
  double sample_rate = 44100.0;
  std::vector<std::string> variants{"fixed_pitch", "variable_pitch", "variable_speed"};
  std::vector<std::string> noise_conditions{"clean", "snr35", "snr25", "snr15"};
  double radius = kDefaultRadius;
  double ear_distance = 0.18;
  double front_cutoff = 8000.0;
  double rear_cutoff = 2000.0;
  double speed_factor = 2.0;
  unsigned jobs = 0;

  // Throws ConfigError for unknown variant / noise names or invalid values.
  DatasetConfig dataset_config() const;
  std::string to_json() const;
};

ToolConfig parse_tool_config(const std::string& text, const std::string& source);
ToolConfig load_tool_config(const std::filesystem::path& path);

}  // namespace motionbench
