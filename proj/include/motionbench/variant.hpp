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

#include <optional>
#include <string>
#include <string_view>

namespace motionbench {

struct TaskVariant {
  enum class Kind { FixedPitch, VariablePitch, VariableSpeed };

  Kind kind = Kind::FixedPitch;
  double speed_factor = 1.0;

  static TaskVariant fixed_pitch() { return {Kind::FixedPitch, 1.0}; }
  static TaskVariant variable_pitch() { return {Kind::VariablePitch, 1.0}; }
  static TaskVariant variable_speed(double factor = 2.0) { return {Kind::VariableSpeed, factor}; }

  std::string_view name() const;

  friend bool operator==(const TaskVariant&, const TaskVariant&) = default;
};

// Accepts "fixed_pitch", "variable_pitch", "variable_speed".
std::optional<TaskVariant> parse_variant(std::string_view name, double speed_factor = 2.0);

}  // namespace motionbench
