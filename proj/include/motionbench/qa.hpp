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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motionbench/geometry.hpp"
#include "motionbench/render.hpp"
#include "motionbench/variant.hpp"

namespace motionbench {

enum class AnswerLabel { A, B, C, D, True, False };

std::string_view to_string(AnswerLabel label);  // "A".."D", "TRUE", "FALSE"
std::optional<AnswerLabel> parse_label(std::string_view text);
AnswerLabel letter_at(std::size_t slot);  // 0 -> A

enum class QuestionType { MCQ, TF };

std::string_view to_string(QuestionType type);  // "MCQ", "TF"
std::optional<QuestionType> parse_question_type(std::string_view text);

struct Option {
  AnswerLabel label = AnswerLabel::A;
  std::string text;

  friend bool operator==(const Option&, const Option&) = default;
};

struct QAItem {
  std::string item_id;
  std::string clip_path;
  QuestionType question_type = QuestionType::MCQ;
  std::string prompt;
  std::vector<Option> options;  // MCQ only
  std::string statement;        // TF only
  AnswerLabel ground_truth = AnswerLabel::A;
  Trajectory trajectory;
  NoiseCondition noise = NoiseCondition::Clean;
  TaskVariant variant;
  std::uint64_t seed = 0;
  double sample_rate = 44100.0;
  double duration_s = 0.0;
};

// "Left→Right", "Right-front→Right-back".
std::string option_text(const Trajectory& traj);
// "left to right".
std::string motion_phrase(const Trajectory& traj);
// "The sound moves from left to right."
std::string motion_statement(const Trajectory& traj);

std::string mcq_prompt(const std::vector<Option>& options);
std::string tf_prompt(const std::string& statement);

// The four answer candidates for `traj`, truth first: reverse, left-right
// mirror, front-back mirror, then the quarter-turn rotation and its reverse,
// then a seeded shuffle of all trajectories, skipping repeats.
std::vector<Trajectory> mcq_candidates(const Trajectory& traj, std::uint64_t seed);

// Letter carrying the truth for `traj`. Over the 56 trajectories under one
// seed each letter is used exactly 14 times.
AnswerLabel mcq_truth_letter(const Trajectory& traj, std::uint64_t seed);

// Question content only; the dataset builder fills ids, paths and metadata.
QAItem make_mcq(const Trajectory& traj, std::uint64_t seed);

// Trajectory described by the false statement: the left-right mirror, or the
// reverse for the midline paths N->S and S->N.
Trajectory tf_false_trajectory(const Trajectory& traj);

// (TRUE-statement item, FALSE-statement item).
std::pair<QAItem, QAItem> make_tf_pair(const Trajectory& traj);

}  // namespace motionbench
