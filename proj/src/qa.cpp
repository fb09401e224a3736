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

#include "motionbench/qa.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "motionbench/rng.hpp"

namespace motionbench {

namespace {

std::string capitalized(std::string_view word) {
  std::string out(word);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace

std::string_view to_string(AnswerLabel label) {
  switch (label) {
    case AnswerLabel::A: return "A";
    case AnswerLabel::B: return "B";
    case AnswerLabel::C: return "C";
    case AnswerLabel::D: return "D";
    case AnswerLabel::True: return "TRUE";
    case AnswerLabel::False: return "FALSE";
  }
  return "?";
}

std::optional<AnswerLabel> parse_label(std::string_view text) {
  for (auto label : {AnswerLabel::A, AnswerLabel::B, AnswerLabel::C, AnswerLabel::D,
                     AnswerLabel::True, AnswerLabel::False}) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

AnswerLabel letter_at(std::size_t slot) {
  if (slot > 3) throw std::out_of_range("MCQ slot");
  return static_cast<AnswerLabel>(slot);
}

std::string_view to_string(QuestionType type) { return type == QuestionType::MCQ ? "MCQ" : "TF"; }

std::optional<QuestionType> parse_question_type(std::string_view text) {
  if (text == "MCQ") return QuestionType::MCQ;
  if (text == "TF") return QuestionType::TF;
  return std::nullopt;
}

std::string option_text(const Trajectory& traj) {
  return capitalized(display_name(traj.start)) + "→" + capitalized(display_name(traj.end));
}

std::string motion_phrase(const Trajectory& traj) {
  return std::string(display_name(traj.start)) + " to " + std::string(display_name(traj.end));
}

std::string motion_statement(const Trajectory& traj) {
  return "The sound moves from " + motion_phrase(traj) + ".";
}

std::string mcq_prompt(const std::vector<Option>& options) {
  std::string out =
      "Listen to the binaural audio clip. In which direction does the sound source move?\n";
  for (const auto& opt : options) {
    out += std::string(to_string(opt.label)) + ": " + opt.text + "\n";
  }
  out += "Answer with the letter of the correct option (A, B, C or D).";
  return out;
}

std::string tf_prompt(const std::string& statement) {
  return "Listen to the binaural audio clip. Is the following statement true or false?\n"
         "Statement: " +
         statement + "\nAnswer TRUE or FALSE.";
}

std::vector<Trajectory> mcq_candidates(const Trajectory& traj, std::uint64_t seed) {
  const Trajectory rotated{rotate(traj.start, 1), rotate(traj.end, 1), traj.base_duration,
                           traj.speed_factor};
  std::vector<Trajectory> pool = {
      traj.reversed(),
      traj.mirrored(),
      {mirror_front_back(traj.start), mirror_front_back(traj.end), traj.base_duration,
       traj.speed_factor},
      rotated,
      rotated.reversed(),
  };
  auto fallback = enumerate_trajectories(traj.base_duration, traj.speed_factor);
  Rng rng(derive_seed(seed, "fallback/" + traj.id()));
  rng.shuffle(std::span(fallback));
  pool.insert(pool.end(), fallback.begin(), fallback.end());

  std::vector<Trajectory> chosen{traj};
  for (const auto& cand : pool) {
    if (chosen.size() == 4) break;
    if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end()) chosen.push_back(cand);
  }
  return chosen;
}

AnswerLabel mcq_truth_letter(const Trajectory& traj, std::uint64_t seed) {
  std::array<std::size_t, kTrajectoryCount> schedule{};
  for (std::size_t i = 0; i < schedule.size(); ++i) schedule[i] = i % 4;
  Rng rng(derive_seed(seed, "letters"));
  rng.shuffle(std::span(schedule));
  return letter_at(schedule[traj.index()]);
}

QAItem make_mcq(const Trajectory& traj, std::uint64_t seed) {
  const auto candidates = mcq_candidates(traj, seed);
  const AnswerLabel truth = mcq_truth_letter(traj, seed);

  std::vector<std::size_t> free_slots;
  for (std::size_t s = 0; s < 4; ++s) {
    if (letter_at(s) != truth) free_slots.push_back(s);
  }
  Rng rng(derive_seed(seed, "slots/" + traj.id()));
  rng.shuffle(std::span(free_slots));

  std::array<std::string, 4> texts;
  texts[static_cast<std::size_t>(truth)] = option_text(candidates[0]);
  for (std::size_t i = 0; i < 3; ++i) texts[free_slots[i]] = option_text(candidates[i + 1]);

  QAItem item;
  item.question_type = QuestionType::MCQ;
  for (std::size_t s = 0; s < 4; ++s) item.options.push_back({letter_at(s), texts[s]});
  item.prompt = mcq_prompt(item.options);
  item.ground_truth = truth;
  item.trajectory = traj;
  item.seed = seed;
  return item;
}

Trajectory tf_false_trajectory(const Trajectory& traj) {
  const Trajectory mirrored = traj.mirrored();
  return mirrored == traj ? traj.reversed() : mirrored;
}

std::pair<QAItem, QAItem> make_tf_pair(const Trajectory& traj) {
  auto make = [&](const Trajectory& described, AnswerLabel truth) {
    QAItem item;
    item.question_type = QuestionType::TF;
    item.statement = motion_statement(described);
    item.prompt = tf_prompt(item.statement);
    item.ground_truth = truth;
    item.trajectory = traj;
    return item;
  };
  return {make(traj, AnswerLabel::True), make(tf_false_trajectory(traj), AnswerLabel::False)};
}

}  // namespace motionbench
