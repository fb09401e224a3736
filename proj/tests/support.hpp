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

// Shared fixtures for the unit tests and the acceptance runner.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "motionbench/dataset.hpp"
#include "motionbench/eval.hpp"
#include "motionbench/qa.hpp"

namespace motionbench::testing {

// Removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("motionbench_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct ParserCase {
  std::string raw;
  QuestionType type;
  std::optional<AnswerLabel> expected;
};

inline std::vector<Option> corpus_options() {
  return {{AnswerLabel::A, "Left→Right"},
          {AnswerLabel::B, "Right→Left"},
          {AnswerLabel::C, "Front→Back"},
          {AnswerLabel::D, "Back→Front"}};
}

inline std::vector<ParserCase> parser_corpus() {
  using L = AnswerLabel;
  const auto M = QuestionType::MCQ;
  const auto T = QuestionType::TF;
  return {
      {"B", M, L::B},
      {"The answer is B.", M, L::B},
      {"(C)", M, L::C},
      {"Answer: D", M, L::D},
      {"a", M, L::A},
      {"Option A: Left→Right", M, L::A},
      {"I think the sound moves left to right", M, L::A},
      {"The source travels from back to front.", M, L::D},
      {"It goes Right -> Left", M, L::B},
      {"front→back", M, L::C},
      {"Both A and C seem possible", M, std::nullopt},
      {"A or B", M, std::nullopt},
      {"It could be left to right or right to left", M, std::nullopt},
      {"I cannot determine the direction.", M, std::nullopt},
      {"", M, std::nullopt},
      {"A sound moving to the right", M, std::nullopt},
      {"**B**", M, L::B},
      {"My answer is c", M, L::C},
      {"D) Back→Front", M, L::D},
      {"Left→Right", M, L::A},
      {"The sound moves from the left side over to the right side", M, std::nullopt},
      {"TRUE", T, L::True},
      {"False.", T, L::False},
      {"Yes, the statement is correct.", T, L::True},
      {"No.", T, L::False},
      {"The statement is not true.", T, L::False},
      {"That isn't false.", T, L::True},
      {"I'm not sure.", T, std::nullopt},
      {"yes it moves left to right", T, L::True},
      {"The sound is moving but I can't tell which way", T, std::nullopt},
  };
}

// Counts outcomes straight from intended labels; it never calls the parser or
// the harness counters. A missing entry or nullopt means no usable answer.
struct OracleMetrics {
  double acc_mcq = 0, acc_tf = 0, tpr = 0, tnr = 0, yes_bias = 0;
};

inline OracleMetrics brute_force_metrics(const std::vector<QAItem>& items,
                                         const std::map<std::string, std::optional<AnswerLabel>>& answers) {
  long mcq = 0, mcq_ok = 0, tf = 0, tf_ok = 0, pos = 0, pos_yes = 0, neg = 0, neg_no = 0, neg_yes = 0;
  for (const auto& item : items) {
    std::optional<AnswerLabel> a;
    if (auto it = answers.find(item.item_id); it != answers.end()) a = it->second;
    const bool right = a.has_value() && *a == item.ground_truth;
    if (item.question_type == QuestionType::MCQ) {
      mcq += 1;
      mcq_ok += right;
      continue;
    }
    tf += 1;
    tf_ok += right;
    if (item.ground_truth == AnswerLabel::True) {
      pos += 1;
      pos_yes += right;
    } else {
      neg += 1;
      neg_no += right;
      neg_yes += a.has_value() && *a == AnswerLabel::True;
    }
  }
  auto frac = [](long n, long d) { return d ? static_cast<double>(n) / static_cast<double>(d) : 0.0; };
  return {frac(mcq_ok, mcq), frac(tf_ok, tf), frac(pos_yes, pos), frac(neg_no, neg), frac(neg_yes, neg)};
}

// One synthetic response set: every item gets a random outcome, rendered as
// one of several surface forms whose meaning is known in advance.
struct SyntheticRun {
  std::vector<ResponseRecord> records;
  std::map<std::string, std::optional<AnswerLabel>> intended;
};

inline SyntheticRun random_run(const std::vector<QAItem>& items, std::uint64_t seed,
                               const std::string& model = "synthetic") {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick(0, 99);
  std::uniform_int_distribution<int> letter(0, 3);
  SyntheticRun run;
  for (const auto& item : items) {
    const int roll = pick(gen);
    if (roll < 5) continue;  // missing
    ResponseRecord r{item.item_id, model, static_cast<std::int64_t>(seed), ""};
    std::optional<AnswerLabel> label;
    if (item.question_type == QuestionType::MCQ) {
      if (roll < 12) {
        r.raw_text = "I am not able to tell.";
      } else if (roll < 17) {
        r.raw_text = "Either A or D.";
      } else {
        const int k = letter(gen);
        label = letter_at(static_cast<std::size_t>(k));
        switch (pick(gen) % 3) {
          case 0: r.raw_text = std::string(to_string(*label)); break;
          case 1: r.raw_text = "The answer is " + std::string(to_string(*label)) + "."; break;
          default: r.raw_text = "It moves " + item.options.at(static_cast<std::size_t>(k)).text; break;
        }
      }
    } else {
      if (roll < 12) {
        r.raw_text = "Hard to say.";
      } else {
        label = pick(gen) % 2 ? AnswerLabel::True : AnswerLabel::False;
        const bool yes = *label == AnswerLabel::True;
        switch (pick(gen) % 3) {
          case 0: r.raw_text = yes ? "TRUE" : "FALSE"; break;
          case 1: r.raw_text = yes ? "Yes." : "No."; break;
          default: r.raw_text = yes ? "That is true." : "That is not true."; break;
        }
      }
    }
    run.intended[item.item_id] = label;
    run.records.push_back(std::move(r));
  }
  std::shuffle(run.records.begin(), run.records.end(), gen);
  return run;
}

inline std::string label_response(AnswerLabel label) {
  return std::string(to_string(label));
}

inline std::vector<ResponseRecord> constant_run(const std::vector<QAItem>& items, const std::string& model,
                                                std::int64_t seed, AnswerLabel tf_answer) {
  std::vector<ResponseRecord> out;
  for (const auto& item : items) {
    const AnswerLabel label = item.question_type == QuestionType::MCQ ? AnswerLabel::A : tf_answer;
    out.push_back({item.item_id, model, seed, label_response(label)});
  }
  return out;
}

inline std::vector<ResponseRecord> oracle_run(const std::vector<QAItem>& items, const std::string& model,
                                              std::int64_t seed) {
  std::vector<ResponseRecord> out;
  for (const auto& item : items) out.push_back({item.item_id, model, seed, label_response(item.ground_truth)});
  return out;
}

// Uniform guesses: a random letter for MCQ, a coin flip for T/F.
inline std::vector<ResponseRecord> uniform_run(const std::vector<QAItem>& items, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> letter(0, 3);
  std::bernoulli_distribution coin(0.5);
  std::vector<ResponseRecord> out;
  for (const auto& item : items) {
    const AnswerLabel label = item.question_type == QuestionType::MCQ
                                  ? letter_at(static_cast<std::size_t>(letter(gen)))
                                  : (coin(gen) ? AnswerLabel::True : AnswerLabel::False);
    out.push_back({item.item_id, "uniform", static_cast<std::int64_t>(seed), label_response(label)});
  }
  return out;
}

}  // namespace motionbench::testing
