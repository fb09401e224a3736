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
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "motionbench/qa.hpp"
#include "motionbench/render.hpp"
#include "motionbench/signal.hpp"
#include "motionbench/variant.hpp"

namespace motionbench {

inline constexpr const char* kManifestFileName = "manifest.jsonl";

struct DatasetConfig {
  SynthConfig synth;
  RenderConfig render;
  std::vector<TaskVariant> variants{TaskVariant::fixed_pitch(), TaskVariant::variable_pitch(),
                                    TaskVariant::variable_speed()};
  std::vector<NoiseCondition> noise_conditions{kAllNoiseConditions.begin(),
                                               kAllNoiseConditions.end()};
  std::uint64_t global_seed = 7;
  unsigned jobs = 0;  // 0 = one per hardware thread

  void validate() const;
};

// Receives every generated file. Implementations must accept concurrent put()
// calls for distinct paths.
class ArtifactSink {
 public:
  virtual ~ArtifactSink() = default;
  virtual void put(const std::string& relative_path, std::vector<std::uint8_t> bytes) = 0;
};

class DirectorySink final : public ArtifactSink {
 public:
  explicit DirectorySink(std::filesystem::path root);
  void put(const std::string& relative_path, std::vector<std::uint8_t> bytes) override;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::mutex mkdir_mutex_;
};

// Keeps only the SHA-256 of each file.
class DigestSink final : public ArtifactSink {
 public:
  void put(const std::string& relative_path, std::vector<std::uint8_t> bytes) override;
  std::map<std::string, std::string> digests() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> digests_;
};

struct VariantSummary {
  TaskVariant variant;
  std::size_t trajectories = 0;
  std::size_t clips = 0;
  std::size_t mcq = 0;
  std::size_t tf = 0;
  std::size_t clean_samples = 0;  // summed over the clean clips
};

std::string summary_line(const VariantSummary& summary);

struct Manifest {
  std::vector<QAItem> items;
};

struct BuildResult {
  Manifest manifest;
  std::vector<VariantSummary> summaries;
};

std::string clip_id(const TaskVariant& variant, NoiseCondition noise, const Trajectory& traj);
// "<variant>/<noise>/<start>_<end>.wav"
std::string clip_relative_path(const TaskVariant& variant, NoiseCondition noise,
                               const Trajectory& traj);
// "<clip id>/mcq", "<clip id>/tf_true", "<clip id>/tf_false"
std::string item_id(const TaskVariant& variant, NoiseCondition noise, const Trajectory& traj,
                    QuestionType type, AnswerLabel polarity = AnswerLabel::True);

// Seed for the MCQ letter schedule of one (variant, noise) block.
std::uint64_t mcq_block_seed(std::uint64_t global_seed, const TaskVariant& variant,
                             NoiseCondition noise);
std::uint64_t noise_seed(std::uint64_t global_seed, const std::string& clip);

// Renders every (variant, trajectory, noise) clip into `sink`, then the
// manifest as kManifestFileName. Items are ordered by item_id. Throws
// ConsistencyError if the composition deviates from 56 x |noise| clips,
// one MCQ and two T/F items per clip.
// Items and summaries only; nothing is rendered.
BuildResult plan_benchmark(const DatasetConfig& config);
BuildResult build_benchmark(const DatasetConfig& config, ArtifactSink& sink);

// Manifest JSONL with fields item_id, variant, question_type, clip_path,
// prompt, options, statement, ground_truth, start, end, noise, seed,
// sample_rate, duration_s.
std::string manifest_line(const QAItem& item);
std::string manifest_jsonl(const Manifest& manifest);
QAItem parse_manifest_line(const std::string& line, const std::string& source, std::size_t line_no);
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace motionbench
