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

#include "motionbench/dataset.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "motionbench/digest.hpp"
#include "motionbench/errors.hpp"
#include "motionbench/rng.hpp"
#include "motionbench/wav.hpp"

namespace motionbench {

using ordered_json = nlohmann::ordered_json;

void DatasetConfig::validate() const {
  synth.validate();
  render.validate();
  if (synth.sample_rate != render.sample_rate)
    throw ConfigError("synth and render sample rates differ");
  if (variants.empty()) throw ConfigError("no task variants selected");
  if (noise_conditions.empty()) throw ConfigError("no noise conditions selected");
  for (std::size_t i = 0; i < variants.size(); ++i) {
    if (!(variants[i].speed_factor > 0.0)) throw ConfigError("speed factor must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (variants[j].kind == variants[i].kind) throw ConfigError("duplicate task variant");
    }
  }
  for (std::size_t i = 0; i < noise_conditions.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (noise_conditions[j] == noise_conditions[i]) throw ConfigError("duplicate noise condition");
    }
  }
  for (auto dir : kAllDirections) canonical_position(dir, render.listener, render.radius);
}

DirectorySink::DirectorySink(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw std::runtime_error("cannot create " + root_.string() + ": " + ec.message());
}

void DirectorySink::put(const std::string& relative_path, std::vector<std::uint8_t> bytes) {
  const auto path = root_ / relative_path;
  {
    std::lock_guard lock(mkdir_mutex_);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  write_file(path, bytes);
}

void DigestSink::put(const std::string& relative_path, std::vector<std::uint8_t> bytes) {
  auto digest = sha256_hex(bytes);
  std::lock_guard lock(mutex_);
  digests_[relative_path] = std::move(digest);
}

std::map<std::string, std::string> DigestSink::digests() const {
  std::lock_guard lock(mutex_);
  return digests_;
}

std::string summary_line(const VariantSummary& s) {
  std::ostringstream out;
  out << s.variant.name() << ": " << s.clips << " clips, " << s.mcq << " MCQ, " << s.tf << " T/F";
  return out.str();
}

std::string clip_id(const TaskVariant& variant, NoiseCondition noise, const Trajectory& traj) {
  return std::string(variant.name()) + "/" + std::string(to_string(noise)) + "/" + traj.id();
}

std::string clip_relative_path(const TaskVariant& variant, NoiseCondition noise,
                               const Trajectory& traj) {
  return clip_id(variant, noise, traj) + ".wav";
}

std::string item_id(const TaskVariant& variant, NoiseCondition noise, const Trajectory& traj,
                    QuestionType type, AnswerLabel polarity) {
  std::string suffix = "mcq";
  if (type == QuestionType::TF) suffix = polarity == AnswerLabel::False ? "tf_false" : "tf_true";
  return clip_id(variant, noise, traj) + "/" + suffix;
}

std::uint64_t mcq_block_seed(std::uint64_t global_seed, const TaskVariant& variant,
                             NoiseCondition noise) {
  return derive_seed(global_seed,
                     "mcq/" + std::string(variant.name()) + "/" + std::string(to_string(noise)));
}

std::uint64_t noise_seed(std::uint64_t global_seed, const std::string& clip) {
  return derive_seed(global_seed, "noise/" + clip);
}

namespace {

struct ClipJob {
  TaskVariant variant;
  Trajectory traj;
};

void render_job(const DatasetConfig& config, const ClipJob& job, ArtifactSink& sink) {
  const auto source = build_source(job.variant, job.traj.index(), config.global_seed, config.synth);
  const auto clean = render_clip(source, job.traj.path(config.render.radius), config.render);
  for (auto noise : config.noise_conditions) {
    const auto id = clip_id(job.variant, noise, job.traj);
    const auto clip = add_noise(clean, noise, noise_seed(config.global_seed, id), config.render);
    sink.put(clip_relative_path(job.variant, noise, job.traj), encode_wav(clip));
  }
}

void run_jobs(const DatasetConfig& config, const std::vector<ClipJob>& jobs, ArtifactSink& sink) {
  unsigned workers = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs.size()));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        render_job(config, jobs[i], sink);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

void check_composition(const DatasetConfig& config, const Manifest& manifest,
                       const std::vector<VariantSummary>& summaries) {
  const std::size_t clips = kTrajectoryCount * config.noise_conditions.size();
  for (const auto& s : summaries) {
    if (s.trajectories != kTrajectoryCount || s.clips != clips || s.mcq != clips ||
        s.tf != 2 * clips)
      throw ConsistencyError("composition mismatch: " + summary_line(s) + ", expected " +
                             std::to_string(clips) + " clips, " + std::to_string(clips) +
                             " MCQ, " + std::to_string(2 * clips) + " T/F");
  }
  // One MCQ and a TRUE/FALSE statement pair per clip.
  std::map<std::string, std::array<int, 3>> cells;
  for (const auto& item : manifest.items) {
    auto& cell = cells[item.clip_path];
    if (item.question_type == QuestionType::MCQ) ++cell[0];
    else if (item.ground_truth == AnswerLabel::True) ++cell[1];
    else ++cell[2];
  }
  if (cells.size() != clips * summaries.size())
    throw ConsistencyError("manifest references " + std::to_string(cells.size()) +
                           " clips, expected " + std::to_string(clips * summaries.size()));
  for (const auto& [path, cell] : cells) {
    if (cell != std::array<int, 3>{1, 1, 1})
      throw ConsistencyError("clip " + path + " does not carry exactly 1 MCQ and 2 T/F items");
  }
}

}  // namespace

BuildResult plan_benchmark(const DatasetConfig& config) {
  config.validate();
  BuildResult result;

  for (const auto& variant : config.variants) {
    VariantSummary summary;
    summary.variant = variant;
    const auto trajectories = enumerate_trajectories(config.synth.base_duration, variant.speed_factor);
    summary.trajectories = trajectories.size();
    const double duration = static_cast<double>(sample_count(
                                config.synth.base_duration / variant.speed_factor,
                                config.synth.sample_rate)) /
                            config.synth.sample_rate;

    for (const auto& traj : trajectories) {
      for (auto noise : config.noise_conditions) {
        ++summary.clips;
        if (noise == NoiseCondition::Clean)
          summary.clean_samples += sample_count(duration, config.synth.sample_rate);

        auto stamp = [&](QAItem item) {
          item.item_id = item_id(variant, noise, traj, item.question_type, item.ground_truth);
          item.clip_path = clip_relative_path(variant, noise, traj);
          item.trajectory = traj;
          item.noise = noise;
          item.variant = variant;
          item.seed = config.global_seed;
          item.sample_rate = config.synth.sample_rate;
          item.duration_s = duration;
          result.manifest.items.push_back(std::move(item));
        };
        stamp(make_mcq(traj, mcq_block_seed(config.global_seed, variant, noise)));
        ++summary.mcq;
        auto [yes, no] = make_tf_pair(traj);
        stamp(std::move(yes));
        stamp(std::move(no));
        summary.tf += 2;
      }
    }
    result.summaries.push_back(summary);
  }

  std::sort(result.manifest.items.begin(), result.manifest.items.end(),
            [](const QAItem& a, const QAItem& b) { return a.item_id < b.item_id; });
  check_composition(config, result.manifest, result.summaries);
  return result;
}

BuildResult build_benchmark(const DatasetConfig& config, ArtifactSink& sink) {
  BuildResult result = plan_benchmark(config);
  std::vector<ClipJob> jobs;
  for (const auto& variant : config.variants) {
    for (const auto& traj : enumerate_trajectories(config.synth.base_duration, variant.speed_factor))
      jobs.push_back({variant, traj});
  }
  run_jobs(config, jobs, sink);

  const std::string text = manifest_jsonl(result.manifest);
  sink.put(kManifestFileName, std::vector<std::uint8_t>(text.begin(), text.end()));
  return result;
}

std::string manifest_line(const QAItem& item) {
  ordered_json j;
  j["item_id"] = item.item_id;
  j["variant"] = item.variant.name();
  j["question_type"] = to_string(item.question_type);
  j["clip_path"] = item.clip_path;
  j["prompt"] = item.prompt;
  j["options"] = ordered_json::array();
  for (const auto& opt : item.options)
    j["options"].push_back({{"label", to_string(opt.label)}, {"text", opt.text}});
  j["statement"] = item.question_type == QuestionType::TF ? ordered_json(item.statement)
                                                          : ordered_json(nullptr);
  j["ground_truth"] = to_string(item.ground_truth);
  j["start"] = to_string(item.trajectory.start);
  j["end"] = to_string(item.trajectory.end);
  j["noise"] = to_string(item.noise);
  j["seed"] = item.seed;
  j["sample_rate"] = static_cast<std::int64_t>(std::llround(item.sample_rate));
  j["duration_s"] = item.duration_s;
  return j.dump(-1, ' ', false);
}

std::string manifest_jsonl(const Manifest& manifest) {
  std::string out;
  for (const auto& item : manifest.items) {
    out += manifest_line(item);
    out += '\n';
  }
  return out;
}

namespace {

template <typename T>
T require(const ordered_json& j, const char* key, const std::string& source, std::size_t line) {
  if (!j.contains(key)) throw SchemaError(source, line, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(source, line, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

QAItem parse_manifest_line(const std::string& line, const std::string& source,
                           std::size_t line_no) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(source, line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError(source, line_no, "expected a JSON object");
  static const std::vector<std::string> kFields = {
      "item_id", "variant", "question_type", "clip_path", "prompt",      "options",   "statement",
      "ground_truth", "start", "end",      "noise",     "seed",        "sample_rate", "duration_s"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      throw SchemaError(source, line_no, "unknown field '" + key + "'");
  }

  QAItem item;
  item.item_id = require<std::string>(j, "item_id", source, line_no);
  const auto variant = parse_variant(require<std::string>(j, "variant", source, line_no));
  if (!variant) throw SchemaError(source, line_no, "unknown variant");
  item.variant = *variant;
  const auto qtype = parse_question_type(require<std::string>(j, "question_type", source, line_no));
  if (!qtype) throw SchemaError(source, line_no, "unknown question_type");
  item.question_type = *qtype;
  item.clip_path = require<std::string>(j, "clip_path", source, line_no);
  item.prompt = require<std::string>(j, "prompt", source, line_no);
  const auto truth = parse_label(require<std::string>(j, "ground_truth", source, line_no));
  if (!truth) throw SchemaError(source, line_no, "unknown ground_truth label");
  item.ground_truth = *truth;
  const bool truth_is_letter = *truth != AnswerLabel::True && *truth != AnswerLabel::False;
  if (truth_is_letter != (item.question_type == QuestionType::MCQ))
    throw SchemaError(source, line_no, "ground_truth does not fit the question type");

  if (!j.contains("options") || !j["options"].is_array())
    throw SchemaError(source, line_no, "field 'options' must be an array");
  for (const auto& opt : j["options"]) {
    const auto label = parse_label(require<std::string>(opt, "label", source, line_no));
    if (!label) throw SchemaError(source, line_no, "unknown option label");
    item.options.push_back({*label, require<std::string>(opt, "text", source, line_no)});
  }
  if (item.question_type == QuestionType::MCQ && item.options.size() != 4)
    throw SchemaError(source, line_no, "MCQ items need exactly 4 options");
  if (!j.contains("statement")) throw SchemaError(source, line_no, "missing field 'statement'");
  if (item.question_type == QuestionType::TF) {
    if (!j["statement"].is_string()) throw SchemaError(source, line_no, "TF items need a statement");
    item.statement = j["statement"].get<std::string>();
  }

  const auto start = parse_direction(require<std::string>(j, "start", source, line_no));
  const auto end = parse_direction(require<std::string>(j, "end", source, line_no));
  if (!start || !end || *start == *end) throw SchemaError(source, line_no, "invalid start/end");
  item.trajectory = {*start, *end, kDefaultBaseDuration, item.variant.speed_factor};
  const auto noise = parse_noise(require<std::string>(j, "noise", source, line_no));
  if (!noise) throw SchemaError(source, line_no, "unknown noise condition");
  item.noise = *noise;
  item.seed = require<std::uint64_t>(j, "seed", source, line_no);
  item.sample_rate = require<double>(j, "sample_rate", source, line_no);
  item.duration_s = require<double>(j, "duration_s", source, line_no);
  return item;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto item = parse_manifest_line(line, path.string(), line_no);
    if (!seen.emplace(item.item_id, line_no).second)
      throw SchemaError(path.string(), line_no, "duplicate item_id " + item.item_id);
    manifest.items.push_back(std::move(item));
  }
  return manifest;
}

}  // namespace motionbench
