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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motionbench/dataset.hpp"
#include "motionbench/qa.hpp"

namespace motionbench {

struct ResponseRecord {
  std::string item_id;
  std::string model_id;
  std::int64_t run_seed = 0;
  std::string raw_text;
};

// JSONL with fields item_id, model_id, run_seed, raw_text.
std::string response_line(const ResponseRecord& record);
ResponseRecord parse_response_line(const std::string& line, const std::string& source,
                                   std::size_t line_no);
std::vector<ResponseRecord> load_responses(const std::filesystem::path& path);

// nullopt is the Unparsed sentinel.
using ParsedAnswer = std::optional<AnswerLabel>;

// Rule-based normalisation of free text into a canonical label. Rules are
// tried in order and the first that yields a match decides:
//   1. MCQ: answer letters A-D as standalone tokens. Uppercase letters count
//      anywhere except an article "A" before a lowercase word; lowercase
//      letters only when marked ("(b)", "b)", "answer: b", "option b") or as
//      the whole response. Two distinct letters -> Unparsed.
//   2. MCQ: an option's motion text ("left to right", "Left→Right") found as
//      a bounded phrase. Matches for more than one option -> Unparsed.
//   3. TF: the first of true / false / yes / no; "not true" reads as FALSE
//      and "not false" as TRUE.
ParsedAnswer parse_response(std::string_view raw_text, QuestionType type,
                            std::span<const Option> options = {});

struct CellCounts {
  std::size_t mcq_total = 0;
  std::size_t mcq_correct = 0;
  std::size_t mcq_unparsed = 0;
  std::size_t true_total = 0;     // TF items whose truth is TRUE
  std::size_t true_hits = 0;      // ... answered TRUE
  std::size_t true_unparsed = 0;
  std::size_t false_total = 0;    // TF items whose truth is FALSE
  std::size_t false_rejects = 0;  // ... answered FALSE
  std::size_t false_accepts = 0;  // ... answered TRUE
  std::size_t false_unparsed = 0;
  std::size_t missing = 0;        // also counted as unparsed

  CellCounts& operator+=(const CellCounts& other);
  std::size_t items() const { return mcq_total + true_total + false_total; }
  friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

struct Metrics {
  double acc = 0.0;  // all MCQ items and T/F judgments pooled
  double acc_mcq = 0.0;
  double acc_tf = 0.0;
  double tpr = 0.0;
  double tnr = 0.0;
  double yes_bias = 0.0;
  double unparsed_rate = 0.0;
  double unparsed_rate_on_false = 0.0;
};

Metrics metrics_of(const CellCounts& counts);

// Metric names in report order, and lookup by name.
const std::vector<std::string>& metric_names();
double metric_value(const Metrics& metrics, std::string_view name);

using CellKey = std::pair<std::string, std::string>;  // (variant, noise)

struct RunScore {
  std::string model_id;
  std::int64_t run_seed = 0;
  std::map<CellKey, CellCounts> cells;
  std::vector<std::string> covered_items;  // sorted
  std::vector<std::string> missing_items;  // sorted
  std::vector<std::string> warnings;

  CellCounts total() const;
};

// Scores the records of one (model, seed) run against the manifest. Unknown
// item_ids throw SchemaError; duplicates keep the last record and warn;
// missing items score 0 and warn.
RunScore score_run(const Manifest& manifest, std::span<const ResponseRecord> records);

// Partitions records by (model_id, run_seed) and scores each run.
std::vector<RunScore> score_runs(const Manifest& manifest, std::span<const ResponseRecord> records);

double acc_mcq(const Manifest& manifest, std::span<const ResponseRecord> records);
double acc_tf(const Manifest& manifest, std::span<const ResponseRecord> records);

struct BiasMetrics {
  double tpr = 0.0;
  double tnr = 0.0;
  double yes_bias = 0.0;
};
BiasMetrics bias_metrics(const Manifest& manifest, std::span<const ResponseRecord> records);

std::string run_score_json(const RunScore& score);
RunScore parse_run_score(const std::string& text, const std::string& source);
RunScore load_run_score(const std::filesystem::path& path);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over seeds
};

Stat population_stat(std::span<const double> values);

inline constexpr const char* kAverageColumn = "AVG";

struct MetricsReport {
  struct Row {
    std::string variant;
    std::string model;
    std::string noise;  // noise condition name or kAverageColumn
    std::map<std::string, Stat> metrics;
    std::size_t seeds = 0;
  };

  std::vector<std::string> variants;
  std::vector<std::string> models;
  std::vector<std::string> noises;  // present conditions in canonical order, then AVG
  std::vector<Row> rows;

  const Row* find(std::string_view variant, std::string_view model, std::string_view noise) const;
};

// Mean and population std over the seeds of each model. The AVG column takes
// the unweighted mean over noise conditions within each seed first. Throws
// ConsistencyError when the seeds of one model cover different items.
MetricsReport aggregate_report(std::span<const RunScore> runs);

// Per-task accuracy table, MCQ vs T/F table and bias table (clean).
std::string report_markdown(const MetricsReport& report);
// Columns task,model,noise,metric,mean,std.
std::string report_csv(const MetricsReport& report);

}  // namespace motionbench
