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

#include "motionbench/eval.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "motionbench/errors.hpp"

namespace motionbench {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Responses JSONL

std::string response_line(const ResponseRecord& r) {
  json j;
  j["item_id"] = r.item_id;
  j["model_id"] = r.model_id;
  j["run_seed"] = r.run_seed;
  j["raw_text"] = r.raw_text;
  return j.dump(-1, ' ', false);
}

ResponseRecord parse_response_line(const std::string& line, const std::string& source,
                                   std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(source, line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError(source, line_no, "expected a JSON object");
  static constexpr std::array<std::string_view, 4> kFields = {"item_id", "model_id", "run_seed",
                                                              "raw_text"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      throw SchemaError(source, line_no, "unknown field '" + key + "'");
  }
  for (auto key : kFields) {
    if (!j.contains(key)) throw SchemaError(source, line_no, "missing field '" + std::string(key) + "'");
  }
  if (!j["item_id"].is_string() || !j["model_id"].is_string() || !j["raw_text"].is_string())
    throw SchemaError(source, line_no, "item_id, model_id and raw_text must be strings");
  if (!j["run_seed"].is_number_integer())
    throw SchemaError(source, line_no, "run_seed must be an integer");
  return {j["item_id"].get<std::string>(), j["model_id"].get<std::string>(),
          j["run_seed"].get<std::int64_t>(), j["raw_text"].get<std::string>()};
}

std::vector<ResponseRecord> load_responses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<ResponseRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_response_line(line, path.string(), line_no));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string arrows_to_words(std::string_view s) {
  static constexpr std::array<std::string_view, 5> kArrows = {"→", "⟶", "->", "=>", "—>"};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    for (auto arrow : kArrows) {
      if (s.substr(i, arrow.size()) == arrow) {
        out += " to ";
        i += arrow.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out += s[i++];
  }
  return out;
}

// Lowercase, arrows spelled "to", whitespace runs collapsed.
std::string canonical_text(std::string_view s) {
  const std::string low = lowercase(arrows_to_words(s));
  std::string out;
  for (char c : low) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (space) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += c;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string strip(std::string_view s, std::string_view junk) {
  const auto b = s.find_first_not_of(junk);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(junk);
  return std::string(s.substr(b, e - b + 1));
}

bool ends_with(std::string_view s, std::string_view tail) {
  return s.size() >= tail.size() && s.substr(s.size() - tail.size()) == tail &&
         (s.size() == tail.size() || !is_alnum(s[s.size() - tail.size() - 1]));
}

// Distinct letters accepted by rule 1.
std::set<AnswerLabel> letter_rule(std::string_view text) {
  static constexpr std::array<std::string_view, 6> kLeadIns = {
      "answer", "answer is", "option", "choice", "letter", "answer would be"};
  static const std::set<std::string> kNotArticle = {"and", "or",  "nor",    "is",   "was",
                                                    "vs",  "seems", "versus", "then", "but"};
  const std::string whole = strip(text, " \t\r\n.:;!*\"'()[]");
  std::set<AnswerLabel> found;

  for (std::size_t i = 0; i < text.size();) {
    if (!is_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_alnum(text[j])) ++j;
    const char c = text[i];
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (j - i == 1 && upper >= 'A' && upper <= 'D') {
      const char next = j < text.size() ? text[j] : '\0';
      const bool marked = next == ')' || next == ']' || next == ':';
      const std::string before = strip(lowercase(text.substr(0, i)), " \t\r\n:*\"'([");
      const bool lead_in = std::any_of(kLeadIns.begin(), kLeadIns.end(),
                                       [&](std::string_view w) { return ends_with(before, w); });
      const bool alone = whole.size() == 1;
      bool article = false;
      if (c == 'A' && next == ' ' && j + 1 < text.size() &&
          std::islower(static_cast<unsigned char>(text[j + 1]))) {
        std::size_t k = j + 1;
        while (k < text.size() && is_alpha(text[k])) ++k;
        article = !kNotArticle.contains(std::string(text.substr(j + 1, k - j - 1)));
      }
      const bool is_upper = c == upper;
      if (marked || lead_in || alone || (is_upper && !article))
        found.insert(static_cast<AnswerLabel>(upper - 'A'));
    }
    i = j;
  }
  return found;
}

bool bounded(char c) { return !(is_alnum(c) || c == '-'); }

bool contains_phrase(const std::string& haystack, const std::string& phrase) {
  if (phrase.empty()) return false;
  for (auto at = haystack.find(phrase); at != std::string::npos;
       at = haystack.find(phrase, at + 1)) {
    const bool left = at == 0 || bounded(haystack[at - 1]);
    const std::size_t end = at + phrase.size();
    const bool right = end == haystack.size() || bounded(haystack[end]);
    if (left && right) return true;
  }
  return false;
}

ParsedAnswer truth_rule(std::string_view text) {
  const std::string low = lowercase(text);
  std::string prev;
  for (std::size_t i = 0; i < low.size();) {
    if (!is_alpha(low[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < low.size() && is_alpha(low[j])) ++j;
    const std::string word = low.substr(i, j - i);
    const bool negated = prev == "not" || prev == "t";  // "not", "isn't"
    if (word == "true") return negated ? AnswerLabel::False : AnswerLabel::True;
    if (word == "false") return negated ? AnswerLabel::True : AnswerLabel::False;
    if (word == "yes") return AnswerLabel::True;
    if (word == "no") return AnswerLabel::False;
    prev = word;
    i = j;
  }
  return std::nullopt;
}

}  // namespace

ParsedAnswer parse_response(std::string_view raw_text, QuestionType type,
                            std::span<const Option> options) {
  if (type == QuestionType::TF) return truth_rule(raw_text);

  // Rule 1; a tie ends parsing as Unparsed.
  const auto letters = letter_rule(raw_text);
  if (letters.size() == 1) return *letters.begin();
  if (letters.size() > 1) return std::nullopt;

  // Rule 2.
  const std::string text = canonical_text(raw_text);
  ParsedAnswer match;
  std::size_t hits = 0;
  for (const auto& opt : options) {
    if (contains_phrase(text, canonical_text(opt.text))) {
      if (!match || *match != opt.label) ++hits;
      match = opt.label;
    }
  }
  if (hits == 1) return match;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting

CellCounts& CellCounts::operator+=(const CellCounts& o) {
  mcq_total += o.mcq_total;
  mcq_correct += o.mcq_correct;
  mcq_unparsed += o.mcq_unparsed;
  true_total += o.true_total;
  true_hits += o.true_hits;
  true_unparsed += o.true_unparsed;
  false_total += o.false_total;
  false_rejects += o.false_rejects;
  false_accepts += o.false_accepts;
  false_unparsed += o.false_unparsed;
  missing += o.missing;
  return *this;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics metrics_of(const CellCounts& c) {
  Metrics m;
  const std::size_t tf_total = c.true_total + c.false_total;
  m.acc = ratio(c.mcq_correct + c.true_hits + c.false_rejects, c.items());
  m.acc_mcq = ratio(c.mcq_correct, c.mcq_total);
  m.acc_tf = ratio(c.true_hits + c.false_rejects, tf_total);
  m.tpr = ratio(c.true_hits, c.true_total);
  m.tnr = ratio(c.false_rejects, c.false_total);
  m.yes_bias = ratio(c.false_accepts, c.false_total);
  m.unparsed_rate = ratio(c.mcq_unparsed + c.true_unparsed + c.false_unparsed, c.items());
  m.unparsed_rate_on_false = ratio(c.false_unparsed, c.false_total);
  return m;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> kNames = {"acc", "acc_mcq",  "acc_tf",       "tpr",
                                                  "tnr", "yes_bias", "unparsed_rate"};
  return kNames;
}

double metric_value(const Metrics& m, std::string_view name) {
  if (name == "acc") return m.acc;
  if (name == "acc_mcq") return m.acc_mcq;
  if (name == "acc_tf") return m.acc_tf;
  if (name == "tpr") return m.tpr;
  if (name == "tnr") return m.tnr;
  if (name == "yes_bias") return m.yes_bias;
  if (name == "unparsed_rate") return m.unparsed_rate;
  if (name == "unparsed_rate_on_false") return m.unparsed_rate_on_false;
  throw std::invalid_argument("unknown metric " + std::string(name));
}

CellCounts RunScore::total() const {
  CellCounts sum;
  for (const auto& [key, counts] : cells) sum += counts;
  return sum;
}

namespace {

std::string preview(const std::vector<std::string>& ids, std::size_t limit = 5) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > limit) out += ", ...";
  return out;
}

}  // namespace

RunScore score_run(const Manifest& manifest, std::span<const ResponseRecord> records) {
  RunScore score;
  if (!records.empty()) {
    score.model_id = records.front().model_id;
    score.run_seed = records.front().run_seed;
  }

  std::map<std::string, const QAItem*> index;
  for (const auto& item : manifest.items) index.emplace(item.item_id, &item);

  std::map<std::string, const ResponseRecord*> latest;
  std::vector<std::string> duplicates;
  for (const auto& r : records) {
    if (r.model_id != score.model_id || r.run_seed != score.run_seed)
      throw std::invalid_argument("score_run expects records of a single (model, seed) run");
    if (!index.contains(r.item_id))
      throw SchemaError("responses", 0, "unknown item_id '" + r.item_id + "'");
    auto [it, inserted] = latest.emplace(r.item_id, &r);
    if (!inserted) {
      it->second = &r;
      duplicates.push_back(r.item_id);
    }
  }
  if (!duplicates.empty())
    score.warnings.push_back(std::to_string(duplicates.size()) +
                             " duplicate responses, last one kept: " + preview(duplicates));

  for (const auto& item : manifest.items) {
    auto& cell = score.cells[{std::string(item.variant.name()), std::string(to_string(item.noise))}];
    const auto found = latest.find(item.item_id);
    ParsedAnswer answer;
    if (found == latest.end()) {
      ++cell.missing;
      score.missing_items.push_back(item.item_id);
    } else {
      score.covered_items.push_back(item.item_id);
      answer = parse_response(found->second->raw_text, item.question_type, item.options);
    }

    if (item.question_type == QuestionType::MCQ) {
      ++cell.mcq_total;
      if (!answer) ++cell.mcq_unparsed;
      else if (*answer == item.ground_truth) ++cell.mcq_correct;
    } else if (item.ground_truth == AnswerLabel::True) {
      ++cell.true_total;
      if (!answer) ++cell.true_unparsed;
      else if (*answer == AnswerLabel::True) ++cell.true_hits;
    } else {
      ++cell.false_total;
      if (!answer) ++cell.false_unparsed;
      else if (*answer == AnswerLabel::False) ++cell.false_rejects;
      else ++cell.false_accepts;
    }
  }
  std::sort(score.covered_items.begin(), score.covered_items.end());
  std::sort(score.missing_items.begin(), score.missing_items.end());
  if (!score.missing_items.empty())
    score.warnings.push_back(std::to_string(score.missing_items.size()) +
                             " items have no response and score 0: " + preview(score.missing_items));
  return score;
}

std::vector<RunScore> score_runs(const Manifest& manifest, std::span<const ResponseRecord> records) {
  std::map<std::pair<std::string, std::int64_t>, std::vector<ResponseRecord>> runs;
  for (const auto& r : records) runs[{r.model_id, r.run_seed}].push_back(r);
  std::vector<RunScore> out;
  for (const auto& [key, run] : runs) out.push_back(score_run(manifest, run));
  return out;
}

double acc_mcq(const Manifest& manifest, std::span<const ResponseRecord> records) {
  return metrics_of(score_run(manifest, records).total()).acc_mcq;
}

double acc_tf(const Manifest& manifest, std::span<const ResponseRecord> records) {
  return metrics_of(score_run(manifest, records).total()).acc_tf;
}

BiasMetrics bias_metrics(const Manifest& manifest, std::span<const ResponseRecord> records) {
  const auto m = metrics_of(score_run(manifest, records).total());
  return {m.tpr, m.tnr, m.yes_bias};
}

// ---------------------------------------------------------------------------
// Per-run score files

namespace {

json counts_json(const CellCounts& c) {
  return json{{"mcq_total", c.mcq_total},       {"mcq_correct", c.mcq_correct},
              {"mcq_unparsed", c.mcq_unparsed}, {"true_total", c.true_total},
              {"true_hits", c.true_hits},       {"true_unparsed", c.true_unparsed},
              {"false_total", c.false_total},   {"false_rejects", c.false_rejects},
              {"false_accepts", c.false_accepts}, {"false_unparsed", c.false_unparsed},
              {"missing", c.missing}};
}

CellCounts counts_from_json(const json& j) {
  CellCounts c;
  c.mcq_total = j.at("mcq_total").get<std::size_t>();
  c.mcq_correct = j.at("mcq_correct").get<std::size_t>();
  c.mcq_unparsed = j.at("mcq_unparsed").get<std::size_t>();
  c.true_total = j.at("true_total").get<std::size_t>();
  c.true_hits = j.at("true_hits").get<std::size_t>();
  c.true_unparsed = j.at("true_unparsed").get<std::size_t>();
  c.false_total = j.at("false_total").get<std::size_t>();
  c.false_rejects = j.at("false_rejects").get<std::size_t>();
  c.false_accepts = j.at("false_accepts").get<std::size_t>();
  c.false_unparsed = j.at("false_unparsed").get<std::size_t>();
  c.missing = j.at("missing").get<std::size_t>();
  return c;
}

}  // namespace

std::string run_score_json(const RunScore& score) {
  json j;
  j["model_id"] = score.model_id;
  j["run_seed"] = score.run_seed;
  j["cells"] = json::array();
  for (const auto& [key, counts] : score.cells) {
    const Metrics m = metrics_of(counts);
    json metrics;
    for (const auto& name : metric_names()) metrics[name] = metric_value(m, name);
    j["cells"].push_back(
        {{"variant", key.first}, {"noise", key.second}, {"counts", counts_json(counts)}, {"metrics", metrics}});
  }
  j["covered_items"] = score.covered_items;
  j["missing_items"] = score.missing_items;
  j["warnings"] = score.warnings;
  return j.dump(2, ' ', false) + "\n";
}

RunScore parse_run_score(const std::string& text, const std::string& source) {
  try {
    const json j = json::parse(text);
    RunScore score;
    score.model_id = j.at("model_id").get<std::string>();
    score.run_seed = j.at("run_seed").get<std::int64_t>();
    for (const auto& cell : j.at("cells")) {
      score.cells[{cell.at("variant").get<std::string>(), cell.at("noise").get<std::string>()}] =
          counts_from_json(cell.at("counts"));
    }
    score.covered_items = j.at("covered_items").get<std::vector<std::string>>();
    score.missing_items = j.at("missing_items").get<std::vector<std::string>>();
    score.warnings = j.at("warnings").get<std::vector<std::string>>();
    return score;
  } catch (const json::exception& e) {
    throw SchemaError(source, 0, std::string("malformed score file: ") + e.what());
  }
}

RunScore load_run_score(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_score(buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// Aggregation

Stat population_stat(std::span<const double> values) {
  if (values.empty()) return {};
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    return {values.front(), 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

const MetricsReport::Row* MetricsReport::find(std::string_view variant, std::string_view model,
                                              std::string_view noise) const {
  for (const auto& row : rows) {
    if (row.variant == variant && row.model == model && row.noise == noise) return &row;
  }
  return nullptr;
}

namespace {

int variant_rank(const std::string& name) {
  const auto v = parse_variant(name);
  return v ? static_cast<int>(v->kind) : 99;
}

int noise_rank(const std::string& name) {
  const auto n = parse_noise(name);
  return n ? static_cast<int>(*n) : 99;
}

std::vector<std::string> divergent(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MetricsReport aggregate_report(std::span<const RunScore> runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  MetricsReport report;

  std::map<std::string, std::vector<const RunScore*>> by_model;
  std::set<std::string> variants;
  std::set<std::string> noises;
  for (const auto& run : runs) {
    auto& seeds = by_model[run.model_id];
    for (const auto* other : seeds) {
      if (other->run_seed == run.run_seed)
        throw ConsistencyError("model " + run.model_id + " has two score sets for seed " +
                               std::to_string(run.run_seed));
    }
    seeds.push_back(&run);
    for (const auto& [key, counts] : run.cells) {
      variants.insert(key.first);
      noises.insert(key.second);
    }
  }

  for (const auto& [model, seeds] : by_model) {
    const RunScore& first = *seeds.front();
    for (const auto* run : seeds) {
      auto diff = divergent(first.covered_items, run->covered_items);
      bool same_cells = run->cells.size() == first.cells.size();
      for (const auto& [key, counts] : first.cells) same_cells = same_cells && run->cells.contains(key);
      if (!diff.empty() || !same_cells)
        throw ConsistencyError("model " + model + ": seeds " + std::to_string(first.run_seed) +
                               " and " + std::to_string(run->run_seed) +
                               " cover different items (" + std::to_string(diff.size()) +
                               " divergent: " + preview(diff, 10) + ")");
    }
  }

  report.variants.assign(variants.begin(), variants.end());
  std::stable_sort(report.variants.begin(), report.variants.end(),
                   [](const auto& a, const auto& b) { return variant_rank(a) < variant_rank(b); });
  report.noises.assign(noises.begin(), noises.end());
  std::stable_sort(report.noises.begin(), report.noises.end(),
                   [](const auto& a, const auto& b) { return noise_rank(a) < noise_rank(b); });
  for (const auto& [model, seeds] : by_model) report.models.push_back(model);

  for (const auto& variant : report.variants) {
    for (const auto& [model, seeds] : by_model) {
      std::vector<std::string> present;
      for (const auto& noise : report.noises) {
        if (seeds.front()->cells.contains({variant, noise})) present.push_back(noise);
      }
      if (present.empty()) continue;

      // [noise][metric] -> per-seed values; AVG per seed over present noises.
      std::map<std::string, std::map<std::string, std::vector<double>>> values;
      for (const auto* run : seeds) {
        std::map<std::string, double> avg;
        for (const auto& noise : present) {
          const Metrics m = metrics_of(run->cells.at({variant, noise}));
          for (const auto& name : metric_names()) {
            const double v = metric_value(m, name);
            values[noise][name].push_back(v);
            avg[name] += v / static_cast<double>(present.size());
          }
        }
        for (const auto& name : metric_names()) values[kAverageColumn][name].push_back(avg[name]);
      }

      present.push_back(kAverageColumn);
      for (const auto& noise : present) {
        MetricsReport::Row row{variant, model, noise, {}, seeds.size()};
        for (const auto& name : metric_names()) row.metrics[name] = population_stat(values[noise][name]);
        report.rows.push_back(std::move(row));
      }
    }
  }
  report.noises.push_back(kAverageColumn);
  return report;
}

namespace {

std::string percent_cell(const MetricsReport::Row* row, const std::string& metric) {
  if (!row) return "n/a";
  const Stat& s = row->metrics.at(metric);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (±%.2f)", 100.0 * s.mean, 100.0 * s.std);
  return buf;
}

std::string noise_heading(const std::string& noise) {
  const auto cond = parse_noise(noise);
  return cond ? std::string(column_label(*cond)) : noise;
}

}  // namespace

std::string report_markdown(const MetricsReport& report) {
  std::ostringstream md;
  const std::string clean(to_string(NoiseCondition::Clean));
  std::size_t max_seeds = 0;
  for (const auto& row : report.rows) max_seeds = std::max(max_seeds, row.seeds);

  md << "# Auditory motion QA report\n\n";
  md << "## Accuracy by task and noise level (%)\n\n| Task | Model |";
  for (const auto& noise : report.noises) md << " " << noise_heading(noise) << " |";
  md << "\n|---|---|";
  for (std::size_t i = 0; i < report.noises.size(); ++i) md << "---|";
  md << "\n";
  for (const auto& variant : report.variants) {
    for (const auto& model : report.models) {
      md << "| " << variant << " | " << model << " |";
      for (const auto& noise : report.noises) md << " " << percent_cell(report.find(variant, model, noise), "acc") << " |";
      md << "\n";
    }
  }

  md << "\n## MCQ vs T/F accuracy, clean (%)\n\n| Model |";
  for (const auto& variant : report.variants) md << " " << variant << " Acc-MCQ | " << variant << " Acc-T/F |";
  md << "\n|---|";
  for (std::size_t i = 0; i < report.variants.size(); ++i) md << "---|---|";
  md << "\n";
  for (const auto& model : report.models) {
    md << "| " << model << " |";
    for (const auto& variant : report.variants) {
      const auto* row = report.find(variant, model, clean);
      md << " " << percent_cell(row, "acc_mcq") << " | " << percent_cell(row, "acc_tf") << " |";
    }
    md << "\n";
  }

  md << "\n## True/false verification, clean (%)\n\n| Task | Model | TPR | TNR | YesBias |\n"
        "|---|---|---|---|---|\n";
  for (const auto& variant : report.variants) {
    for (const auto& model : report.models) {
      const auto* row = report.find(variant, model, clean);
      md << "| " << variant << " | " << model << " | " << percent_cell(row, "tpr") << " | "
         << percent_cell(row, "tnr") << " | " << percent_cell(row, "yes_bias") << " |\n";
    }
  }

  md << "\nValues are mean (± population standard deviation) over up to " << max_seeds
     << " run seeds. AVG is the unweighted mean over noise levels. Unparsed or missing "
        "responses count as incorrect.\n";
  return md.str();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const MetricsReport& report) {
  std::ostringstream csv;
  csv << "task,model,noise,metric,mean,std\n";
  char buf[64];
  for (const auto& row : report.rows) {
    for (const auto& name : metric_names()) {
      const Stat& s = row.metrics.at(name);
      std::snprintf(buf, sizeof buf, "%.6f,%.6f", s.mean, s.std);
      csv << csv_field(row.variant) << "," << csv_field(row.model) << "," << row.noise << "," << name << "," << buf << "\n";
    }
  }
  return csv.str();
}

}  // namespace motionbench
