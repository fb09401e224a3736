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

#include "motionbench/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motionbench/config.hpp"
#include "motionbench/dataset.hpp"
#include "motionbench/digest.hpp"
#include "motionbench/errors.hpp"
#include "motionbench/eval.hpp"
#include "motionbench/inspect.hpp"
#include "motionbench/wav.hpp"

namespace motionbench {

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Overrides {
  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> variants;
  std::vector<std::string> noise;
  double sample_rate = 0.0;
  double radius = 0.0;
  double ear_distance = 0.0;
  double front_cutoff = 0.0;
  double rear_cutoff = 0.0;
  double speed_factor = 0.0;
  unsigned jobs = 0;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_config_options(CLI::App& app, Overrides& o) {
  o.opts["config"] = app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  o.opts["out"] = app.add_option("--out", o.output_dir, "output directory");
  o.opts["seed"] = app.add_option("--seed", o.seed, "global seed");
  o.opts["variants"] = app.add_option("--variants", o.variants, "task variants")->delimiter(',');
  o.opts["noise"] = app.add_option("--noise", o.noise, "noise conditions")->delimiter(',');
  o.opts["sample-rate"] = app.add_option("--sample-rate", o.sample_rate, "sample rate in Hz");
  o.opts["radius"] = app.add_option("--radius", o.radius, "trajectory radius in m");
  o.opts["ear-distance"] = app.add_option("--ear-distance", o.ear_distance, "interaural distance in m");
  o.opts["front-cutoff"] = app.add_option("--front-cutoff", o.front_cutoff, "low-pass cutoff at 0 deg");
  o.opts["rear-cutoff"] = app.add_option("--rear-cutoff", o.rear_cutoff, "low-pass cutoff at 180 deg");
  o.opts["speed-factor"] = app.add_option("--speed-factor", o.speed_factor, "variable_speed factor");
  o.opts["jobs"] = app.add_option("--jobs", o.jobs, "worker threads, 0 = hardware concurrency");
}

// defaults < config file < environment < flags
ToolConfig resolve_config(const Overrides& o) {
  ToolConfig c = o.given("config") ? load_tool_config(o.config_path) : ToolConfig{};
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) c.output_dir = env;
  if (o.given("out")) c.output_dir = o.output_dir;
  if (o.given("seed")) c.global_seed = o.seed;
  if (o.given("variants")) c.variants = o.variants;
  if (o.given("noise")) c.noise_conditions = o.noise;
  if (o.given("sample-rate")) c.sample_rate = o.sample_rate;
  if (o.given("radius")) c.radius = o.radius;
  if (o.given("ear-distance")) c.ear_distance = o.ear_distance;
  if (o.given("front-cutoff")) c.front_cutoff = o.front_cutoff;
  if (o.given("rear-cutoff")) c.rear_cutoff = o.rear_cutoff;
  if (o.given("speed-factor")) c.speed_factor = o.speed_factor;
  if (o.given("jobs")) c.jobs = o.jobs;
  c.dataset_config();  // validates
  return c;
}

std::string totals_line(const std::vector<VariantSummary>& summaries) {
  std::size_t clips = 0, mcq = 0, tf = 0;
  for (const auto& s : summaries) {
    clips += s.clips;
    mcq += s.mcq;
    tf += s.tf;
  }
  return "total: " + std::to_string(clips) + " clips, " + std::to_string(mcq) + " MCQ, " +
         std::to_string(tf) + " T/F";
}

int cmd_generate(const ToolConfig& config, std::ostream& out) {
  const fs::path root(config.output_dir);
  fs::create_directories(root);
  DirectorySink sink(root);
  const auto t0 = std::chrono::steady_clock::now();
  const BuildResult result = build_benchmark(config.dataset_config(), sink);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& s : result.summaries) out << summary_line(s) << "\n";
  out << totals_line(result.summaries) << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "wrote %s in %.1f s\n", root.string().c_str(), seconds);
  out << buf;
  return 0;
}

int cmd_verify(const ToolConfig& config, std::ostream& out) {
  const fs::path root(config.output_dir);
  if (!fs::is_directory(root)) throw std::runtime_error("no dataset at " + root.string());
  DigestSink sink;
  build_benchmark(config.dataset_config(), sink);
  const auto expected = sink.digests();

  std::vector<std::string> changed;
  for (const auto& [rel, digest] : expected) {
    const fs::path p = root / rel;
    if (!fs::is_regular_file(p) || sha256_file(p) != digest) changed.push_back(rel);
  }
  // Stray clips from another configuration also count as drift.
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav") continue;
    const std::string rel = fs::relative(entry.path(), root).generic_string();
    if (!expected.contains(rel)) changed.push_back(rel);
  }
  if (changed.empty()) {
    out << "byte-identical, 0 files changed\n";
    return 0;
  }
  out << changed.size() << " files changed\n";
  for (const auto& rel : changed) out << "  " << rel << "\n";
  return kExitFailed;
}

int cmd_inspect(const ToolConfig& config, const std::string& target, std::string svg_path,
                double frame_ms, std::ostream& out) {
  fs::path clip_path(target);
  std::string title = target;
  if (!fs::exists(clip_path)) {
    const fs::path root(config.output_dir);
    const Manifest manifest = load_manifest(root / kManifestFileName);
    const QAItem* found = nullptr;
    for (const auto& item : manifest.items)
      if (item.item_id == target) found = &item;
    if (!found) throw std::runtime_error("no clip file or item_id '" + target + "'");
    clip_path = root / found->clip_path;
    title = found->clip_path;
  }
  const BinauralClip clip = read_wav(clip_path);
  std::optional<BinauralClip> reference;
  if (const auto ref = clean_reference_for(clip_path); ref && fs::exists(*ref)) reference = read_wav(*ref);

  ListenerConfig listener;
  listener.ear_distance = config.ear_distance;
  const ClipDiagnostics diag =
      diagnose_clip(clip, reference ? &*reference : nullptr, frame_ms / 1000.0, listener);
  if (svg_path.empty()) svg_path = fs::path(clip_path).replace_extension(".svg").string();
  const std::string svg = envelope_svg(diag, title);
  write_file(svg_path, std::span(reinterpret_cast<const std::uint8_t*>(svg.data()), svg.size()));
  out << "clip: " << clip_path.string() << "\n";
  out << "svg: " << svg_path << "\n";
  out << diagnostics_text(diag);
  return 0;
}

std::string file_stem_for(const std::string& model_id) {
  std::string s = model_id;
  for (char& ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '_' || ch == '.';
    if (!ok) ch = '_';
  }
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int cmd_score(const std::string& manifest_path, const std::vector<std::string>& response_files,
              const std::string& out_dir, bool strict, std::ostream& out, std::ostream& err) {
  const Manifest manifest = load_manifest(manifest_path);
  std::vector<ResponseRecord> records;
  for (const auto& f : response_files) {
    auto r = load_responses(f);
    records.insert(records.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  const auto runs = score_runs(manifest, records);
  std::size_t warnings = 0;
  for (const auto& run : runs) {
    const fs::path path =
        fs::path(out_dir) / (file_stem_for(run.model_id) + "_seed" + std::to_string(run.run_seed) + ".json");
    write_text(path, run_score_json(run));
    const Metrics m = metrics_of(run.total());
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s seed %lld: acc %.4f, acc_mcq %.4f, acc_tf %.4f, unparsed %.4f -> %s\n",
                  run.model_id.c_str(), static_cast<long long>(run.run_seed), m.acc, m.acc_mcq, m.acc_tf,
                  m.unparsed_rate, path.string().c_str());
    out << buf;
    for (const auto& w : run.warnings) err << "warning: " << run.model_id << " seed " << run.run_seed << ": " << w << "\n";
    warnings += run.warnings.size();
  }
  return strict && warnings > 0 ? kExitFailed : 0;
}

int cmd_report(const std::vector<std::string>& score_files, const std::string& out_dir, bool strict,
               std::ostream& out, std::ostream& err) {
  std::vector<RunScore> runs;
  std::size_t warnings = 0;
  for (const auto& f : score_files) {
    runs.push_back(load_run_score(f));
    for (const auto& w : runs.back().warnings) err << "warning: " << f << ": " << w << "\n";
    warnings += runs.back().warnings.size();
  }
  const MetricsReport report = aggregate_report(runs);
  const std::string md = report_markdown(report);
  write_text(fs::path(out_dir) / "report.md", md);
  write_text(fs::path(out_dir) / "report.csv", report_csv(report));
  out << md;
  return strict && warnings > 0 ? kExitFailed : 0;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial audio motion benchmark: generate, verify, inspect, score, report"};
  app.name("motionbench");
  app.fallthrough();
  Overrides overrides;
  add_config_options(app, overrides);
  bool show_config = false;
  bool strict = false;
  app.add_flag("--show-config", show_config, "print the resolved configuration");
  app.add_flag("--strict", strict, "treat warnings as errors");

  auto* generate = app.add_subcommand("generate", "render clips and write the manifest");
  auto* verify = app.add_subcommand("verify", "regenerate in memory and compare hashes with disk");

  auto* inspect = app.add_subcommand("inspect", "envelope plot and diagnostics for one clip");
  std::string inspect_target, svg_path;
  double frame_ms = 50.0;
  inspect->add_option("target", inspect_target, "WAV path or item_id")->required();
  inspect->add_option("--svg", svg_path, "SVG output path (default: next to the clip)");
  inspect->add_option("--frame-ms", frame_ms, "analysis frame length")->check(CLI::PositiveNumber);

  auto* score = app.add_subcommand("score", "score response files against a manifest");
  std::string manifest_path;
  std::vector<std::string> response_files;
  std::string score_dir = ".";
  score->add_option("--manifest", manifest_path, "manifest JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("responses", response_files, "responses JSONL files")->required()->check(CLI::ExistingFile);
  score->add_option("--score-dir", score_dir, "where per-run JSON files go");

  auto* report = app.add_subcommand("report", "aggregate per-run score files");
  std::vector<std::string> score_files;
  std::string report_dir = ".";
  report->add_option("scores", score_files, "per-run JSON files")->required()->check(CLI::ExistingFile);
  report->add_option("--report-dir", report_dir, "where report.md and report.csv go");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  ToolConfig config;
  try {
    config = resolve_config(overrides);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (show_config) {
    out << config.to_json();
    if (app.get_subcommands().empty()) return 0;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required\n" << app.help();
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(config, out);
    if (verify->parsed()) return cmd_verify(config, out);
    if (inspect->parsed()) return cmd_inspect(config, inspect_target, svg_path, frame_ms, out);
    if (score->parsed()) return cmd_score(manifest_path, response_files, score_dir, strict, out, err);
    if (report->parsed()) return cmd_report(score_files, report_dir, strict, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace motionbench
