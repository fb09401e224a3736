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

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "motionbench/cli.hpp"
#include "motionbench/config.hpp"
#include "motionbench/errors.hpp"
#include "motionbench/eval.hpp"
#include "motionbench/wav.hpp"
#include "support.hpp"

using namespace motionbench;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "motionbench");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// x coordinate of the highest point on the upper edge of a named envelope path.
double envelope_peak_x(const std::string& svg, const std::string& id) {
  const std::string key = "id=\"" + id + "\" d=\"";
  const auto at = svg.find(key);
  REQUIRE(at != std::string::npos);
  const auto begin = at + key.size();
  const std::string d = svg.substr(begin, svg.find('"', begin) - begin);
  const std::regex point(R"([ML](-?[0-9.]+),(-?[0-9.]+))");
  double best_x = 0.0, best_y = 1e9, last_x = -1.0;
  for (auto it = std::sregex_iterator(d.begin(), d.end(), point); it != std::sregex_iterator(); ++it) {
    const double x = std::stod((*it)[1]);
    const double y = std::stod((*it)[2]);
    if (x < last_x) break;  // lower edge runs backwards
    last_x = x;
    if (y < best_y) {
      best_y = y;
      best_x = x;
    }
  }
  return best_x;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("tool config defaults and validation") {
  const auto c = parse_tool_config("{}", "c.json");
  CHECK(c.global_seed == 7);
  CHECK(c.sample_rate == 44100.0);
  CHECK(c.variants.size() == 3);
  CHECK(c.noise_conditions.size() == 4);
  CHECK(c.radius == 2.5);
  CHECK(c.speed_factor == 2.0);
  const auto dc = c.dataset_config();
  CHECK(dc.variants[2].speed_factor == 2.0);

  CHECK_THROWS_AS(parse_tool_config(R"({"colour": 1})", "c.json"), ConfigError);
  CHECK_THROWS_AS(parse_tool_config(R"({"radius": "far"})", "c.json"), ConfigError);
  CHECK_THROWS_AS(parse_tool_config("[1]", "c.json"), ConfigError);
  CHECK_THROWS_AS(parse_tool_config(R"({"variants": ["loud"]})", "c.json").dataset_config(), ConfigError);

  const auto round = parse_tool_config(c.to_json(), "again");
  CHECK(round.to_json() == c.to_json());
}

TEST_CASE("show-config resolves defaults, file, environment and flags in order") {
  testing::TempDir dir("cfg");
  const auto file = dir.path() / "c.json";
  write(file, R"({"output_dir": "from_file", "global_seed": 11, "radius": 2.0})");

  ::unsetenv(kOutputDirEnv);
  auto r = cli({"--show-config"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["output_dir"] == "motionbench_out");
  CHECK(j["global_seed"] == 7);
  CHECK(j["front_cutoff"] == 8000.0);
  CHECK(j["rear_cutoff"] == 2000.0);
  CHECK(j.size() == 11);

  r = cli({"--show-config", "--config", file.string()});
  j = nlohmann::json::parse(r.out);
  CHECK(j["output_dir"] == "from_file");
  CHECK(j["global_seed"] == 11);
  CHECK(j["radius"] == 2.0);

  ::setenv(kOutputDirEnv, "from_env", 1);
  r = cli({"--show-config", "--config", file.string()});
  CHECK(nlohmann::json::parse(r.out)["output_dir"] == "from_env");
  r = cli({"--show-config", "--config", file.string(), "--out", "from_flag", "--seed", "3"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["output_dir"] == "from_flag");
  CHECK(j["global_seed"] == 3);
  ::unsetenv(kOutputDirEnv);

  write(file, R"({"bogus": true})");
  CHECK(cli({"--show-config", "--config", file.string()}).code == 2);
  CHECK(cli({"--variants", "loud", "--show-config"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("generate, verify and inspect a filtered dataset") {
  testing::TempDir dir("gen");
  const std::string out = (dir.path() / "data").string();
  auto r = cli({"generate", "--out", out, "--variants", "fixed_pitch", "--noise", "clean,snr15"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("fixed_pitch: 112 clips, 112 MCQ, 224 T/F") != std::string::npos);
  CHECK(r.out.find("variable_pitch") == std::string::npos);
  CHECK(fs::exists(fs::path(out) / "manifest.jsonl"));
  CHECK_FALSE(fs::exists(fs::path(out) / "variable_speed"));

  r = cli({"verify", "--out", out, "--variants", "fixed_pitch", "--noise", "clean,snr15"});
  CHECK(r.code == 0);
  CHECK(r.out == "byte-identical, 0 files changed\n");

  r = cli({"inspect", (fs::path(out) / "fixed_pitch/clean/W_E.wav").string(), "--svg",
           (dir.path() / "we.svg").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("measured SNR: inf\n") != std::string::npos);
  std::ifstream svg_in(dir.path() / "we.svg");
  const std::string svg((std::istreambuf_iterator<char>(svg_in)), std::istreambuf_iterator<char>());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(envelope_peak_x(svg, "left") < envelope_peak_x(svg, "right"));

  r = cli({"inspect", "fixed_pitch/snr15/W_E/tf_true", "--out", out, "--svg", (dir.path() / "n.svg").string()});
  REQUIRE(r.code == 0);
  std::smatch m;
  REQUIRE(std::regex_search(r.out, m, std::regex(R"(measured SNR: ([0-9.]+) dB)")));
  CHECK(std::abs(std::stod(m[1]) - 15.0) <= 0.5);
  CHECK(r.out.find("itd_us") != std::string::npos);

  // A different seed changes every clip.
  r = cli({"verify", "--out", out, "--variants", "fixed_pitch", "--noise", "clean,snr15", "--seed", "8"});
  CHECK(r.code == 1);
  CHECK(r.out.find("files changed") != std::string::npos);

  // Corrupt one clip.
  const auto victim = fs::path(out) / "fixed_pitch/snr15/N_S.wav";
  auto bytes = read_file(victim);
  bytes[100] ^= 1;
  write_file(victim, bytes);
  r = cli({"verify", "--out", out, "--variants", "fixed_pitch", "--noise", "clean,snr15"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("1 files changed\n  fixed_pitch/snr15/N_S.wav\n", 0) == 0);

  write(dir.path() / "broken.wav", "RIFF....WAVEjunk");
  CHECK(cli({"inspect", (dir.path() / "broken.wav").string()}).code == 3);
  CHECK(cli({"inspect", "no/such/item", "--out", out}).code == 3);
}

TEST_CASE("unwritable output directory fails with a message") {
  testing::TempDir dir("ro");
  write(dir.path() / "plain", "x");
  const auto r = cli({"generate", "--out", (dir.path() / "plain" / "sub").string(), "--variants", "variable_speed",
                      "--noise", "clean"});
  CHECK(r.code != 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("score and report") {
  testing::TempDir dir("score");
  DatasetConfig config;
  config.variants = {TaskVariant::fixed_pitch()};
  const auto plan = plan_benchmark(config);
  const auto manifest = dir.path() / "manifest.jsonl";
  write(manifest, manifest_jsonl(plan.manifest));

  const auto responses = dir.path() / "responses.jsonl";
  {
    std::ofstream f(responses);
    for (int seed = 0; seed < 3; ++seed) {
      for (const auto& r : testing::oracle_run(plan.manifest.items, "oracle", seed)) f << response_line(r) << "\n";
      for (const auto& r : testing::uniform_run(plan.manifest.items, static_cast<std::uint64_t>(seed)))
        f << response_line(r) << "\n";
    }
  }
  const auto partial = dir.path() / "partial.jsonl";
  {
    std::ofstream f(partial);
    for (const auto& r : testing::random_run(plan.manifest.items, 1, "partial").records) f << response_line(r) << "\n";
  }
  const auto scores = dir.path() / "scores";
  auto r = cli({"score", "--manifest", manifest.string(), responses.string(), "--score-dir", scores.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(scores / "oracle_seed0.json"));
  CHECK(fs::exists(scores / "uniform_seed2.json"));
  CHECK(r.err.empty());
  CHECK(cli({"--strict", "score", "--manifest", manifest.string(), responses.string(), "--score-dir",
             scores.string()}).code == 0);

  // Unanswered items are warnings, and errors under --strict.
  r = cli({"score", "--manifest", manifest.string(), partial.string(), "--score-dir", scores.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("no response") != std::string::npos);
  CHECK(cli({"--strict", "score", "--manifest", manifest.string(), partial.string(), "--score-dir",
             scores.string()}).code == 1);

  std::vector<std::string> args = {"report", "--report-dir", dir.path().string()};
  for (const char* name : {"oracle_seed0", "oracle_seed1", "oracle_seed2"})
    args.push_back((scores / (std::string(name) + ".json")).string());
  r = cli(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("| fixed_pitch | oracle | 100.00 (±0.00) | 100.00 (±0.00) | 100.00 (±0.00) | 100.00 (±0.00) | 100.00 (±0.00) |") !=
        std::string::npos);
  CHECK(r.out.find("| fixed_pitch | oracle | 100.00 (±0.00) | 100.00 (±0.00) | 0.00 (±0.00) |") != std::string::npos);
  CHECK(fs::exists(dir.path() / "report.md"));
  std::ifstream csv(dir.path() / "report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "task,model,noise,metric,mean,std");

  args = {"report", "--report-dir", dir.path().string()};
  for (const char* name : {"uniform_seed0", "uniform_seed1", "uniform_seed2"})
    args.push_back((scores / (std::string(name) + ".json")).string());
  r = cli(args);
  CHECK(r.code == 0);
  std::smatch m;
  REQUIRE(std::regex_search(r.out, m, std::regex(R"(\| fixed_pitch \| uniform \| ([0-9.]+) \(±([0-9.]+)\))")));
  CHECK(std::stod(m[2]) > 0.0);

  // Referential integrity and schema errors.
  const auto bad = dir.path() / "bad.jsonl";
  write(bad, response_line({"fixed_pitch/clean/W_E/mcq", "m", 0, "A"}) + "\n" +
                 response_line({"fixed_pitch/clean/X_Y/mcq", "m", 0, "A"}) + "\n");
  r = cli({"score", "--manifest", manifest.string(), bad.string(), "--score-dir", scores.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("X_Y") != std::string::npos);

  write(bad, response_line({"fixed_pitch/clean/W_E/mcq", "m", 0, "A"}) + "\n" + R"({"item_id": 5})" + "\n");
  r = cli({"score", "--manifest", manifest.string(), bad.string(), "--score-dir", scores.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("bad.jsonl:2") != std::string::npos);
}
