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

#include "motionbench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "motionbench/errors.hpp"

namespace motionbench {

using json = nlohmann::ordered_json;

DatasetConfig ToolConfig::dataset_config() const {
  DatasetConfig config;
  config.global_seed = global_seed;
  config.jobs = jobs;
  config.synth.sample_rate = sample_rate;
  config.render.sample_rate = sample_rate;
  config.render.radius = radius;
  config.render.listener.ear_distance = ear_distance;
  config.render.front_cutoff = front_cutoff;
  config.render.rear_cutoff = rear_cutoff;

  config.variants.clear();
  for (const auto& name : variants) {
    const auto v = parse_variant(name, speed_factor);
    if (!v) throw ConfigError("unknown variant '" + name + "'");
    config.variants.push_back(*v);
  }
  config.noise_conditions.clear();
  for (const auto& name : noise_conditions) {
    const auto n = parse_noise(name);
    if (!n) throw ConfigError("unknown noise condition '" + name + "'");
    config.noise_conditions.push_back(*n);
  }
  config.validate();
  return config;
}

std::string ToolConfig::to_json() const {
  json j;
  j["output_dir"] = output_dir;
  j["global_seed"] = global_seed;
  j["sample_rate"] = sample_rate;
  j["variants"] = variants;
  j["noise_conditions"] = noise_conditions;
  j["radius"] = radius;
  j["ear_distance"] = ear_distance;
  j["front_cutoff"] = front_cutoff;
  j["rear_cutoff"] = rear_cutoff;
  j["speed_factor"] = speed_factor;
  j["jobs"] = jobs;
  return j.dump(2) + "\n";
}

ToolConfig parse_tool_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": config must be a JSON object");

  static const std::set<std::string> kKeys = {
      "output_dir",   "global_seed", "sample_rate",  "variants",     "noise_conditions", "radius",
      "ear_distance", "front_cutoff", "rear_cutoff", "speed_factor", "jobs"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) throw ConfigError(source + ": unknown key '" + key + "'");
  }

  ToolConfig c;
  try {
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("global_seed")) c.global_seed = j["global_seed"].get<std::uint64_t>();
    if (j.contains("sample_rate")) c.sample_rate = j["sample_rate"].get<double>();
    if (j.contains("variants")) c.variants = j["variants"].get<std::vector<std::string>>();
    if (j.contains("noise_conditions"))
      c.noise_conditions = j["noise_conditions"].get<std::vector<std::string>>();
    if (j.contains("radius")) c.radius = j["radius"].get<double>();
    if (j.contains("ear_distance")) c.ear_distance = j["ear_distance"].get<double>();
    if (j.contains("front_cutoff")) c.front_cutoff = j["front_cutoff"].get<double>();
    if (j.contains("rear_cutoff")) c.rear_cutoff = j["rear_cutoff"].get<double>();
    if (j.contains("speed_factor")) c.speed_factor = j["speed_factor"].get<double>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

ToolConfig load_tool_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tool_config(buf.str(), path.string());
}

}  // namespace motionbench
