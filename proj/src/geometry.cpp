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

#include "motionbench/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "motionbench/errors.hpp"

namespace motionbench {

namespace {

constexpr double kDiag = std::numbers::sqrt2 / 2.0;

std::size_t ordinal(CanonicalDirection dir) { return static_cast<std::size_t>(dir); }

CanonicalDirection from_ordinal(long i) {
  return static_cast<CanonicalDirection>(((i % 8) + 8) % 8);
}

}  // namespace

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 v) { return std::hypot(v.x, v.y); }

bool inside_field(Position p) {
  return p.x >= 0.0 && p.x <= kFieldSize && p.y >= 0.0 && p.y <= kFieldSize;
}

std::string_view to_string(CanonicalDirection dir) {
  static constexpr std::array<std::string_view, 8> kNames = {"N", "NE", "E", "SE",
                                                             "S", "SW", "W", "NW"};
  return kNames[ordinal(dir)];
}

std::optional<CanonicalDirection> parse_direction(std::string_view text) {
  for (auto dir : kAllDirections) {
    if (to_string(dir) == text) return dir;
  }
  return std::nullopt;
}

std::string_view display_name(CanonicalDirection dir) {
  static constexpr std::array<std::string_view, 8> kNames = {
      "front", "right-front", "right", "right-back",
      "back",  "left-back",   "left",  "left-front"};
  return kNames[ordinal(dir)];
}

double compass_degrees(CanonicalDirection dir) { return 45.0 * static_cast<double>(ordinal(dir)); }

Vec2 unit_offset(CanonicalDirection dir) {
  switch (dir) {
    case CanonicalDirection::N: return {0.0, 1.0};
    case CanonicalDirection::NE: return {kDiag, kDiag};
    case CanonicalDirection::E: return {1.0, 0.0};
    case CanonicalDirection::SE: return {kDiag, -kDiag};
    case CanonicalDirection::S: return {0.0, -1.0};
    case CanonicalDirection::SW: return {-kDiag, -kDiag};
    case CanonicalDirection::W: return {-1.0, 0.0};
    case CanonicalDirection::NW: return {-kDiag, kDiag};
  }
  throw std::invalid_argument("unknown direction");
}

CanonicalDirection mirror_left_right(CanonicalDirection dir) {
  return from_ordinal(8 - static_cast<long>(ordinal(dir)));
}

CanonicalDirection mirror_front_back(CanonicalDirection dir) {
  return from_ordinal(4 - static_cast<long>(ordinal(dir)));
}

CanonicalDirection rotate(CanonicalDirection dir, int quarter_turns) {
  return from_ordinal(static_cast<long>(ordinal(dir)) + 2L * quarter_turns);
}

void ListenerConfig::validate() const {
  if (!inside_field(center)) throw ConfigError("listener center outside the field");
  if (!(ear_distance > 0.0) || !(ear_distance < 1.0))
    throw ConfigError("ear_distance must lie in (0, 1) m");
  if (!(speed_of_sound > 0.0)) throw ConfigError("speed_of_sound must be positive");
}

Vec2 ear_offset(Ear ear, const ListenerConfig& listener) {
  const double half = listener.ear_distance / 2.0;
  return {ear == Ear::Left ? -half : half, 0.0};
}

Position ear_position(Ear ear, const ListenerConfig& listener) {
  return listener.center + ear_offset(ear, listener);
}

Vec2 MotionPath::offset_at(double t) const {
  // Symmetric in (start, end) so reversed paths reproduce p(D - t) exactly.
  const double rest = duration - t;
  return {(rest * start.x + t * end.x) / duration, (rest * start.y + t * end.y) / duration};
}

Vec2 MotionPath::velocity() const {
  return {(end.x - start.x) / duration, (end.y - start.y) / duration};
}

double MotionPath::length() const { return norm(end - start); }

MotionPath MotionPath::mirrored() const {
  return {{-start.x, start.y}, {-end.x, end.y}, duration};
}

MotionPath path_between(Position from, Position to, double duration,
                        const ListenerConfig& listener) {
  if (!(duration > 0.0)) throw ConfigError("path duration must be positive");
  return {from - listener.center, to - listener.center, duration};
}

Trajectory Trajectory::mirrored() const {
  return {mirror_left_right(start), mirror_left_right(end), base_duration, speed_factor};
}

std::size_t Trajectory::index() const {
  const std::size_t s = ordinal(start);
  const std::size_t e = ordinal(end);
  if (s == e) throw std::invalid_argument("trajectory start equals end");
  return s * 7 + (e < s ? e : e - 1);
}

std::string Trajectory::id() const {
  return std::string(to_string(start)) + "_" + std::string(to_string(end));
}

MotionPath Trajectory::path(double radius) const {
  return {radius * unit_offset(start), radius * unit_offset(end), duration()};
}

Position canonical_position(CanonicalDirection dir, const ListenerConfig& listener,
                            double radius) {
  if (!(radius > listener.ear_distance / 2.0))
    throw ConfigError("radius must exceed half the ear distance");
  const Position p = listener.center + radius * unit_offset(dir);
  if (!inside_field(p))
    throw ConfigError("canonical position " + std::string(to_string(dir)) +
                      " falls outside the 6 m field");
  return p;
}

std::vector<Trajectory> enumerate_trajectories(double base_duration, double speed_factor) {
  if (!(base_duration > 0.0) || !(speed_factor > 0.0))
    throw ConfigError("duration and speed factor must be positive");
  std::vector<Trajectory> out;
  out.reserve(kTrajectoryCount);
  for (auto s : kAllDirections) {
    for (auto e : kAllDirections) {
      if (s != e) out.push_back({s, e, base_duration, speed_factor});
    }
  }
  return out;
}

Trajectory trajectory_at(std::size_t index) {
  if (index >= kTrajectoryCount) throw std::out_of_range("trajectory index");
  const std::size_t s = index / 7;
  std::size_t e = index % 7;
  if (e >= s) ++e;
  return {static_cast<CanonicalDirection>(s), static_cast<CanonicalDirection>(e)};
}

Position source_position(const Trajectory& traj, double t, const ListenerConfig& listener,
                         double radius) {
  if (!(t >= 0.0 && t <= traj.duration())) throw std::out_of_range("time outside the clip");
  return listener.center + traj.path(radius).offset_at(t);
}

double radial_velocity(const MotionPath& path, double t, Vec2 ear_off) {
  const Vec2 rel = path.offset_at(t) - ear_off;
  const double dist = norm(rel);
  if (dist == 0.0) throw std::domain_error("source coincides with the ear");
  return dot(rel, path.velocity()) / dist;
}

double radial_velocity(const Trajectory& traj, double t, Position ear,
                       const ListenerConfig& listener, double radius) {
  if (!(t >= 0.0 && t <= traj.duration())) throw std::out_of_range("time outside the clip");
  return radial_velocity(traj.path(radius), t, ear - listener.center);
}

}  // namespace motionbench
