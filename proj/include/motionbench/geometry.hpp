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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motionbench {

// Side length of the square sound field in meters.
inline constexpr double kFieldSize = 6.0;

// Planar vector in meters. x points right, y points forward.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 v);

// Absolute coordinates inside the field, [0, 6] x [0, 6].
using Position = Vec2;

bool inside_field(Position p);

enum class CanonicalDirection { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<CanonicalDirection, 8> kAllDirections = {
    CanonicalDirection::N,  CanonicalDirection::NE, CanonicalDirection::E,
    CanonicalDirection::SE, CanonicalDirection::S,  CanonicalDirection::SW,
    CanonicalDirection::W,  CanonicalDirection::NW};

std::string_view to_string(CanonicalDirection dir);
std::optional<CanonicalDirection> parse_direction(std::string_view text);

// "front", "right-front", "left", ...
std::string_view display_name(CanonicalDirection dir);

// Compass angle in degrees, N = 0, E = 90.
double compass_degrees(CanonicalDirection dir);

// Unit vector toward `dir`. Mirror images are exact negations of one another.
Vec2 unit_offset(CanonicalDirection dir);

// Left-right reflection about the listener's forward axis (E<->W, N and S fixed).
CanonicalDirection mirror_left_right(CanonicalDirection dir);
// Front-back reflection (N<->S, E and W fixed).
CanonicalDirection mirror_front_back(CanonicalDirection dir);
// Rotation by `quarter_turns` x 90 degrees clockwise.
CanonicalDirection rotate(CanonicalDirection dir, int quarter_turns);

struct ListenerConfig {
  Position center{3.0, 3.0};
  double ear_distance = 0.18;
  double speed_of_sound = 343.0;

  void validate() const;
};

enum class Ear { Left, Right };

// Ear offset relative to the listener center.
Vec2 ear_offset(Ear ear, const ListenerConfig& listener);
Position ear_position(Ear ear, const ListenerConfig& listener);

// Straight-line motion in listener-relative coordinates. start == end is a
// static source. Offsets extrapolate linearly outside [0, duration].
struct MotionPath {
  Vec2 start;
  Vec2 end;
  double duration = 0.0;

  Vec2 offset_at(double t) const;
  Vec2 velocity() const;
  double length() const;
  MotionPath reversed() const { return {end, start, duration}; }
  MotionPath mirrored() const;
};

MotionPath path_between(Position from, Position to, double duration,
                        const ListenerConfig& listener);

inline constexpr double kDefaultRadius = 2.5;
inline constexpr double kDefaultBaseDuration = 6.0;

struct Trajectory {
  CanonicalDirection start = CanonicalDirection::N;
  CanonicalDirection end = CanonicalDirection::S;
  double base_duration = kDefaultBaseDuration;
  double speed_factor = 1.0;

  double duration() const { return base_duration / speed_factor; }
  Trajectory reversed() const { return {end, start, base_duration, speed_factor}; }
  Trajectory mirrored() const;
  // Index in enumerate_trajectories() order, 0..55.
  std::size_t index() const;
  std::string id() const;  // "W_E"

  MotionPath path(double radius) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.start == b.start && a.end == b.end;
  }
};

inline constexpr std::size_t kTrajectoryCount = 56;

Position canonical_position(CanonicalDirection dir, const ListenerConfig& listener,
                            double radius);

// All ordered pairs (start, end), start != end, row-major over the direction
// enum: N->NE, N->E, ..., N->NW, NE->N, ...
std::vector<Trajectory> enumerate_trajectories(double base_duration = kDefaultBaseDuration,
                                               double speed_factor = 1.0);

Trajectory trajectory_at(std::size_t index);

Position source_position(const Trajectory& traj, double t, const ListenerConfig& listener,
                         double radius);

// d/dt |p(t) - ear|, positive when receding.
double radial_velocity(const Trajectory& traj, double t, Position ear,
                       const ListenerConfig& listener, double radius);
double radial_velocity(const MotionPath& path, double t, Vec2 ear_offset);

}  // namespace motionbench
