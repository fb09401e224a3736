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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "motionbench/analysis.hpp"
#include "motionbench/render.hpp"
#include "motionbench/signal.hpp"
#include "motionbench/variant.hpp"

using namespace motionbench;
using D = CanonicalDirection;

namespace {

constexpr double kFs = 44100.0;

SourceSignal sine(double seconds, double freq = 440.0) {
  SourceSignal s;
  s.sample_rate = kFs;
  s.samples.resize(sample_count(seconds, kFs));
  for (std::size_t n = 0; n < s.samples.size(); ++n)
    s.samples[n] = std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(n) / kFs);
  return s;
}

SampleBuffer white_noise(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 0.1);
  SampleBuffer out(n);
  for (auto& x : out) x = dist(gen);
  return out;
}

// Retarded time by fixed-point iteration, independent of the closed form.
double iterate_delay(const MotionPath& path, double t, Vec2 ear, double c) {
  double u = norm(path.offset_at(t) - ear) / c;
  for (int i = 0; i < 100; ++i) u = norm(path.offset_at(t - u) - ear) / c;
  return u;
}

// Mean frequency over each window from interpolated rising zero crossings.
std::vector<double> windowed_frequency(const SampleBuffer& x, std::size_t window) {
  std::vector<double> crossings;
  for (std::size_t n = 0; n + 1 < x.size(); ++n) {
    if (x[n] < 0.0 && x[n + 1] >= 0.0)
      crossings.push_back((static_cast<double>(n) + x[n] / (x[n] - x[n + 1])) / kFs);
  }
  std::vector<double> out;
  const double span = static_cast<double>(window) / kFs;
  for (double start = 0.0; start + span <= static_cast<double>(x.size()) / kFs; start += span) {
    std::vector<double> in;
    for (double c : crossings)
      if (c >= start && c < start + span) in.push_back(c);
    out.push_back(in.size() > 2 ? static_cast<double>(in.size() - 1) / (in.back() - in.front()) : 0.0);
  }
  return out;
}

}  // namespace

TEST_CASE("propagation delay and ITD") {
  const ListenerConfig listener;
  const Position src{5.5, 3.0};
  const double right = propagation_delay(src, ear_position(Ear::Right, listener), 343.0);
  const double left = propagation_delay(src, ear_position(Ear::Left, listener), 343.0);
  CHECK(right == doctest::Approx(2.41 / 343.0).epsilon(1e-12));
  CHECK(right * 1e3 == doctest::Approx(7.0262).epsilon(1e-5));
  CHECK(left - right == doctest::Approx(0.18 / 343.0).epsilon(1e-9));
  const Position front{3.0, 4.7};
  CHECK(propagation_delay(front, ear_position(Ear::Left, listener), 343.0) ==
        propagation_delay(front, ear_position(Ear::Right, listener), 343.0));
}

TEST_CASE("distance gain and ILD") {
  const RenderConfig config;
  const ListenerConfig& listener = config.listener;
  CHECK(distance_gain(2.5, config) == 1.0);
  const Position src{5.5, 3.0};
  const double ild = 20.0 * std::log10(distance_gain(src, ear_position(Ear::Right, listener), config) /
                                       distance_gain(src, ear_position(Ear::Left, listener), config));
  CHECK(ild == doctest::Approx(20.0 * std::log10(2.59 / 2.41)).epsilon(1e-12));
  CHECK(ild == doctest::Approx(0.625).epsilon(1e-3));
  CHECK(distance_gain(0.05, config) == doctest::Approx(2.5 / 0.2));
  CHECK(distance_gain(0.0, config) == doctest::Approx(2.5 / 0.2));
}

TEST_CASE("closed-form arrival delay agrees with fixed-point iteration") {
  const RenderConfig config;
  for (const auto& traj : enumerate_trajectories()) {
    const auto path = traj.path(2.5);
    for (auto ear : {Ear::Left, Ear::Right}) {
      const Vec2 off = ear_offset(ear, config.listener);
      for (double t : {0.0, 0.7, 2.9, 4.4, 6.0}) {
        CHECK(arrival_delay(path, t, off, 343.0) ==
              doctest::Approx(iterate_delay(path, t, off, 343.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("static source renders as a delayed, scaled copy") {
  RenderConfig config;
  config.direction_filter = false;
  SourceSignal s;
  s.sample_rate = kFs;
  s.samples = white_noise(sample_count(0.5, kFs), 11);
  const MotionPath still{{2.5, 0.0}, {2.5, 0.0}, 0.5};
  const auto left = render_ear(s, still, Ear::Left, config);
  const auto right = render_ear(s, still, Ear::Right, config);
  const double tau_r = 2.41 / 343.0 * kFs;
  CHECK(xcorr_lag(right, s.samples, 400) == std::lround(tau_r));
  CHECK(static_cast<double>(xcorr_lag(left, right, 30)) == doctest::Approx(0.18 / 343.0 * kFs).epsilon(1.0 / 23.0));
  // Before the wavefront arrives the ear hears nothing.
  for (std::size_t n = 0; n + 2 < static_cast<std::size_t>(tau_r); ++n) CHECK(right[n] == 0.0);
  // Level check on a tone well inside the interpolator's flat band.
  const auto tone = sine(0.5, 300.0);
  const auto tone_right = render_ear(tone, still, Ear::Right, config);
  CHECK(rms(std::span(tone_right).subspan(1000)) / rms(std::span(tone.samples).subspan(1000)) ==
        doctest::Approx(2.5 / 2.41).epsilon(1e-3));
}

TEST_CASE("Doppler shift for head-on approach and recession") {
  RenderConfig config;
  config.direction_filter = false;
  const auto s = sine(1.0);
  const MotionPath approach{{0.09 + 3.0, 0.0}, {0.09 + 1.0, 0.0}, 1.0};
  const auto in = render_ear(s, approach, Ear::Right, config);
  const auto out = render_ear(s, approach.reversed(), Ear::Right, config);
  CHECK(peak_frequency(in, kFs, 400.0, 480.0) == doctest::Approx(440.0 * 343.0 / 341.0).epsilon(0.005));
  CHECK(peak_frequency(out, kFs, 400.0, 480.0) == doctest::Approx(440.0 * 343.0 / 345.0).epsilon(0.005));
}

TEST_CASE("direction cutoff") {
  const RenderConfig config;
  CHECK(direction_cutoff(0.0, config) == 8000.0);
  CHECK(direction_cutoff(std::numbers::pi, config) == 2000.0);
  CHECK(direction_cutoff(std::numbers::pi / 2, config) == doctest::Approx(5000.0).epsilon(1e-12));
  CHECK(direction_cutoff(-std::numbers::pi / 2, config) == doctest::Approx(5000.0).epsilon(1e-12));
}

TEST_CASE("rear probe loses high band energy") {
  const RenderConfig config;
  const auto probe = white_noise(44096, 3);
  const std::size_t blocks = probe.size() / config.block_size;
  const auto front = apply_direction_filter(probe, std::vector<double>(blocks, 0.0), config);
  const auto rear = apply_direction_filter(probe, std::vector<double>(blocks, std::numbers::pi), config);
  const double drop = 10.0 * std::log10(band_energy(front, kFs, 3000.0, 8000.0) / band_energy(rear, kFs, 3000.0, 8000.0));
  CHECK(drop >= 6.0);
  const double at4k = 10.0 * std::log10(band_energy(front, kFs, 3900.0, 4100.0) / band_energy(rear, kFs, 3900.0, 4100.0));
  CHECK(at4k >= 6.0);
  CHECK(band_energy(front, kFs, 0.0, 2000.0) / band_energy(probe, kFs, 0.0, 2000.0) >= 0.9);
  CHECK_THROWS(apply_direction_filter(probe, std::vector<double>(blocks + 1, 0.0), config));
}

TEST_CASE("cutoff at or above Nyquist passes the input through") {
  RenderConfig config;
  config.front_cutoff = 30000.0;
  config.rear_cutoff = 25000.0;
  const auto probe = white_noise(6400, 5);
  const auto out = apply_direction_filter(probe, std::vector<double>(100, 1.0), config);
  CHECK(out == probe);
}

TEST_CASE("noise injection") {
  RenderConfig config;
  BinauralClip clip;
  clip.left.assign(441000, 0.0);
  clip.right.assign(441000, 0.0);
  for (std::size_t n = 0; n < clip.size(); ++n) clip.left[n] = clip.right[n] = n % 2 ? 0.2 : -0.2;
  CHECK(joint_rms(clip) == doctest::Approx(0.2));

  const auto clean = add_noise(clip, NoiseCondition::Clean, 1, config);
  CHECK(clean.left == clip.left);
  CHECK(clean.right == clip.right);

  const auto noisy = add_noise(clip, NoiseCondition::SNR25, 1, config);
  const double sigma = 0.2 / std::pow(10.0, 25.0 / 20.0);
  CHECK(sigma == doctest::Approx(0.011247).epsilon(1e-4));
  BinauralClip residual = noisy;
  for (std::size_t n = 0; n < clip.size(); ++n) {
    residual.left[n] -= clip.left[n];
    residual.right[n] -= clip.right[n];
  }
  CHECK(joint_rms(residual) == doctest::Approx(sigma).epsilon(0.01));
  CHECK(measure_snr(clip, noisy) == doctest::Approx(25.0).epsilon(0.02));
  const auto again = add_noise(clip, NoiseCondition::SNR25, 1, config);
  CHECK(again.left == noisy.left);
  CHECK(add_noise(clip, NoiseCondition::SNR25, 2, config).left != noisy.left);

  BinauralClip silent{SampleBuffer(100, 0.0), SampleBuffer(100, 0.0), kFs};
  CHECK_THROWS_AS(add_noise(silent, NoiseCondition::SNR15, 1, config), std::invalid_argument);
  CHECK_NOTHROW(add_noise(silent, NoiseCondition::Clean, 1, config));
}

TEST_CASE("measure_snr") {
  const RenderConfig config;
  const auto source = build_source(TaskVariant::fixed_pitch(), 9, 7, SynthConfig{});
  const auto clip = render_clip(source, trajectory_at(9).path(2.5), config);
  CHECK(std::isinf(measure_snr(clip, clip)));
  CHECK(measure_snr(clip, clip) > 0.0);
  const auto noisy = add_noise(clip, NoiseCondition::SNR15, 4, config);
  CHECK(std::abs(measure_snr(clip, noisy) - 15.0) <= 0.5);
  for (std::size_t n = 0; n < clip.size(); ++n) {
    CHECK(std::abs(noisy.left[n]) <= config.limiter_peak);
    CHECK(std::abs(noisy.right[n]) <= config.limiter_peak);
  }

  BinauralClip once = clip, twice = clip;
  const auto noise = white_noise(clip.size() * 2, 8);
  for (std::size_t n = 0; n < clip.size(); ++n) {
    once.left[n] += noise[n];
    once.right[n] += noise[clip.size() + n];
    twice.left[n] += 2.0 * noise[n];
    twice.right[n] += 2.0 * noise[clip.size() + n];
  }
  CHECK(measure_snr(clip, once) - measure_snr(clip, twice) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("clean clips are peak-normalized") {
  const RenderConfig config;
  const auto source = build_source(TaskVariant::fixed_pitch(), 20, 7, SynthConfig{});
  const auto clip = render_clip(source, trajectory_at(20).path(2.5), config);
  double peak = 0.0;
  for (std::size_t n = 0; n < clip.size(); ++n) peak = std::max({peak, std::abs(clip.left[n]), std::abs(clip.right[n])});
  CHECK(peak == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(clip.left.size() == clip.right.size());
}

TEST_CASE("mirrored trajectory renders as the channel swap") {
  const RenderConfig config;
  for (std::size_t i : {0u, 9u, 30u, 47u}) {
    const auto traj = trajectory_at(i);
    const auto source = build_source(TaskVariant::variable_pitch(), i, 7, SynthConfig{});
    const auto a = render_clip(source, traj.path(2.5), config);
    const auto b = render_clip(source, traj.mirrored().path(2.5), config);
    CHECK(b.left == a.right);
    CHECK(b.right == a.left);
  }
}

TEST_CASE("ITD sign follows the side of the source") {
  const RenderConfig config;
  const long max_lag = 25;
  const std::size_t frame = sample_count(0.05, kFs);

  const Trajectory right_side{D::NE, D::SE};
  auto clip = render_clip(build_source(TaskVariant::fixed_pitch(), right_side.index(), 7, SynthConfig{}),
                          right_side.path(2.5), config);
  auto lags = frame_lags(clip.left, clip.right, frame, max_lag);
  const auto positive = std::count_if(lags.begin(), lags.end(), [](long l) { return l > 0; });
  CHECK(static_cast<double>(positive) >= 0.95 * static_cast<double>(lags.size()));

  const Trajectory crossing{D::W, D::E};
  clip = render_clip(build_source(TaskVariant::fixed_pitch(), crossing.index(), 7, SynthConfig{}),
                     crossing.path(2.5), config);
  lags = frame_lags(clip.left, clip.right, frame, max_lag);
  const std::size_t q = lags.size() / 4;
  for (std::size_t k = 0; k < q; ++k) CHECK(lags[k] < 0);
  for (std::size_t k = lags.size() - q; k < lags.size(); ++k) CHECK(lags[k] > 0);
}

TEST_CASE("per-frame level tracks inverse distance on an approach") {
  RenderConfig config;
  config.direction_filter = false;
  const double seconds = 2.0;
  const MotionPath path{{2.0, 2.0}, {0.3, 0.3}, seconds};
  const auto clip = render_clip(sine(seconds), path, config);
  const std::size_t frame = sample_count(0.05, kFs);
  for (auto ear : {Ear::Left, Ear::Right}) {
    const auto& x = ear == Ear::Left ? clip.left : clip.right;
    const auto levels = frame_rms(x, frame);
    std::vector<double> scaled;
    for (std::size_t k = 1; k < levels.size(); ++k) {
      CHECK(levels[k] > levels[k - 1]);
      const double t_mid = (static_cast<double>(k) + 0.5) * 0.05;
      scaled.push_back(levels[k] * norm(path.offset_at(t_mid) - ear_offset(ear, config.listener)));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi / *lo < 1.03);
  }
}

TEST_CASE("frequency deviation changes sign at closest approach") {
  RenderConfig config;
  config.direction_filter = false;
  const Trajectory front{D::NW, D::NE};
  const auto path = front.path(2.5);
  const auto x = render_ear(sine(6.0), path, Ear::Left, config);
  const std::size_t window = sample_count(0.1, kFs);
  const auto freq = windowed_frequency(x, window);

  const double half = 2.5 / std::sqrt(2.0);
  const double t_close = (half - 0.09) / (2.0 * half) * 6.0;
  const double heard = t_close + norm(path.offset_at(t_close) - ear_offset(Ear::Left, config.listener)) / 343.0;

  std::vector<double> crossings;
  for (std::size_t k = 1; k + 1 < freq.size(); ++k) {
    const double a = freq[k - 1] - 440.0, b = freq[k] - 440.0;
    if (freq[k - 1] > 0.0 && a > 0.0 && b <= 0.0) {
      const double ta = (static_cast<double>(k - 1) + 0.5) * 0.1;
      crossings.push_back(ta + 0.1 * a / (a - b));
    }
  }
  REQUIRE(crossings.size() == 1);
  CHECK(std::abs(crossings.front() - heard) < 0.1);
  CHECK(freq[5] > 440.0);
  CHECK(freq[freq.size() - 5] < 440.0);
}
