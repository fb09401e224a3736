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

#include "motionbench/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace motionbench {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanFree {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

}  // namespace

double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

PowerSpectrum power_spectrum(std::span<const double> x, double sample_rate, bool hann,
                             std::size_t fft_size) {
  if (x.empty()) throw std::invalid_argument("empty input");
  const std::size_t n = fft_size == 0 ? x.size() : fft_size;
  if (n < x.size()) throw std::invalid_argument("fft_size shorter than input");
  const std::size_t bins = n / 2 + 1;

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));
  std::unique_ptr<fftw_plan_s, PlanFree> plan(
      fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));

  const double denom = static_cast<double>(x.size() > 1 ? x.size() - 1 : 1);
  for (std::size_t i = 0; i < n; ++i) {
    double v = i < x.size() ? x[i] : 0.0;
    if (hann && i < x.size())
      v *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom));
    in.get()[i] = v;
  }
  fftw_execute(plan.get());

  PowerSpectrum spec;
  spec.bin_hz = sample_rate / static_cast<double>(n);
  spec.power.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    spec.power[k] = re * re + im * im;
  }
  return spec;
}

double peak_frequency(std::span<const double> x, double sample_rate, double f_lo, double f_hi,
                      std::size_t pad_factor) {
  std::size_t n = 1;
  while (n < x.size() * pad_factor) n <<= 1;
  const auto spec = power_spectrum(x, sample_rate, true, n);
  const auto lo = static_cast<std::size_t>(std::max(1.0, std::floor(f_lo / spec.bin_hz)));
  const auto hi = std::min(spec.power.size() - 2, static_cast<std::size_t>(std::ceil(f_hi / spec.bin_hz)));
  if (lo > hi) throw std::invalid_argument("empty search band");
  std::size_t best = lo;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (spec.power[k] > spec.power[best]) best = k;
  }
  const double floor_power = 1e-300;
  const double l = std::log(std::max(spec.power[best - 1], floor_power));
  const double c = std::log(std::max(spec.power[best], floor_power));
  const double r = std::log(std::max(spec.power[best + 1], floor_power));
  const double curvature = l - 2.0 * c + r;
  const double shift = curvature != 0.0 ? 0.5 * (l - r) / curvature : 0.0;
  return (static_cast<double>(best) + shift) * spec.bin_hz;
}

double band_energy(std::span<const double> x, double sample_rate, double f_lo, double f_hi) {
  const auto spec = power_spectrum(x, sample_rate, false);
  double acc = 0.0;
  for (std::size_t k = 0; k < spec.power.size(); ++k) {
    const double f = static_cast<double>(k) * spec.bin_hz;
    if (f >= f_lo && f < f_hi) acc += spec.power[k];
  }
  return acc;
}

long xcorr_lag(std::span<const double> a, std::span<const double> b, long max_lag) {
  const auto n = static_cast<long>(std::min(a.size(), b.size()));
  long best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (long lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    const long start = std::max(0L, lag);
    const long stop = std::min(n, n + lag);
    for (long i = start; i < stop; ++i)
      acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i - lag)];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

std::vector<double> frame_rms(std::span<const double> x, std::size_t frame) {
  std::vector<double> out;
  for (std::size_t at = 0; at + frame <= x.size(); at += frame) out.push_back(rms(x.subspan(at, frame)));
  return out;
}

std::vector<long> frame_lags(std::span<const double> a, std::span<const double> b,
                             std::size_t frame, long max_lag) {
  std::vector<long> out;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t at = 0; at + frame <= n; at += frame) {
    const auto fa = a.subspan(at, frame);
    const auto fb = b.subspan(at, frame);
    out.push_back(rms(fa) > 0.0 && rms(fb) > 0.0 ? xcorr_lag(fa, fb, max_lag) : 0);
  }
  return out;
}

}  // namespace motionbench
