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
#include <span>
#include <vector>

namespace motionbench {

// Measurement helpers shared by `inspect` and the test suites.

double rms(std::span<const double> x);

struct PowerSpectrum {
  double bin_hz = 0.0;
  std::vector<double> power;  // |X[k]|^2 for k = 0 .. fft_size / 2
};

// Periodogram of x, optionally Hann-windowed and zero-padded to fft_size
// (0 selects x.size()).
PowerSpectrum power_spectrum(std::span<const double> x, double sample_rate, bool hann = true,
                             std::size_t fft_size = 0);

// Frequency of the strongest bin in [f_lo, f_hi], refined by a parabola
// through the log power of its neighbours.
double peak_frequency(std::span<const double> x, double sample_rate, double f_lo, double f_hi,
                      std::size_t pad_factor = 8);

// Summed periodogram power (rectangular window) in [f_lo, f_hi).
double band_energy(std::span<const double> x, double sample_rate, double f_lo, double f_hi);

// Lag in [-max_lag, max_lag] maximising sum_n a[n] * b[n - lag]. Positive
// means `a` trails `b`.
long xcorr_lag(std::span<const double> a, std::span<const double> b, long max_lag);

std::vector<double> frame_rms(std::span<const double> x, std::size_t frame);

// xcorr_lag per non-overlapping frame; frames where either side is silent get 0.
std::vector<long> frame_lags(std::span<const double> a, std::span<const double> b,
                             std::size_t frame, long max_lag);

}  // namespace motionbench
