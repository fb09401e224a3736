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

#include "motionbench/inspect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "motionbench/analysis.hpp"
#include "motionbench/signal.hpp"

namespace motionbench {

ClipDiagnostics diagnose_clip(const BinauralClip& clip, const BinauralClip* clean_reference,
                              double frame_seconds, const ListenerConfig& listener) {
  ClipDiagnostics d;
  d.sample_rate = clip.sample_rate;
  d.frame_samples = std::max<std::size_t>(1, sample_count(frame_seconds, clip.sample_rate));
  d.rms_left = frame_rms(clip.left, d.frame_samples);
  d.rms_right = frame_rms(clip.right, d.frame_samples);
  const long max_lag =
      static_cast<long>(std::ceil(listener.ear_distance / listener.speed_of_sound * clip.sample_rate)) + 2;
  for (long lag : frame_lags(clip.left, clip.right, d.frame_samples, max_lag))
    d.itd_us.push_back(1e6 * static_cast<double>(lag) / clip.sample_rate);
  if (clean_reference) d.snr_db = measure_snr(*clean_reference, clip);
  return d;
}

std::optional<std::filesystem::path> clean_reference_for(const std::filesystem::path& clip) {
  const auto noise_dir = clip.parent_path();
  if (!parse_noise(noise_dir.filename().string())) return std::nullopt;
  return noise_dir.parent_path() / std::string(to_string(NoiseCondition::Clean)) / clip.filename();
}

namespace {

std::string envelope_path(const std::vector<double>& env, double x0, double width, double mid,
                          double half_height, double scale) {
  std::ostringstream p;
  const std::size_t n = env.size();
  auto x_at = [&](std::size_t i) {
    return x0 + width * (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
  };
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%s%.1f,%.1f ", i ? "L" : "M", x_at(i), mid - half_height * env[i] * scale);
    p << buf;
  }
  for (std::size_t i = n; i-- > 0;) {
    std::snprintf(buf, sizeof buf, "L%.1f,%.1f ", x_at(i), mid + half_height * env[i] * scale);
    p << buf;
  }
  p << "Z";
  return p.str();
}

}  // namespace

std::string envelope_svg(const ClipDiagnostics& d, const std::string& title) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 420.0;
  constexpr double kMargin = 50.0;
  const double plot_w = kWidth - 2 * kMargin;
  const double panel_h = (kHeight - 2 * kMargin) / 2.0;
  double peak = 0.0;
  for (double v : d.rms_left) peak = std::max(peak, v);
  for (double v : d.rms_right) peak = std::max(peak, v);
  const double scale = peak > 0.0 ? 0.9 / peak : 0.0;
  const double seconds = static_cast<double>(d.rms_left.size()) * d.frame_seconds();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";
  const struct {
    const char* name;
    const std::vector<double>* env;
    const char* color;
  } panels[] = {{"left", &d.rms_left, "#1f77b4"}, {"right", &d.rms_right, "#d62728"}};
  for (int i = 0; i < 2; ++i) {
    const double top = kMargin + i * panel_h;
    const double mid = top + panel_h / 2.0;
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << mid << "\" x2=\"" << kMargin + plot_w << "\" y2=\""
        << mid << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
    svg << "<path id=\"" << panels[i].name << "\" d=\""
        << envelope_path(*panels[i].env, kMargin, plot_w, mid, panel_h / 2.0, scale) << "\" fill=\""
        << panels[i].color << "\" fill-opacity=\"0.6\" stroke=\"" << panels[i].color << "\"/>\n";
    svg << "<text x=\"8\" y=\"" << mid + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << panels[i].name << "</text>\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", seconds);
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 15 << "\" font-family=\"sans-serif\" font-size=\"12\">0 s</text>\n";
  svg << "<text x=\"" << kMargin + plot_w - 40 << "\" y=\"" << kHeight - 15
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << buf << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string diagnostics_text(const ClipDiagnostics& d) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "frames: %zu x %.1f ms\n", d.rms_left.size(), 1e3 * d.frame_seconds());
  out << buf;
  if (!d.snr_db) {
    out << "measured SNR: n/a (no clean reference)\n";
  } else if (std::isinf(*d.snr_db)) {
    out << "measured SNR: inf\n";
  } else {
    std::snprintf(buf, sizeof buf, "measured SNR: %.2f dB\n", *d.snr_db);
    out << buf;
  }
  out << "time_s\trms_left\trms_right\titd_us\n";
  for (std::size_t i = 0; i < d.rms_left.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.3f\t%.6f\t%.6f\t%.1f\n",
                  static_cast<double>(i) * d.frame_seconds(), d.rms_left[i], d.rms_right[i],
                  i < d.itd_us.size() ? d.itd_us[i] : 0.0);
    out << buf;
  }
  return out.str();
}

}  // namespace motionbench
