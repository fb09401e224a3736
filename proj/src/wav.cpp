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

#include "motionbench/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace motionbench {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

std::int16_t to_pcm16(double x) {
  return static_cast<std::int16_t>(std::round(std::clamp(x, -1.0, 1.0) * 32767.0));
}

}  // namespace

std::vector<std::uint8_t> encode_wav(const BinauralClip& clip) {
  if (clip.left.size() != clip.right.size()) throw std::invalid_argument("channel lengths differ");
  constexpr std::uint16_t kChannels = 2;
  constexpr std::uint16_t kBits = 16;
  const auto rate = static_cast<std::uint32_t>(std::llround(clip.sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(clip.size() * kChannels * (kBits / 8));

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, kChannels);
  put_u32(out, rate);
  put_u32(out, rate * kChannels * (kBits / 8));
  put_u16(out, kChannels * (kBits / 8));
  put_u16(out, kBits);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (std::size_t n = 0; n < clip.size(); ++n) {
    put_u16(out, static_cast<std::uint16_t>(to_pcm16(clip.left[n])));
    put_u16(out, static_cast<std::uint16_t>(to_pcm16(clip.right[n])));
  }
  return out;
}

BinauralClip decode_wav(std::span<const std::uint8_t> b) {
  if (b.size() < 12 || !tag_is(b, 0, "RIFF") || !tag_is(b, 8, "WAVE"))
    throw std::runtime_error("not a RIFF/WAVE file");
  std::size_t at = 12;
  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  while (at + 8 <= b.size()) {
    const std::uint32_t size = get_u32(b, at + 4);
    const std::size_t body = at + 8;
    if (body + size > b.size()) throw std::runtime_error("truncated WAV chunk");
    if (tag_is(b, at, "fmt ")) {
      if (size < 16) throw std::runtime_error("short fmt chunk");
      if (get_u16(b, body) != 1) throw std::runtime_error("WAV is not integer PCM");
      channels = get_u16(b, body + 2);
      rate = get_u32(b, body + 4);
      bits = get_u16(b, body + 14);
      have_fmt = true;
    } else if (tag_is(b, at, "data")) {
      if (!have_fmt) throw std::runtime_error("data chunk before fmt chunk");
      if (channels != 2 || bits != 16)
        throw std::runtime_error("expected 2-channel 16-bit PCM, got " + std::to_string(channels) +
                                 " channels at " + std::to_string(bits) + " bits");
      if (size % 4 != 0) throw std::runtime_error("data chunk is not frame aligned");
      BinauralClip clip;
      clip.sample_rate = rate;
      const std::size_t frames = size / 4;
      clip.left.resize(frames);
      clip.right.resize(frames);
      for (std::size_t n = 0; n < frames; ++n) {
        clip.left[n] = static_cast<std::int16_t>(get_u16(b, body + 4 * n)) / 32767.0;
        clip.right[n] = static_cast<std::int16_t>(get_u16(b, body + 4 * n + 2)) / 32767.0;
      }
      return clip;
    }
    at = body + size + (size & 1);
  }
  throw std::runtime_error("WAV has no data chunk");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

BinauralClip read_wav(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_wav(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_wav(const std::filesystem::path& path, const BinauralClip& clip) {
  write_file(path, encode_wav(clip));
}

}  // namespace motionbench
