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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "motionbench/render.hpp"

namespace motionbench {

// RIFF/WAVE, 2 channels, 16-bit PCM little-endian. Samples are clamped to
// [-1, 1] and scaled by 32767 with round-half-away-from-zero; no dither.
std::vector<std::uint8_t> encode_wav(const BinauralClip& clip);

void write_wav(const std::filesystem::path& path, const BinauralClip& clip);

// Parses 16-bit PCM stereo. Throws std::runtime_error on anything else.
BinauralClip decode_wav(std::span<const std::uint8_t> bytes);
BinauralClip read_wav(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace motionbench
