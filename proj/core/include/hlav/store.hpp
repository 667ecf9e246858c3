// Copyright 2026 The hlav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "hlav/report.hpp"
#include "hlav/sieve.hpp"

namespace hlav {

// On-disk bitmap layout, all integers little-endian:
//   offset 0   magic    "HLPB"
//   offset 4   version  u32 (= 1)
//   offset 8   limit    u64
//   offset 16  checksum u64, FNV-1a 64 over the payload
//   offset 24  payload  ceil(limit / 8) bytes; integer n lives at byte
//              (n - 1) / 8, bit (n - 1) % 8; the last byte is zero padded.
struct BitmapFileHeader {
  static constexpr std::array<char, 4> kMagic{'H', 'L', 'P', 'B'};
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::size_t kSize = 24;

  std::array<char, 4> magic = kMagic;
  std::uint32_t version = kVersion;
  std::uint64_t limit = 0;
  std::uint64_t checksum = 0;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

// Header followed by payload, exactly as written by save_bitmap.
std::vector<std::uint8_t> encode_bitmap(const PrimeBitmap& pb);
// Throws CorruptMagicError, VersionMismatchError, TruncationError,
// ChecksumMismatchError or FormatError.
PrimeBitmap decode_bitmap(std::span<const std::uint8_t> bytes);

// Writes to a temporary sibling then renames over `path`.
// Throws IoError naming the path.
void save_bitmap(const PrimeBitmap& pb, const std::filesystem::path& path);
PrimeBitmap load_bitmap(const std::filesystem::path& path);

// JSON-lines report cache, one report per line. A missing file reads as empty.
void append_reports(const std::filesystem::path& path,
                    std::span<const VerificationReport> reports);
std::vector<VerificationReport> read_reports(const std::filesystem::path& path);

// --cache-dir, then $HLAV_CACHE_DIR, then $XDG_CACHE_HOME/hlav,
// then $HOME/.cache/hlav, then <temp>/hlav.
std::filesystem::path resolve_cache_dir(
    const std::optional<std::filesystem::path>& flag = std::nullopt);

// <dir>/primes-<limit>.hlpb
std::filesystem::path bitmap_cache_path(const std::filesystem::path& dir,
                                        std::uint64_t limit);

}  // namespace hlav
