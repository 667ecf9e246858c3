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

#include "hlav/store.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "hlav/error.hpp"

namespace hlav {
namespace fs = std::filesystem;
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[at + i]} << (8 * i);
  return v;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path temp_sibling(const fs::path& path) {
  std::random_device rd;
  const auto tag = (std::uint64_t{rd()} << 32) | rd();
  return path.string() + ".tmp-" + std::to_string(tag);
}

void write_atomically(const fs::path& path, std::span<const char> bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + quoted(path.parent_path()) +
                    ": " + ec.message());
    }
  }
  const fs::path tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + quoted(tmp) + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failed for " + quoted(tmp));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + quoted(tmp) + " to " + quoted(path) + ": " +
                  ec.message());
  }
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + quoted(path) + " for reading");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + quoted(path));
  return data;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint8_t> encode_bitmap(const PrimeBitmap& pb) {
  const std::size_t payload = pb.payload_bytes();
  std::vector<std::uint8_t> bytes;
  bytes.reserve(BitmapFileHeader::kSize + payload);
  for (const char c : BitmapFileHeader::kMagic) bytes.push_back(static_cast<std::uint8_t>(c));
  put_le(bytes, BitmapFileHeader::kVersion, 4);
  put_le(bytes, pb.limit(), 8);
  put_le(bytes, 0, 8);  // checksum, patched below

  const auto words = pb.words();
  for (std::size_t i = 0; i < payload; ++i) {
    bytes.push_back(static_cast<std::uint8_t>(words[i / 8] >> (8 * (i % 8))));
  }
  const std::uint64_t sum =
      fnv1a64(std::span(bytes).subspan(BitmapFileHeader::kSize));
  for (int i = 0; i < 8; ++i) bytes[16 + i] = static_cast<std::uint8_t>(sum >> (8 * i));
  return bytes;
}

PrimeBitmap decode_bitmap(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < BitmapFileHeader::kMagic.size()) {
    throw TruncationError("bitmap file shorter than its magic");
  }
  for (std::size_t i = 0; i < BitmapFileHeader::kMagic.size(); ++i) {
    if (bytes[i] != static_cast<std::uint8_t>(BitmapFileHeader::kMagic[i])) {
      throw CorruptMagicError("bitmap file magic is not HLPB");
    }
  }
  if (bytes.size() < BitmapFileHeader::kSize) {
    throw TruncationError("bitmap file header truncated");
  }
  const auto version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  if (version != BitmapFileHeader::kVersion) {
    throw VersionMismatchError("bitmap file version " + std::to_string(version) +
                               " is not supported");
  }
  const std::uint64_t limit = get_le(bytes, 8, 8);
  const std::uint64_t checksum = get_le(bytes, 16, 8);
  if (limit == 0) throw FormatError("bitmap file limit is zero");
  const std::uint64_t payload = (limit + 7) / 8;
  const std::uint64_t have = bytes.size() - BitmapFileHeader::kSize;
  if (have < payload) {
    throw TruncationError("bitmap payload truncated: expected " +
                          std::to_string(payload) + " bytes, found " +
                          std::to_string(have));
  }
  if (have > payload) {
    throw FormatError("bitmap file has " + std::to_string(have - payload) +
                      " trailing bytes");
  }
  const auto body = bytes.subspan(BitmapFileHeader::kSize);
  if (fnv1a64(body) != checksum) {
    throw ChecksumMismatchError("bitmap payload checksum mismatch");
  }
  std::vector<std::uint64_t> words((payload + 7) / 8, 0);
  for (std::size_t i = 0; i < body.size(); ++i) {
    words[i / 8] |= std::uint64_t{body[i]} << (8 * (i % 8));
  }
  return PrimeBitmap::from_words(limit, std::move(words));
}

void save_bitmap(const PrimeBitmap& pb, const fs::path& path) {
  const auto bytes = encode_bitmap(pb);
  write_atomically(path, std::span(reinterpret_cast<const char*>(bytes.data()),
                                   bytes.size()));
}

PrimeBitmap load_bitmap(const fs::path& path) {
  const std::string data = read_all(path);
  try {
    return decode_bitmap(std::span(
        reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
  } catch (const FormatError& e) {
    // Re-throw the same class with the path attached.
    const std::string msg = quoted(path) + ": " + e.what();
    if (dynamic_cast<const CorruptMagicError*>(&e)) throw CorruptMagicError(msg);
    if (dynamic_cast<const VersionMismatchError*>(&e)) throw VersionMismatchError(msg);
    if (dynamic_cast<const TruncationError*>(&e)) throw TruncationError(msg);
    if (dynamic_cast<const ChecksumMismatchError*>(&e)) throw ChecksumMismatchError(msg);
    throw FormatError(msg);
  }
}

void append_reports(const fs::path& path,
                    std::span<const VerificationReport> reports) {
  std::string data;
  if (fs::exists(path)) {
    data = read_all(path);
    if (!data.empty() && data.back() != '\n') data += '\n';
  }
  for (const auto& r : reports) {
    data += to_json_line(r);
    data += '\n';
  }
  write_atomically(path, std::span(data.data(), data.size()));
}

std::vector<VerificationReport> read_reports(const fs::path& path) {
  if (!fs::exists(path)) return {};
  std::istringstream in(read_all(path));
  std::vector<VerificationReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_json_line(line));
  }
  return out;
}

fs::path resolve_cache_dir(const std::optional<fs::path>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("HLAV_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return fs::path(xdg) / "hlav";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "hlav";
  }
  return fs::temp_directory_path() / "hlav";
}

fs::path bitmap_cache_path(const fs::path& dir, std::uint64_t limit) {
  return dir / ("primes-" + std::to_string(limit) + ".hlpb");
}

}  // namespace hlav
