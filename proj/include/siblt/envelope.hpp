/*
 *   Copyright 2026 The siblt Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "siblt/layout.hpp"
#include "siblt/stacked.hpp"

namespace siblt {

// Wire format, all integers little-endian:
//
//   off  size  field
//     0     4  magic "SIBT"
//     4     4  format version (1)
//     8     8  n
//    16     8  delta (IEEE-754 binary64 bits)
//    24     8  C
//    32     8  C0
//    40     4  k
//    44     1  mode (0 plain, 1 checksum)
//    45     1  regime flags (bit 0 below provable regime, bit 1 q bound met)
//    46     2  reserved, zero
//    48     8  p
//    56    16  q (low word first)
//    72     8  master seed
//    80     8  layout digest
//    88     8  total cell count
//    96        cells of every table in order, row-major:
//              key_sum u64, value_sum u64, count i64, [hash_sum u128]
inline constexpr std::uint32_t kEnvelopeMagic = 0x54424953;  // "SIBT"
inline constexpr std::uint32_t kEnvelopeVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 96;

inline constexpr std::size_t cell_wire_size(Mode mode) noexcept {
  return mode == Mode::checksum ? 40 : 24;
}

inline std::size_t envelope_size(const LayoutPlan& layout, Mode mode) noexcept {
  return kEnvelopeHeaderSize + layout.total_cells() * cell_wire_size(mode);
}

class EnvelopeError : public std::runtime_error {
 public:
  enum class Code { bad_magic, bad_version, truncated, digest_mismatch, bad_params, trailing_bytes };

  EnvelopeError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

namespace detail {

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(static_cast<std::byte>(v)); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void u128v(u128 v) {
    u64(static_cast<std::uint64_t>(v));
    u64(static_cast<std::uint64_t>(v >> 64));
  }

  std::vector<std::byte> take() { return std::move(bytes_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xff));
  }

  std::vector<std::byte> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  u128 u128v() {
    u128 lo = u64();
    u128 hi = u64();
    return (hi << 64) | lo;
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::uint64_t get(int width) {
    if (remaining() < static_cast<std::size_t>(width)) {
      throw EnvelopeError(EnvelopeError::Code::truncated, "envelope: truncated input");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(std::to_integer<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::byte> serialize(const StackedSketch<KWiseHash>& sketch) {
  const Params& params = sketch.params();
  const LayoutPlan& layout = sketch.layout();
  detail::ByteWriter w(envelope_size(layout, params.mode));
  w.u32(kEnvelopeMagic);
  w.u32(kEnvelopeVersion);
  w.u64(params.n);
  w.f64(params.delta);
  w.f64(params.big_c);
  w.f64(params.c0);
  w.u32(params.k);
  w.u8(static_cast<std::uint8_t>(params.mode));
  w.u8(regime_of(params).bits());
  w.u16(0);
  w.u64(params.p);
  w.u128v(params.q);
  w.u64(params.master_seed);
  w.u64(layout.digest());
  w.u64(layout.total_cells());
  const bool checksum = params.mode == Mode::checksum;
  for (const auto& table : sketch.tables()) {
    for (const Cell& c : table.cells()) {
      w.u64(c.key_sum);
      w.u64(c.value_sum);
      w.u64(static_cast<std::uint64_t>(c.count));
      if (checksum) w.u128v(c.hash_sum);
    }
  }
  return w.take();
}

inline StackedSketch<KWiseHash> deserialize(std::span<const std::byte> bytes) {
  using Code = EnvelopeError::Code;
  detail::ByteReader r(bytes);
  if (r.u32() != kEnvelopeMagic) throw EnvelopeError(Code::bad_magic, "envelope: bad magic");
  const std::uint32_t version = r.u32();
  if (version != kEnvelopeVersion) {
    throw EnvelopeError(Code::bad_version, "envelope: unsupported version " + std::to_string(version));
  }
  Params params;
  params.n = r.u64();
  params.delta = r.f64();
  params.big_c = r.f64();
  params.c0 = r.f64();
  params.k = r.u32();
  const std::uint8_t mode = r.u8();
  const std::uint8_t flags = r.u8();
  const std::uint16_t reserved = r.u16();
  params.p = r.u64();
  params.q = r.u128v();
  params.master_seed = r.u64();
  const std::uint64_t digest = r.u64();
  const std::uint64_t cell_total = r.u64();

  if (mode > 1) throw EnvelopeError(Code::bad_params, "envelope: unknown mode");
  params.mode = static_cast<Mode>(mode);
  if (reserved != 0) throw EnvelopeError(Code::bad_params, "envelope: reserved bits set");
  if (!std::isfinite(params.delta)) throw EnvelopeError(Code::bad_params, "envelope: non-finite delta");
  if (params.k == 0 || (params.mode == Mode::checksum && params.q == 0)) {
    throw EnvelopeError(Code::bad_params, "envelope: unresolved parameters");
  }
  LayoutPlan layout;
  try {
    validate(params);
    layout = plan_layout(params);
  } catch (const std::invalid_argument& e) {
    throw EnvelopeError(Code::bad_params, std::string("envelope: ") + e.what());
  }
  if (layout.digest() != digest || layout.total_cells() != cell_total) {
    throw EnvelopeError(Code::digest_mismatch, "envelope: layout digest mismatch");
  }
  if (flags != regime_of(params).bits()) {
    throw EnvelopeError(Code::bad_params, "envelope: regime flags disagree with parameters");
  }
  const std::size_t cell_size = cell_wire_size(params.mode);
  if (r.remaining() < cell_total * cell_size) {
    throw EnvelopeError(Code::truncated, "envelope: truncated payload");
  }
  if (r.remaining() > cell_total * cell_size) {
    throw EnvelopeError(Code::trailing_bytes, "envelope: trailing bytes after payload");
  }

  StackedSketch<KWiseHash> sketch(params);
  const bool checksum = params.mode == Mode::checksum;
  for (auto& table : sketch.mutable_tables()) {
    for (Cell& c : table.mutable_cells()) {
      c.key_sum = r.u64();
      c.value_sum = r.u64();
      c.count = static_cast<std::int64_t>(r.u64());
      c.hash_sum = checksum ? r.u128v() : 0;
      if (checksum && c.hash_sum >= params.q) {
        throw EnvelopeError(Code::bad_params, "envelope: hash sum outside Z_q");
      }
    }
  }
  return sketch;
}

}  // namespace siblt
