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

#include <gtest/gtest.h>

#include <cstdint>
#include <cstring>
#include <vector>

#include "siblt/envelope.hpp"
#include "test_support.hpp"

namespace {

using siblt::EnvelopeError;
using siblt::Mode;
using siblt::Params;
using siblt::StackedSketch;
using Code = EnvelopeError::Code;

Params make_params(std::uint64_t n, double delta, Mode mode, std::uint64_t seed) {
  Params p;
  p.n = n;
  p.delta = delta;
  p.mode = mode;
  p.master_seed = seed;
  return p;
}

StackedSketch<> filled(Mode mode, std::uint64_t seed, std::size_t items) {
  StackedSketch<> s(make_params(64, 0x1p-8, mode, seed));
  siblt::SeedStream rng(seed, 77);
  s.insert(siblt::testing::random_set(rng, items, s.key_limit()));
  return s;
}

Code error_code(std::span<const std::byte> bytes) {
  try {
    siblt::deserialize(bytes);
  } catch (const EnvelopeError& e) {
    return e.code();
  }
  ADD_FAILURE() << "deserialize accepted corrupt input";
  return Code::bad_params;
}

void put_u64(std::vector<std::byte>& bytes, std::size_t off, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) bytes[off + i] = static_cast<std::byte>((v >> (8 * i)) & 0xff);
}

TEST(Envelope, HeaderFieldsAtFixedOffsets) {
  auto bytes = siblt::serialize(filled(Mode::checksum, 3, 10));
  ASSERT_GE(bytes.size(), 96u);
  EXPECT_EQ(std::memcmp(bytes.data(), "SIBT", 4), 0);
  EXPECT_EQ(std::to_integer<int>(bytes[4]), 1);
  EXPECT_EQ(std::to_integer<int>(bytes[8]), 64);   // n
  EXPECT_EQ(std::to_integer<int>(bytes[44]), 1);   // checksum mode
  EXPECT_EQ(std::to_integer<int>(bytes[72]), 3);   // seed
  double delta;
  std::memcpy(&delta, bytes.data() + 16, 8);
  EXPECT_EQ(delta, 0x1p-8);
}

TEST(Envelope, RoundTripBothModes) {
  for (Mode mode : {Mode::plain, Mode::checksum}) {
    auto s = filled(mode, 4, 50);
    auto bytes = siblt::serialize(s);
    EXPECT_EQ(bytes.size(), siblt::envelope_size(s.layout(), mode));
    auto back = siblt::deserialize(bytes);
    EXPECT_EQ(back, s);
    EXPECT_EQ(siblt::serialize(back), bytes);
    EXPECT_EQ(back.list_entries(), s.list_entries());
  }
}

TEST(Envelope, DeterministicBytes) {
  EXPECT_EQ(siblt::serialize(filled(Mode::checksum, 5, 20)), siblt::serialize(filled(Mode::checksum, 5, 20)));
  EXPECT_NE(siblt::serialize(filled(Mode::checksum, 5, 20)), siblt::serialize(filled(Mode::checksum, 6, 20)));
}

TEST(Envelope, SizeForReferenceConfiguration) {
  StackedSketch<> s(make_params(1024, 0x1p-10, Mode::checksum, 0));
  EXPECT_EQ(siblt::serialize(s).size(), 96u + 50124u * 40u);
  StackedSketch<> plain(make_params(1024, 0x1p-10, Mode::plain, 0));
  EXPECT_EQ(siblt::serialize(plain).size(), 96u + 50124u * 24u);
}

TEST(Envelope, RejectsCorruption) {
  const auto good = siblt::serialize(filled(Mode::checksum, 7, 30));

  auto magic = good;
  magic[0] = std::byte{'X'};
  EXPECT_EQ(error_code(magic), Code::bad_magic);

  auto version = good;
  version[4] = std::byte{2};
  EXPECT_EQ(error_code(version), Code::bad_version);

  EXPECT_EQ(error_code(std::span(good).first(50)), Code::truncated);
  EXPECT_EQ(error_code(std::span(good).first(good.size() - 1)), Code::truncated);
  EXPECT_EQ(error_code({}), Code::truncated);

  auto trailing = good;
  trailing.push_back(std::byte{0});
  EXPECT_EQ(error_code(trailing), Code::trailing_bytes);

  auto digest = good;
  digest[80] ^= std::byte{1};
  EXPECT_EQ(error_code(digest), Code::digest_mismatch);

  // A larger n is valid on its own but plans a different layout.
  auto bigger = good;
  put_u64(bigger, 8, 128);
  EXPECT_EQ(error_code(bigger), Code::digest_mismatch);

  auto nan = good;
  put_u64(nan, 16, 0x7ff8000000000000ull);
  EXPECT_EQ(error_code(nan), Code::bad_params);

  auto odd_k = good;
  odd_k[40] = std::byte{3};
  EXPECT_EQ(error_code(odd_k), Code::bad_params);

  auto mode = good;
  mode[44] = std::byte{7};
  EXPECT_EQ(error_code(mode), Code::bad_params);

  auto flags = good;
  flags[45] ^= std::byte{1};
  EXPECT_EQ(error_code(flags), Code::bad_params);

  auto composite_q = good;
  composite_q[56] ^= std::byte{1};  // q odd prime -> even
  EXPECT_EQ(error_code(composite_q), Code::bad_params);

  auto hash_sum = good;
  for (std::size_t i = 0; i < 16; ++i) hash_sum[96 + 24 + i] = std::byte{0xff};
  EXPECT_EQ(error_code(hash_sum), Code::bad_params);
}

TEST(Envelope, RandomByteFlipsNeverCrash) {
  const auto good = siblt::serialize(filled(Mode::checksum, 8, 10));
  siblt::SeedStream rng(8, 0);
  for (int i = 0; i < 300; ++i) {
    auto bad = good;
    bad[rng.next_below(96)] ^= static_cast<std::byte>(1 + rng.next_below(255));
    try {
      auto s = siblt::deserialize(bad);
      // Only fields that carry no structure, such as the seed, may change silently.
      EXPECT_EQ(s.layout(), filled(Mode::checksum, 8, 0).layout());
    } catch (const EnvelopeError&) {
    }
  }
}

}  // namespace
