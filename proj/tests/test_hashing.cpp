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

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "siblt/hashing.hpp"

namespace {

using boost::multiprecision::cpp_int;
using siblt::KWiseHash;
using siblt::PowerHash;
using siblt::u128;

// Horner in arbitrary precision, reducing only at the end of each step.
std::uint64_t horner_oracle(std::span<const std::uint64_t> coefficients, std::uint64_t key, std::uint64_t range) {
  cpp_int acc = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = (acc * key + coefficients[i]) % KWiseHash::kFieldPrime;
  return static_cast<std::uint64_t>(acc % range);
}

TEST(KWiseHash, SameSeedSameCoefficients) {
  KWiseHash a(7, 4, 16), b(7, 4, 16);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.coefficients().size(), 4u);
  for (auto c : a.coefficients()) EXPECT_LT(c, KWiseHash::kFieldPrime);
  EXPECT_NE(a, KWiseHash(8, 4, 16));
  EXPECT_NE(a, KWiseHash(7, 4, 16, 1));
}

TEST(KWiseHash, DegreeZeroIsConstant) {
  KWiseHash h(99, 1, 13);
  const std::uint64_t expect = h.coefficients()[0] % 13;
  for (std::uint64_t key : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{12345}, KWiseHash::kFieldPrime - 1}) EXPECT_EQ(h(key), expect);
}

TEST(KWiseHash, FixedCoefficientExamples) {
  EXPECT_EQ(KWiseHash::from_coefficients({5}, 3)(123), 2u);
  EXPECT_EQ(KWiseHash::from_coefficients({0, 1}, 10)(42), 2u);
}

TEST(KWiseHash, MatchesBigIntegerHorner) {
  KWiseHash h(1, 8, 97);
  for (std::uint64_t key = 0; key < 10; ++key) EXPECT_EQ(h(key), horner_oracle(h.coefficients(), key, 97));

  KWiseHash g(0xabc, 6, 11);
  const std::uint64_t key = (std::uint64_t{1} << 40) + 17;
  EXPECT_EQ(g(key), horner_oracle(g.coefficients(), key, 11));

  siblt::SeedStream rng(2, 0);
  KWiseHash wide(3, 32, 1'000'003);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t k = rng.next_below(KWiseHash::kFieldPrime);
    EXPECT_EQ(wide(k), horner_oracle(wide.coefficients(), k, 1'000'003));
  }
}

TEST(KWiseHash, RejectsBadArguments) {
  EXPECT_THROW(KWiseHash(1, 4, 0), std::invalid_argument);
  EXPECT_THROW(KWiseHash(1, 4, KWiseHash::kFieldPrime), std::invalid_argument);
  EXPECT_THROW(KWiseHash(1, 0, 5), std::invalid_argument);
  EXPECT_THROW(KWiseHash::from_coefficients({KWiseHash::kFieldPrime}, 5), std::invalid_argument);
  KWiseHash h(1, 4, 16);
  EXPECT_THROW(h(KWiseHash::kFieldPrime), std::out_of_range);
  EXPECT_NO_THROW(h(KWiseHash::kFieldPrime - 1));
}

TEST(KWiseHash, OutputAlwaysInRange) {
  siblt::SeedStream rng(11, 0);
  for (std::uint64_t range : {1ull, 2ull, 7ull, 1000ull, (1ull << 40) + 3}) {
    KWiseHash h(range, 5, range);
    for (int i = 0; i < 500; ++i) EXPECT_LT(h(rng.next_below(KWiseHash::kFieldPrime)), range);
  }
}

// Joint distribution of two keys' buckets over many seeded pairwise hashes.
std::array<std::uint64_t, 64> pair_histogram(std::uint64_t instances) {
  std::array<std::uint64_t, 64> hist{};
  const std::uint64_t x1 = 12345, x2 = 987654321;
  for (std::uint64_t s = 0; s < instances; ++s) {
    KWiseHash h(siblt::derive_seed(0x5eed, s), 2, 8);
    ++hist[h(x1) * 8 + h(x2)];
  }
  return hist;
}

TEST(KWiseHash, PairwiseChiSquareSmoke) {
  const std::uint64_t instances = 100'000;
  auto hist = pair_histogram(instances);
  const double expect = static_cast<double>(instances) / 64.0;
  double chi2 = 0.0;
  for (auto c : hist) chi2 += (c - expect) * (c - expect) / expect;
  // 63 degrees of freedom; 0.1% upper critical value is 103.4.
  EXPECT_LT(chi2, 103.4);
}

TEST(KWiseHash, PairwiseCellsWithinFivePercent) {
  // 5% per cell is ~2 standard deviations at 1e5 instances, so the per-cell
  // check runs at 1e6 where it is ~6 standard deviations.
  const std::uint64_t instances = 1'000'000;
  auto hist = pair_histogram(instances);
  const double expect = static_cast<double>(instances) / 64.0;
  for (auto c : hist) EXPECT_LT(std::abs(c - expect) / expect, 0.05);
}

TEST(KWiseHash, RebuildGivesIdenticalEvaluations) {
  siblt::SeedStream rng(12, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint64_t seed = rng.next_u64();
    unsigned k = 1 + static_cast<unsigned>(rng.next_below(40));
    std::uint64_t range = 1 + rng.next_below(1 << 20);
    KWiseHash a(seed, k, range), b(seed, k, range);
    for (int i = 0; i < 20; ++i) {
      std::uint64_t key = rng.next_below(KWiseHash::kFieldPrime);
      EXPECT_EQ(a(key), b(key));
    }
  }
}

TEST(PowerHash, DeterministicBaseInRange) {
  PowerHash a(42, 5, 11), b(42, 5, 11);
  EXPECT_EQ(a.base(), b.base());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    PowerHash g(seed, 5, 11);
    EXPECT_GE(g.base(), 1u);
    EXPECT_LE(g.base(), 10u);
  }
}

TEST(PowerHash, SeedSweepCoversEveryResidue) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) seen.insert(static_cast<std::uint64_t>(PowerHash(seed, 29, 31).base()));
  EXPECT_EQ(seen.size(), 30u);
  EXPECT_EQ(*seen.begin(), 1u);
  EXPECT_EQ(*seen.rbegin(), 30u);
}

TEST(PowerHash, Examples) {
  EXPECT_EQ(PowerHash::with_base(3, 5, 11)(4), 4u);
  PowerHash g(5, siblt::kMersenne61, siblt::kLargestPrime128);
  EXPECT_EQ(g(0), 1u);
  EXPECT_EQ(PowerHash::with_base(3, 5, 11)(0), 1u);

  std::uint64_t naive = 1;
  for (int i = 0; i < 13; ++i) naive = naive * 7 % 101;
  EXPECT_EQ(PowerHash::with_base(7, 97, 101)(13), naive);
}

TEST(PowerHash, LargeModulusMatchesBigInteger) {
  PowerHash g(77, siblt::kMersenne61, siblt::kLargestPrime128);
  siblt::SeedStream rng(13, 0);
  cpp_int q = (cpp_int(1) << 128) - 159;
  cpp_int a = static_cast<std::uint64_t>(g.base() >> 64);
  a = (a << 64) + static_cast<std::uint64_t>(g.base());
  for (int i = 0; i < 50; ++i) {
    std::uint64_t key = rng.next_below(siblt::kMersenne61);
    cpp_int expect = boost::multiprecision::powm(a, cpp_int(key), q);
    u128 got = g(key);
    cpp_int got_big = static_cast<std::uint64_t>(got >> 64);
    got_big = (got_big << 64) + static_cast<std::uint64_t>(got);
    EXPECT_EQ(got_big, expect);
  }
}

TEST(PowerHash, ExponentHomomorphism) {
  PowerHash g(8, siblt::kMersenne61, siblt::kLargestPrime128);
  siblt::Montgomery mont(g.modulus());
  siblt::SeedStream rng(14, 0);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t x = rng.next_below(siblt::kMersenne61 / 2), y = rng.next_below(siblt::kMersenne61 / 2);
    EXPECT_EQ(g(x + y), mont.from(mont.mul(mont.to(g(x)), mont.to(g(y)))));
  }
}

TEST(PowerHash, RejectsBadParameters) {
  EXPECT_THROW(PowerHash(1, 4, 11), std::invalid_argument);    // p not prime
  EXPECT_THROW(PowerHash(1, 5, 12), std::invalid_argument);    // q not prime
  EXPECT_THROW(PowerHash(1, 13, 11), std::invalid_argument);   // p > q
  EXPECT_THROW(PowerHash(1, 11, 11), std::invalid_argument);   // p == q
  EXPECT_THROW(PowerHash::with_base(0, 5, 11), std::invalid_argument);
  EXPECT_THROW(PowerHash::with_base(11, 5, 11), std::invalid_argument);
  PowerHash g(1, 5, 11);
  EXPECT_THROW(g(5), std::out_of_range);
  EXPECT_NO_THROW(g(4));
}

// Independent route: expand D(a) = a^{lp + sum} - a^{lp} * sum_i s_i a^{k_i}
// as a coefficient vector and count its roots on Z*_q by Horner evaluation.
std::uint64_t root_count_oracle(std::uint64_t p, std::uint64_t q, std::span<const std::uint64_t> keys,
                                std::span<const int> signs) {
  const std::uint64_t ell = keys.size();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < ell; ++i) sum += signs[i] * static_cast<std::int64_t>(keys[i]);
  const std::uint64_t shift = ell * p;
  std::vector<std::int64_t> coeff(2 * ell * p + 2, 0);
  coeff[static_cast<std::size_t>(static_cast<std::int64_t>(shift) + sum)] += 1;
  for (std::size_t i = 0; i < ell; ++i) coeff[shift + keys[i]] -= signs[i];
  std::uint64_t roots = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    std::int64_t acc = 0;
    for (std::size_t d = coeff.size(); d-- > 0;) {
      acc = (acc * static_cast<std::int64_t>(a) + coeff[d]) % static_cast<std::int64_t>(q);
    }
    if (acc == 0) ++roots;
  }
  return roots;
}

TEST(BadBaseCount, SinglePositiveKeyAgreesEverywhere) {
  for (std::uint64_t k = 0; k < 5; ++k) {
    std::array<std::uint64_t, 1> keys{k};
    std::array<int, 1> signs{1};
    EXPECT_EQ(siblt::power_hash_bad_bases(5, 11, keys, signs), 10u);
  }
}

TEST(BadBaseCount, SmallFieldBound) {
  std::array<std::uint64_t, 2> keys{2, 3};
  std::array<int, 2> signs{1, -1};
  const auto count = siblt::power_hash_bad_bases(5, 101, keys, signs);
  EXPECT_LE(count, 2u * 2 * 5 + 1);
  EXPECT_EQ(count, root_count_oracle(5, 101, keys, signs));
}

TEST(BadBaseCount, ExhaustivePairsMatchRootCounting) {
  const std::uint64_t p = 3, q = 31;
  std::uint64_t worst = 0;
  for (std::uint64_t k1 = 0; k1 < p; ++k1) {
    for (std::uint64_t k2 = 0; k2 < p; ++k2) {
      for (int pattern = 0; pattern < 4; ++pattern) {
        std::array<std::uint64_t, 2> keys{k1, k2};
        std::array<int, 2> signs{pattern & 1 ? -1 : 1, pattern & 2 ? -1 : 1};
        const auto count = siblt::power_hash_bad_bases(p, q, keys, signs);
        EXPECT_EQ(count, root_count_oracle(p, q, keys, signs));
        EXPECT_LE(count, 2 * 2 * p + 1);
        worst = std::max(worst, count);
      }
    }
  }
  EXPECT_GT(worst, 0u);
}

TEST(BadBaseCount, GuardsAndValidation) {
  std::array<std::uint64_t, 1> keys{1};
  std::array<int, 1> signs{1};
  std::array<int, 1> bad_sign{0};
  EXPECT_THROW(siblt::power_hash_bad_bases(10007, 10009, keys, signs), std::invalid_argument);
  EXPECT_THROW(siblt::power_hash_bad_bases(5, 11, keys, bad_sign), std::invalid_argument);
  EXPECT_THROW(siblt::power_hash_bad_bases(5, 11, std::span<const std::uint64_t>(), std::span<const int>()),
               std::invalid_argument);
  std::array<std::uint64_t, 1> big_key{5};
  EXPECT_THROW(siblt::power_hash_bad_bases(5, 11, big_key, signs), std::invalid_argument);
}

TEST(LookupTableHash, DeterministicAndInRange) {
  auto a = siblt::LookupTableHash<64>::make(1, 2, 0, 9);
  auto b = siblt::LookupTableHash<64>::make(1, 2, 0, 9);
  EXPECT_EQ(a, b);
  for (std::uint64_t k = 0; k < 64; ++k) EXPECT_LT(a(k), 9u);
  EXPECT_THROW(a(64), std::out_of_range);
  EXPECT_EQ(a.key_limit(), 64u);
}

}  // namespace
