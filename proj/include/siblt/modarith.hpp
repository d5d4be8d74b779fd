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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "siblt/detail/seed_stream.hpp"

namespace siblt {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~u128{0};

// The Mersenne prime 2^61 - 1. Bucket hashing works over this field.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// Largest prime below 2^128 (2^128 - 159). Used when the checksum modulus
// bound does not fit in 128 bits.
inline constexpr u128 kLargestPrime128 = kU128Max - 158;

namespace mersenne61 {

constexpr std::uint64_t reduce(u128 x) noexcept {
  std::uint64_t lo = static_cast<std::uint64_t>(x) & kMersenne61;
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  // x < 2^122 for reduced inputs, so one fold leaves r < 2^62.
  r = (r & kMersenne61) + (r >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

constexpr std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept {
  return reduce(static_cast<u128>(a) * b);
}

constexpr std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r = a + b;
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

}  // namespace mersenne61

// 128x128 -> 256 bit product as (hi, lo).
struct Wide {
  u128 hi;
  u128 lo;
};

constexpr Wide mul_wide(u128 a, u128 b) noexcept {
  const u128 mask = 0xFFFFFFFFFFFFFFFFull;
  u128 a0 = a & mask, a1 = a >> 64;
  u128 b0 = b & mask, b1 = b >> 64;
  u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
  u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (mid << 64) | (p00 & mask)};
}

constexpr u128 add_mod(u128 a, u128 b, u128 m) noexcept {
  u128 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

constexpr u128 sub_mod(u128 a, u128 b, u128 m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

constexpr u128 neg_mod(u128 a, u128 m) noexcept { return a == 0 ? 0 : m - a; }

// Montgomery arithmetic for an odd modulus below 2^128, R = 2^128.
class Montgomery {
 public:
  constexpr explicit Montgomery(u128 modulus) : m_(modulus) {
    if (modulus < 3 || (modulus & 1) == 0) {
      throw std::invalid_argument("Montgomery: modulus must be odd and >= 3");
    }
    u128 inv = modulus;  // correct to 3 bits for odd modulus
    for (int i = 0; i < 7; ++i) inv *= 2 - modulus * inv;
    neg_inv_ = u128{0} - inv;
    u128 r = (u128{0} - modulus) % modulus;  // R mod m
    one_ = r;
    for (int i = 0; i < 128; ++i) r = add_mod(r, r, modulus);
    r2_ = r;
  }

  constexpr u128 modulus() const noexcept { return m_; }

  constexpr u128 redc(Wide t) const noexcept {
    u128 q = t.lo * neg_inv_;
    Wide qm = mul_wide(q, m_);
    u128 carry = t.lo != 0 ? 1 : 0;  // t.lo + qm.lo == 0 mod 2^128
    u128 s1 = t.hi + qm.hi;
    bool overflow = s1 < t.hi;
    u128 s2 = s1 + carry;
    overflow = overflow || s2 < s1;
    if (overflow || s2 >= m_) s2 -= m_;
    return s2;
  }

  constexpr u128 mul(u128 a, u128 b) const noexcept { return redc(mul_wide(a, b)); }
  constexpr u128 to(u128 x) const noexcept { return mul(x % m_, r2_); }
  constexpr u128 from(u128 x) const noexcept { return redc({0, x}); }
  constexpr u128 one() const noexcept { return one_; }

  // base in Montgomery form; result in Montgomery form.
  template <class Exp>
  constexpr u128 pow(u128 base, Exp exp) const noexcept {
    u128 acc = one_;
    while (exp != 0) {
      if (exp & 1) acc = mul(acc, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return acc;
  }

  constexpr u128 pow_plain(u128 base, u128 exp) const noexcept {
    return from(pow(to(base), exp));
  }

 private:
  u128 m_;
  u128 neg_inv_ = 0;
  u128 one_ = 0;
  u128 r2_ = 0;
};

inline constexpr std::array<std::uint32_t, 13> kWitnessPrimes = {2,  3,  5,  7,  11, 13, 17,
                                                                 19, 23, 29, 31, 37, 41};

// Largest n for which the 13 witness primes give a deterministic answer.
inline constexpr u128 kDeterministicBound =
    static_cast<u128>(3317044064679887385ull) * 1000000 + 961981;

inline constexpr int kMillerRabinRounds = 64;

namespace detail {

inline bool miller_rabin_witness(const Montgomery& mont, u128 n, u128 d, int s, u128 a) {
  a %= n;
  if (a == 0) return true;
  u128 x = mont.pow(mont.to(a), d);
  u128 one = mont.one();
  u128 minus_one = sub_mod(0, one, n);
  if (x == one || x == minus_one) return true;
  for (int r = 1; r < s; ++r) {
    x = mont.mul(x, x);
    if (x == minus_one) return true;
    if (x == one) return false;
  }
  return false;
}

}  // namespace detail

// Deterministic below kDeterministicBound; above it the witness primes are
// followed by kMillerRabinRounds bases from a fixed stream.
inline bool is_prime(u128 n) {
  if (n < 2) return false;
  for (std::uint32_t p : kWitnessPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Montgomery mont(n);
  for (std::uint32_t a : kWitnessPrimes) {
    if (!detail::miller_rabin_witness(mont, n, d, s, a)) return false;
  }
  if (n < kDeterministicBound) return true;
  SeedStream bases(0x6d696c6c65722d72ull, 0);
  for (int round = 0; round < kMillerRabinRounds; ++round) {
    u128 a = 2 + bases.next_u128_below(n - 3);
    if (!detail::miller_rabin_witness(mont, n, d, s, a)) return false;
  }
  return true;
}

// Smallest prime >= x. Throws if no such prime fits in 128 bits.
inline u128 next_prime(u128 x) {
  if (x <= 2) return 2;
  if ((x & 1) == 0) ++x;
  for (;;) {
    if (is_prime(x)) return x;
    if (x > kLargestPrime128) throw std::overflow_error("next_prime: exceeds 128 bits");
    x += 2;
  }
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

inline u128 parse_u128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_u128: empty string");
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("parse_u128: not a decimal integer");
    u128 digit = static_cast<u128>(c - '0');
    if (v > (kU128Max - digit) / 10) throw std::out_of_range("parse_u128: overflow");
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace siblt
