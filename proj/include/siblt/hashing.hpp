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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "siblt/detail/seed_stream.hpp"
#include "siblt/modarith.hpp"

namespace siblt {

// A row hash maps keys below key_limit() to buckets in [0, range()) and can
// be instantiated from (seed, stream id, independence, range).
template <class H>
concept RowHash = std::equality_comparable<H> &&
    requires(const H& h, std::uint64_t key, std::uint64_t seed, unsigned k, std::uint64_t range) {
      { h(key) } -> std::convertible_to<std::uint64_t>;
      { h.range() } -> std::convertible_to<std::uint64_t>;
      { h.key_limit() } -> std::convertible_to<std::uint64_t>;
      { H::make(seed, seed, k, range) } -> std::same_as<H>;
    };

/// Seeded polynomial hash of degree k-1 over Z_{2^61-1}, reduced into
/// [0, range). Drawing the k coefficients uniformly gives a k-wise independent
/// family; the final `mod range` adds bias at most range / 2^61.
class KWiseHash {
 public:
  static constexpr std::uint64_t kFieldPrime = kMersenne61;

  KWiseHash(std::uint64_t seed, unsigned independence, std::uint64_t range,
            std::uint64_t stream = 0)
      : range_(checked_range(range)) {
    if (independence == 0) throw std::invalid_argument("KWiseHash: independence must be >= 1");
    SeedStream rng(seed, stream);
    coefficients_.reserve(independence);
    for (unsigned i = 0; i < independence; ++i) coefficients_.push_back(rng.next_below(kFieldPrime));
  }

  static KWiseHash from_coefficients(std::vector<std::uint64_t> coefficients,
                                     std::uint64_t range) {
    if (coefficients.empty()) throw std::invalid_argument("KWiseHash: no coefficients");
    for (auto c : coefficients) {
      if (c >= kFieldPrime) throw std::invalid_argument("KWiseHash: coefficient outside field");
    }
    return KWiseHash(std::move(coefficients), checked_range(range));
  }

  static KWiseHash make(std::uint64_t seed, std::uint64_t stream, unsigned independence,
                        std::uint64_t range) {
    return KWiseHash(seed, independence, range, stream);
  }

  // Polynomial value in the field, before the range reduction.
  std::uint64_t field_value(std::uint64_t key) const {
    if (key >= kFieldPrime) throw std::out_of_range("KWiseHash: key outside field");
    std::uint64_t acc = coefficients_.back();
    for (std::size_t i = coefficients_.size() - 1; i-- > 0;) {
      acc = mersenne61::add(mersenne61::mul(acc, key), coefficients_[i]);
    }
    return acc;
  }

  std::uint64_t operator()(std::uint64_t key) const { return field_value(key) % range_; }

  std::uint64_t range() const noexcept { return range_; }
  std::uint64_t key_limit() const noexcept { return kFieldPrime; }
  unsigned independence() const noexcept { return static_cast<unsigned>(coefficients_.size()); }
  std::span<const std::uint64_t> coefficients() const noexcept { return coefficients_; }

  friend bool operator==(const KWiseHash&, const KWiseHash&) = default;

 private:
  KWiseHash(std::vector<std::uint64_t> coefficients, std::uint64_t range)
      : coefficients_(std::move(coefficients)), range_(range) {}

  static std::uint64_t checked_range(std::uint64_t range) {
    if (range == 0 || range >= kFieldPrime) {
      throw std::invalid_argument("KWiseHash: range must be in [1, 2^61 - 1)");
    }
    return range;
  }

  std::vector<std::uint64_t> coefficients_;
  std::uint64_t range_;
};

/// Fully random hash over a small key universe, stored as a lookup table.
/// Used as a reference family in tests and experiments.
template <std::uint64_t Universe>
class LookupTableHash {
 public:
  static_assert(Universe > 0);

  static LookupTableHash make(std::uint64_t seed, std::uint64_t stream, unsigned /*independence*/,
                              std::uint64_t range) {
    if (range == 0) throw std::invalid_argument("LookupTableHash: range must be >= 1");
    SeedStream rng(seed, stream);
    std::vector<std::uint64_t> table(Universe);
    for (auto& slot : table) slot = rng.next_below(range);
    return LookupTableHash(std::move(table), range);
  }

  std::uint64_t operator()(std::uint64_t key) const {
    if (key >= Universe) throw std::out_of_range("LookupTableHash: key outside universe");
    return table_[key];
  }

  std::uint64_t range() const noexcept { return range_; }
  std::uint64_t key_limit() const noexcept { return Universe; }
  std::span<const std::uint64_t> table() const noexcept { return table_; }

  friend bool operator==(const LookupTableHash&, const LookupTableHash&) = default;

 private:
  LookupTableHash(std::vector<std::uint64_t> table, std::uint64_t range)
      : table_(std::move(table)), range_(range) {}

  std::vector<std::uint64_t> table_;
  std::uint64_t range_;
};

/// Checksum hash x -> a^x mod q for keys in Z_p, with a drawn from Z*_q.
class PowerHash {
 public:
  PowerHash(std::uint64_t seed, std::uint64_t key_bound, u128 modulus, std::uint64_t stream = 0)
      : PowerHash(validated(key_bound, modulus), 0) {
    SeedStream rng(seed, stream);
    base_ = 1 + rng.next_u128_below(modulus_ - 1);
    base_mont_ = mont_.to(base_);
  }

  // Explicit base, for exhaustive sweeps over a.
  static PowerHash with_base(u128 base, std::uint64_t key_bound, u128 modulus) {
    PowerHash g(validated(key_bound, modulus), 0);
    if (base == 0 || base >= modulus) throw std::invalid_argument("PowerHash: base outside Z*_q");
    g.base_ = base;
    g.base_mont_ = g.mont_.to(base);
    return g;
  }

  u128 operator()(std::uint64_t key) const {
    if (key >= key_bound_) throw std::out_of_range("PowerHash: key outside Z_p");
    return mont_.from(mont_.pow(base_mont_, key));
  }

  u128 base() const noexcept { return base_; }
  u128 modulus() const noexcept { return modulus_; }
  std::uint64_t key_bound() const noexcept { return key_bound_; }

  friend bool operator==(const PowerHash& a, const PowerHash& b) noexcept {
    return a.base_ == b.base_ && a.modulus_ == b.modulus_ && a.key_bound_ == b.key_bound_;
  }

 private:
  struct Checked {
    std::uint64_t key_bound;
    u128 modulus;
  };

  static Checked validated(std::uint64_t key_bound, u128 modulus) {
    if (!is_prime(key_bound)) throw std::invalid_argument("PowerHash: p is not prime");
    if (!is_prime(modulus)) throw std::invalid_argument("PowerHash: q is not prime");
    if (modulus <= key_bound) throw std::invalid_argument("PowerHash: requires p < q");
    if (modulus == 2) throw std::invalid_argument("PowerHash: q must be odd");
    return {key_bound, modulus};
  }

  PowerHash(Checked c, int) : key_bound_(c.key_bound), modulus_(c.modulus), mont_(c.modulus) {}

  std::uint64_t key_bound_;
  u128 modulus_;
  Montgomery mont_;
  u128 base_ = 1;
  u128 base_mont_ = 0;
};

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) acc = mulmod64(acc, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

}  // namespace detail

inline constexpr std::uint64_t kBadBaseWorkGuard = 10'000;

/// Counts bases a in [1, q-1] for which the power hash of a signed key sum
/// equals the signed sum of power hashes. Both sides are shifted by a^{l*p}
/// so the exponent l*p + sum(sign_i * key_i) is never negative.
inline std::uint64_t power_hash_bad_bases(std::uint64_t p, std::uint64_t q,
                                           std::span<const std::uint64_t> keys,
                                           std::span<const int> signs) {
  const std::uint64_t ell = keys.size();
  if (ell == 0) throw std::invalid_argument("lemma3: need at least one key");
  if (signs.size() != ell) throw std::invalid_argument("lemma3: keys and signs differ in length");
  if (p == 0 || ell > kBadBaseWorkGuard / p) throw std::invalid_argument("lemma3: l*p exceeds guard");
  if (!is_prime(p) || !is_prime(q) || p >= q) throw std::invalid_argument("lemma3: need primes p < q");
  for (auto k : keys) {
    if (k >= p) throw std::invalid_argument("lemma3: key outside Z_p");
  }
  std::int64_t signed_sum = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("lemma3: sign must be +-1");
    signed_sum += signs[i] * static_cast<std::int64_t>(keys[i]);
  }
  const std::uint64_t shift = ell * p;
  const auto exponent = static_cast<std::uint64_t>(static_cast<std::int64_t>(shift) + signed_sum);

  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    std::uint64_t lhs = detail::powmod64(a, exponent, q);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < ell; ++i) {
      std::uint64_t term = detail::powmod64(a, keys[i], q);
      sum = signs[i] > 0 ? (sum + term) % q : (sum + q - term) % q;
    }
    std::uint64_t rhs = detail::mulmod64(detail::powmod64(a, shift, q), sum, q);
    if (lhs == rhs) ++count;
  }
  return count;
}

}  // namespace siblt
