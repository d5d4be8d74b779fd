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
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "siblt/basic_table.hpp"
#include "siblt/modarith.hpp"

namespace siblt {

inline constexpr double kProvableC = 8.0 * std::numbers::e;        // C = 8e
inline constexpr double kUniqueHashMinC = 4.0 * std::numbers::e;     // bound vacuous below
inline constexpr double kDefaultC0 = 4.0;
inline constexpr std::uint64_t kDefaultKeyBound = kMersenne61;

/// Construction parameters. `k == 0` and `q == 0` mean "derive the default";
/// resolve() fills them in.
struct Params {
  std::uint64_t n = 1;
  double delta = 0.01;
  double big_c = kProvableC;
  double c0 = kDefaultC0;
  unsigned k = 0;
  Mode mode = Mode::plain;
  std::uint64_t p = kDefaultKeyBound;
  u128 q = 0;
  std::uint64_t master_seed = 0;

  friend bool operator==(const Params&, const Params&) = default;
};

inline std::uint64_t ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(x - 1));
}

// Capacity rounded up to a power of two.
inline std::uint64_t rounded_capacity(std::uint64_t n) { return std::bit_ceil(n); }

// k = 2 * ceil(lg(4 * ceil(lg max(n, 2))^2 / delta)), so that
// 2^{-k/2} <= delta / (4 lg^2 n).
inline unsigned default_independence(std::uint64_t n, double delta) {
  const double lg_n = static_cast<double>(ceil_log2(std::max<std::uint64_t>(n, 2)));
  const double half = std::ceil(std::log2(4.0 * lg_n * lg_n / delta));
  return 2 * static_cast<unsigned>(std::max(half, 1.0));
}

// tau = C0 * lg(1/delta), rounded up to a power of two and at least 2 so the
// smallest capacity still gets a grouped table.
inline std::uint64_t crossover_size(double c0, double delta) {
  const double raw = c0 * std::log2(1.0 / delta);
  if (!(raw < 0x1p62)) throw std::invalid_argument("crossover size overflows");
  const auto t = static_cast<std::uint64_t>(std::ceil(std::max(raw, 2.0)));
  return std::bit_ceil(t);
}

// Real-valued bound 2 C n^3 lg(1/d) lglg(1/d) p / d on q. lglg is clamped to
// >= 1 so the bound never collapses for delta close to 1.
inline long double checksum_modulus_bound(const Params& params) {
  const long double n = static_cast<long double>(rounded_capacity(params.n));
  const long double lg = std::log2(1.0L / params.delta);
  const long double lglg = std::max(1.0L, std::log2(std::max(lg, 1.0L)));
  return 2.0L * params.big_c * n * n * n * lg * lglg * static_cast<long double>(params.p) /
         params.delta;
}

inline constexpr long double kTwoPow128 = 340282366920938463463374607431768211456.0L;

inline bool checksum_bound_met(const Params& params) {
  return static_cast<long double>(params.q) >= checksum_modulus_bound(params);
}

// Smallest prime >= the bound (and > p); the largest 128-bit prime when the
// bound does not fit.
inline u128 default_checksum_modulus(const Params& params) {
  const long double bound = checksum_modulus_bound(params);
  if (!(bound < kTwoPow128 / 2)) return kLargestPrime128;
  u128 start = static_cast<u128>(std::ceil(bound));
  start = std::max<u128>(start, static_cast<u128>(params.p) + 1);
  return next_prime(start);
}

inline constexpr double kMaxConstant = 0x1p20;  // cap on C and C0
inline constexpr unsigned kMaxIndependence = 4096;

inline void validate(const Params& params) {
  if (params.n == 0) throw std::invalid_argument("Params: n must be >= 1");
  if (params.n > (std::uint64_t{1} << 40)) throw std::invalid_argument("Params: n above 2^40");
  if (!std::isfinite(params.delta) || !(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("Params: delta must lie in (0, 1)");
  }
  if (!(params.big_c > 0.0 && params.big_c <= kMaxConstant)) {
    throw std::invalid_argument("Params: C must lie in (0, 2^20]");
  }
  if (!(params.c0 > 0.0 && params.c0 <= kMaxConstant)) {
    throw std::invalid_argument("Params: C0 must lie in (0, 2^20]");
  }
  if (params.k < 2 || params.k % 2 != 0 || params.k > kMaxIndependence) {
    throw std::invalid_argument("Params: k must be even and in [2, 4096]");
  }
  if (params.mode != Mode::plain && params.mode != Mode::checksum) {
    throw std::invalid_argument("Params: unknown mode");
  }
  if (params.mode == Mode::checksum) {
    if (params.p > kMersenne61 || !is_prime(params.p)) {
      throw std::invalid_argument("Params: p must be a prime <= 2^61 - 1");
    }
    if (params.q <= params.p || !is_prime(params.q)) {
      throw std::invalid_argument("Params: q must be a prime > p");
    }
  }
}

inline Params resolve(Params params) {
  if (params.k == 0) params.k = default_independence(params.n, params.delta);
  if (params.mode == Mode::checksum && params.q == 0) params.q = default_checksum_modulus(params);
  validate(params);
  return params;
}

// Header flags describing whether a configuration sits in the analysed regime.
struct Regime {
  bool below_provable = false;   // C < 8e, C0 < default, or k below the default
  bool checksum_bound_met = true;

  std::uint8_t bits() const noexcept {
    return static_cast<std::uint8_t>((below_provable ? 1 : 0) | (checksum_bound_met ? 2 : 0));
  }
};

inline Regime regime_of(const Params& params) {
  Regime r;
  r.below_provable = params.big_c < kProvableC || params.c0 < kDefaultC0 ||
                     params.k < default_independence(params.n, params.delta);
  r.checksum_bound_met = params.mode != Mode::checksum || checksum_bound_met(params);
  return r;
}

struct TableDims {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;

  std::uint64_t cells() const noexcept { return rows * cols; }
  friend bool operator==(const TableDims&, const TableDims&) = default;
};

struct LayoutPlan {
  std::uint64_t capacity = 0;  // n rounded up to a power of two
  std::uint64_t tau = 0;
  std::uint64_t single_rows = 0;  // number of leading one-row tables
  std::vector<TableDims> tables;

  std::uint64_t total_cells() const noexcept {
    std::uint64_t total = 0;
    for (const auto& t : tables) total += t.cells();
    return total;
  }

  std::uint64_t total_rows() const noexcept {
    std::uint64_t total = 0;
    for (const auto& t : tables) total += t.rows;
    return total;
  }

  // FNV-1a over (capacity, tau, table count, rows/cols...).
  std::uint64_t digest() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](std::uint64_t word) {
      for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
      }
    };
    feed(capacity);
    feed(tau);
    feed(tables.size());
    for (const auto& t : tables) {
      feed(t.rows);
      feed(t.cols);
    }
    return h;
  }

  friend bool operator==(const LayoutPlan&, const LayoutPlan&) = default;
};

inline std::uint64_t ceil_cols(double c, std::uint64_t size, std::uint64_t shift) {
  const double cols = std::ceil(c * std::ldexp(static_cast<double>(size), -static_cast<int>(shift)));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(cols));
}

/// Sub-table dimensions. With n' = capacity and tau a power of two:
///   n' >= tau: one-row tables of ceil(C n' 2^-i) cells for i < lg n' - lg tau,
///              then groups of 2^i rows x ceil(C tau 2^-i) for i < lg tau;
///   n' <  tau: groups of 2^i rows x ceil(C tau 2^-i) for i = lg(tau/n')..lg tau.
inline LayoutPlan plan_layout(const Params& params) {
  LayoutPlan plan;
  plan.capacity = rounded_capacity(params.n);
  plan.tau = crossover_size(params.c0, params.delta);
  const std::uint64_t lg_n = ceil_log2(plan.capacity);
  const std::uint64_t lg_tau = ceil_log2(plan.tau);
  if (plan.capacity >= plan.tau) {
    plan.single_rows = lg_n - lg_tau;
    for (std::uint64_t i = 0; i < plan.single_rows; ++i) {
      plan.tables.push_back({1, ceil_cols(params.big_c, plan.capacity, i)});
    }
    for (std::uint64_t i = 0; i < lg_tau; ++i) {
      plan.tables.push_back({std::uint64_t{1} << i, ceil_cols(params.big_c, plan.tau, i)});
    }
  } else {
    for (std::uint64_t i = lg_tau - lg_n; i <= lg_tau; ++i) {
      plan.tables.push_back({std::uint64_t{1} << i, ceil_cols(params.big_c, plan.tau, i)});
    }
  }
  return plan;
}

// 2 C n' + C tau (lg tau + 1).
inline double stacked_cell_bound(double big_c, std::uint64_t capacity, std::uint64_t tau) {
  return 2.0 * big_c * static_cast<double>(capacity) +
         big_c * static_cast<double>(tau) * (static_cast<double>(ceil_log2(tau)) + 1.0);
}

// Classic single-array IBLT at the same leading constant:
// C n (1 + lg(1/delta) / lg n) cells.
inline double classic_cell_estimate(double big_c, std::uint64_t n, double delta) {
  const double lg_n = std::max(1.0, std::log2(static_cast<double>(n)));
  return big_c * static_cast<double>(n) * (1.0 + std::log2(1.0 / delta) / lg_n);
}

}  // namespace siblt
