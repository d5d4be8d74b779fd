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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "siblt/hashing.hpp"
#include "siblt/modarith.hpp"

namespace siblt {

enum class Mode : std::uint8_t { plain = 0, checksum = 1 };

struct KeyValue {
  std::uint64_t key = 0;
  std::uint64_t value = 0;

  friend auto operator<=>(const KeyValue&, const KeyValue&) = default;
};

using PairSet = std::set<KeyValue>;

struct SignedPair {
  int sign = 1;  // +1 or -1
  std::uint64_t key = 0;
  std::uint64_t value = 0;

  friend bool operator==(const SignedPair&, const SignedPair&) = default;
};

// key_sum and value_sum live in Z_{2^64}; hash_sum lives in Z_q and stays zero
// in plain mode.
struct Cell {
  std::uint64_t key_sum = 0;
  std::uint64_t value_sum = 0;
  std::int64_t count = 0;
  u128 hash_sum = 0;

  bool is_zero() const noexcept {
    return key_sum == 0 && value_sum == 0 && count == 0 && hash_sum == 0;
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Singletons extracted from one table. In plain mode `minus` is always empty.
struct Extraction {
  PairSet plus;
  PairSet minus;
};

/// A rows x cols grid of cells with one hash function per row. Each item
/// lands in exactly one cell of every row.
template <RowHash Hash = KWiseHash>
class BasicTable {
 public:
  BasicTable(std::uint64_t rows, std::uint64_t cols, std::vector<Hash> hashes,
             std::optional<PowerHash> checksum = std::nullopt)
      : rows_(rows), cols_(cols), hashes_(std::move(hashes)), checksum_(std::move(checksum)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("BasicTable: empty dimensions");
    if (hashes_.size() != rows) throw std::invalid_argument("BasicTable: need one hash per row");
    for (const auto& h : hashes_) {
      if (h.range() != cols) throw std::invalid_argument("BasicTable: hash range != cols");
    }
    grid_.resize(rows * cols);
  }

  std::uint64_t rows() const noexcept { return rows_; }
  std::uint64_t cols() const noexcept { return cols_; }
  std::uint64_t cell_count() const noexcept { return grid_.size(); }
  Mode mode() const noexcept { return checksum_ ? Mode::checksum : Mode::plain; }
  const Hash& hash(std::uint64_t row) const { return hashes_.at(row); }
  std::span<const Hash> hashes() const noexcept { return hashes_; }
  const std::optional<PowerHash>& checksum() const noexcept { return checksum_; }

  const Cell& cell(std::uint64_t row, std::uint64_t col) const { return grid_.at(row * cols_ + col); }
  std::span<const Cell> cells() const noexcept { return grid_; }
  std::span<Cell> mutable_cells() noexcept { return grid_; }

  // Keys this table accepts: below every row hash's limit and, in checksum
  // mode, below p.
  std::uint64_t key_limit() const noexcept {
    std::uint64_t limit = hashes_.front().key_limit();
    if (checksum_) limit = std::min(limit, checksum_->key_bound());
    return limit;
  }

  void insert(std::span<const KeyValue> pairs) {
    check_keys(pairs);
    for (const auto& kv : pairs) apply(1, kv.key, kv.value);
  }

  void insert(const KeyValue& kv) { insert(std::span<const KeyValue>(&kv, 1)); }

  // Unsigned delete: every pair counts as sign +1.
  void erase(std::span<const KeyValue> pairs) {
    check_keys(pairs);
    for (const auto& kv : pairs) apply(-1, kv.key, kv.value);
  }

  void erase(std::span<const SignedPair> pairs) {
    for (const auto& sp : pairs) {
      if (sp.sign != 1 && sp.sign != -1) throw std::invalid_argument("BasicTable: sign must be +-1");
    }
    check_keys(pairs);
    for (const auto& sp : pairs) apply(-sp.sign, sp.key, sp.value);
  }

  Extraction list_entries() const {
    Extraction out;
    const std::uint64_t limit = key_limit();
    for (const Cell& c : grid_) {
      if (!checksum_) {
        if (c.count == 1 && c.key_sum < limit) out.plus.insert({c.key_sum, c.value_sum});
        continue;
      }
      if (c.count != 1 && c.count != -1) continue;
      const bool negative = c.count == -1;
      const std::uint64_t key = negative ? std::uint64_t{0} - c.key_sum : c.key_sum;
      if (key >= limit) continue;
      const u128 q = checksum_->modulus();
      const u128 expected = negative ? neg_mod(c.hash_sum, q) : c.hash_sum;
      if ((*checksum_)(key) != expected) continue;
      const std::uint64_t value = negative ? std::uint64_t{0} - c.value_sum : c.value_sum;
      (negative ? out.minus : out.plus).insert({key, value});
    }
    return out;
  }

  bool is_zero() const noexcept {
    for (const Cell& c : grid_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  bool compatible_with(const BasicTable& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && hashes_ == other.hashes_ &&
           checksum_ == other.checksum_;
  }

  BasicTable& operator-=(const BasicTable& other) {
    if (!compatible_with(other)) {
      throw std::invalid_argument("BasicTable: subtracting incompatibly built tables");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      Cell& a = grid_[i];
      const Cell& b = other.grid_[i];
      a.key_sum -= b.key_sum;
      a.value_sum -= b.value_sum;
      a.count -= b.count;
      if (checksum_) a.hash_sum = sub_mod(a.hash_sum, b.hash_sum, checksum_->modulus());
    }
    return *this;
  }

  friend BasicTable operator-(BasicTable a, const BasicTable& b) {
    a -= b;
    return a;
  }

  friend bool operator==(const BasicTable& a, const BasicTable& b) {
    return a.compatible_with(b) && a.grid_ == b.grid_;
  }

 private:
  template <class Pair>
  void check_keys(std::span<const Pair> pairs) const {
    const std::uint64_t limit = key_limit();
    for (const auto& p : pairs) {
      if (p.key >= limit) throw std::out_of_range("BasicTable: key outside key domain");
    }
  }

  // Adds sign * (key, value, 1, g(key)) to the item's cell in every row.
  void apply(int sign, std::uint64_t key, std::uint64_t value) {
    u128 g = 0;
    if (checksum_) {
      g = (*checksum_)(key);
      if (sign < 0) g = neg_mod(g, checksum_->modulus());
    }
    const std::uint64_t dk = sign > 0 ? key : std::uint64_t{0} - key;
    const std::uint64_t dv = sign > 0 ? value : std::uint64_t{0} - value;
    for (std::uint64_t r = 0; r < rows_; ++r) {
      Cell& c = grid_[r * cols_ + hashes_[r](key)];
      c.key_sum += dk;
      c.value_sum += dv;
      c.count += sign;
      if (checksum_) c.hash_sum = add_mod(c.hash_sum, g, checksum_->modulus());
    }
  }

  std::uint64_t rows_;
  std::uint64_t cols_;
  std::vector<Hash> hashes_;
  std::optional<PowerHash> checksum_;
  std::vector<Cell> grid_;
};

}  // namespace siblt
