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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "siblt/basic_table.hpp"
#include "siblt/hashing.hpp"
#include "siblt/layout.hpp"

namespace siblt {

struct DecodeOutcome {
  PairSet recovered_plus;
  PairSet recovered_minus;
  bool complete = false;
  bool inconsistent = false;

  friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;
};

// Stream ids: 0 is the checksum base, (table + 1) << 32 | row the row hashes.
inline constexpr std::uint64_t kChecksumStream = 0;

inline constexpr std::uint64_t row_stream(std::uint64_t table, std::uint64_t row) noexcept {
  return ((table + 1) << 32) | row;
}

/// Ordered sequence of basic tables of geometrically shrinking size, decoded
/// front to back. Every item is stored once in every row of every table.
template <RowHash Hash = KWiseHash>
class StackedSketch {
 public:
  using Table = BasicTable<Hash>;

  // Called after the recovered pairs have been removed from table `stage` and
  // its singletons extracted.
  struct NoObserver {
    void operator()(std::size_t, const Table&, const Extraction&) const noexcept {}
  };

  explicit StackedSketch(const Params& params)
      : params_(resolve(params)), layout_(plan_layout(params_)) {
    std::optional<PowerHash> checksum;
    if (params_.mode == Mode::checksum) {
      checksum.emplace(params_.master_seed, params_.p, params_.q, kChecksumStream);
    }
    tables_.reserve(layout_.tables.size());
    for (std::size_t t = 0; t < layout_.tables.size(); ++t) {
      const TableDims dims = layout_.tables[t];
      std::vector<Hash> hashes;
      hashes.reserve(dims.rows);
      for (std::uint64_t r = 0; r < dims.rows; ++r) {
        hashes.push_back(Hash::make(params_.master_seed, row_stream(t, r), params_.k, dims.cols));
      }
      tables_.emplace_back(dims.rows, dims.cols, std::move(hashes), checksum);
    }
  }

  const Params& params() const noexcept { return params_; }
  const LayoutPlan& layout() const noexcept { return layout_; }
  std::span<const Table> tables() const noexcept { return tables_; }
  std::span<Table> mutable_tables() noexcept { return tables_; }
  Mode mode() const noexcept { return params_.mode; }
  std::uint64_t key_limit() const noexcept { return tables_.front().key_limit(); }

  void insert(std::span<const KeyValue> pairs) {
    check_keys(pairs);
    for (auto& t : tables_) t.insert(pairs);
  }

  void insert(const KeyValue& kv) { insert(std::span<const KeyValue>(&kv, 1)); }

  void erase(std::span<const KeyValue> pairs) {
    check_keys(pairs);
    for (auto& t : tables_) t.erase(pairs);
  }

  void erase(std::span<const SignedPair> pairs) {
    check_keys(pairs);
    for (auto& t : tables_) t.erase(pairs);
  }

  // Inserts minus deletes; every row of every table carries this total count.
  std::int64_t item_balance() const noexcept {
    const auto& first = tables_.front();
    std::int64_t total = 0;
    for (std::uint64_t c = 0; c < first.cols(); ++c) total += first.cell(0, c).count;
    return total;
  }

  bool is_zero() const noexcept {
    for (const auto& t : tables_) {
      if (!t.is_zero()) return false;
    }
    return true;
  }

  std::uint64_t space_cells() const noexcept { return layout_.total_cells(); }

  // In-memory footprint of the cell grids.
  std::uint64_t space_bits() const noexcept { return space_cells() * sizeof(Cell) * 8; }

  StackedSketch& operator-=(const StackedSketch& other) {
    if (!(params_ == other.params_)) {
      throw std::invalid_argument("StackedSketch: subtracting sketches with different parameters");
    }
    for (std::size_t i = 0; i < tables_.size(); ++i) tables_[i] -= other.tables_[i];
    return *this;
  }

  friend StackedSketch operator-(StackedSketch a, const StackedSketch& b) {
    a -= b;
    return a;
  }

  friend bool operator==(const StackedSketch& a, const StackedSketch& b) {
    return a.params_ == b.params_ && a.tables_ == b.tables_;
  }

  template <class Observer = NoObserver>
  DecodeOutcome list_entries(Observer&& observer = {}) const {
    StackedSketch copy = *this;
    return copy.list_entries_in_place(std::forward<Observer>(observer));
  }

  /// Staged peeling. Before extracting from table i, every pair recovered
  /// from tables 0..i-1 is removed from it. On return each table has had all
  /// recovered pairs removed, so a complete decode leaves the sketch zero.
  template <class Observer = NoObserver>
  DecodeOutcome list_entries_in_place(Observer&& observer = {}) {
    DecodeOutcome out;
    std::vector<SignedPair> recovered;
    std::vector<std::size_t> removed(tables_.size(), 0);

    for (std::size_t i = 0; i < tables_.size(); ++i) {
      tables_[i].erase(std::span<const SignedPair>(recovered));
      removed[i] = recovered.size();
      Extraction found = tables_[i].list_entries();
      for (const auto& kv : found.plus) {
        if (out.recovered_plus.insert(kv).second) recovered.push_back({1, kv.key, kv.value});
        if (out.recovered_minus.contains(kv)) out.inconsistent = true;
      }
      for (const auto& kv : found.minus) {
        if (out.recovered_minus.insert(kv).second) recovered.push_back({-1, kv.key, kv.value});
        if (out.recovered_plus.contains(kv)) out.inconsistent = true;
      }
      observer(i, std::as_const(tables_[i]), std::as_const(found));
    }

    out.complete = true;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      std::span<const SignedPair> rest(recovered.data() + removed[i], recovered.size() - removed[i]);
      tables_[i].erase(rest);
      if (!tables_[i].is_zero()) out.complete = false;
    }
    if (has_duplicate_key(out.recovered_plus) || has_duplicate_key(out.recovered_minus)) {
      out.inconsistent = true;
    }
    return out;
  }

 private:
  template <class Pair>
  void check_keys(std::span<const Pair> pairs) const {
    const std::uint64_t limit = key_limit();
    for (const auto& p : pairs) {
      if (p.key >= limit) throw std::out_of_range("StackedSketch: key outside key domain");
    }
  }

  static bool has_duplicate_key(const PairSet& s) {
    const KeyValue* prev = nullptr;
    for (const auto& kv : s) {
      if (prev != nullptr && prev->key == kv.key) return true;
      prev = &kv;
    }
    return false;
  }

  Params params_;
  LayoutPlan layout_;
  std::vector<Table> tables_;
};

}  // namespace siblt
