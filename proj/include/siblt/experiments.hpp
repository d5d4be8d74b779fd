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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "siblt/envelope.hpp"
#include "siblt/hashing.hpp"
#include "siblt/layout.hpp"
#include "siblt/reconcile.hpp"
#include "siblt/stacked.hpp"

namespace siblt::experiments {

// Worker count: `requested` if given, else hardware concurrency, capped by
// the IBLT_THREADS environment variable.
inline unsigned worker_count(std::optional<unsigned> requested = std::nullopt) {
  unsigned n = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("IBLT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

// Runs fn(trial) for every trial and returns the results indexed by trial.
// Results do not depend on the number of threads.
template <class Fn>
auto run_trials(std::uint64_t trials, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::uint64_t{0}));
  std::vector<Result> results(trials);
  threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(trials, 1)));
  if (threads == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) results[t] = fn(t);
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t t; (t = next.fetch_add(1)) < trials;) {
        if (failed.load()) return;
        try {
          results[t] = fn(t);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Poisson-style upper allowance for a count with expectation `expected`.
inline std::uint64_t allowed_failures(double expected) {
  return static_cast<std::uint64_t>(std::ceil(expected + 4.0 * std::sqrt(expected))) + 1;
}

struct Report {
  std::string csv;
  std::vector<std::string> summary;
  bool violated = false;
};

inline std::string render(const std::string& params_line, const std::string& header,
                          const std::vector<std::string>& rows, const std::vector<std::string>& summary) {
  std::string out = "# params: " + params_line + "\n" + header + "\n";
  for (const auto& r : rows) out += r + "\n";
  for (const auto& s : summary) out += "# summary: " + s + "\n";
  return out;
}

// Distinct uniformly random keys below `limit`.
inline std::vector<std::uint64_t> distinct_keys(SeedStream& rng, std::uint64_t count, std::uint64_t limit) {
  if (count > limit) throw std::invalid_argument("distinct_keys: more keys than key domain");
  std::vector<std::uint64_t> keys;
  keys.reserve(count);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  while (keys.size() < count) {
    std::uint64_t k = rng.next_below(limit);
    if (seen.insert(k).second) keys.push_back(k);
  }
  return keys;
}

inline std::vector<KeyValue> random_pairs(SeedStream& rng, std::uint64_t count, std::uint64_t limit) {
  std::vector<KeyValue> pairs;
  pairs.reserve(count);
  for (auto k : distinct_keys(rng, count, limit)) pairs.push_back({k, rng.next_u64()});
  return pairs;
}

// ---------------------------------------------------------------------------
// unique-hash: how many of n keys share a bucket under a random polynomial.

// Number of keys whose bucket holds at least one other key.
template <class Hash>
std::uint64_t count_non_unique(std::span<const std::uint64_t> keys, const Hash& h) {
  std::unordered_map<std::uint64_t, std::uint64_t> load;
  load.reserve(keys.size() * 2);
  for (auto k : keys) ++load[static_cast<std::uint64_t>(h(k))];
  std::uint64_t non_unique = 0;
  for (const auto& [bucket, c] : load) {
    if (c >= 2) non_unique += c;
  }
  return non_unique;
}

// 4 (4e/C)^min(k, n/C); empty when C < 4e (the bound is vacuous).
inline std::optional<double> unique_hash_bound(std::uint64_t n, double big_c, unsigned k) {
  if (big_c < kUniqueHashMinC) return std::nullopt;
  const double exponent = std::min(static_cast<double>(k), static_cast<double>(n) / big_c);
  return 4.0 * std::pow(kUniqueHashMinC / big_c, exponent);
}

struct UniqueHashConfig {
  std::uint64_t n = 512;
  double big_c = kProvableC;
  unsigned k = 16;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct UniqueHashResult {
  std::vector<std::uint64_t> non_unique;
  std::uint64_t failures = 0;
  double failure_fraction = 0.0;
  std::optional<double> bound;
  std::uint64_t buckets = 0;
  Report report;
};

inline UniqueHashResult unique_hash(const UniqueHashConfig& cfg) {
  if (cfg.n < 1 || cfg.k < 1 || cfg.trials < 1) throw std::invalid_argument("unique-hash: n, k, trials must be >= 1");
  if (!(cfg.big_c > 0.0)) throw std::invalid_argument("unique-hash: C must be positive");
  UniqueHashResult res;
  res.buckets = static_cast<std::uint64_t>(std::ceil(cfg.big_c * static_cast<double>(cfg.n)));
  res.non_unique = run_trials(cfg.trials, cfg.threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, t);
    SeedStream key_rng(trial_seed, 1);
    const auto keys = distinct_keys(key_rng, cfg.n, KWiseHash::kFieldPrime);
    // 2k-wise independent: degree 2k - 1.
    const KWiseHash h(trial_seed, 2 * cfg.k, res.buckets, 2);
    return count_non_unique(std::span<const std::uint64_t>(keys), h);
  });
  std::vector<std::string> rows;
  rows.reserve(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const bool failed = 2 * res.non_unique[t] > cfg.n;
    res.failures += failed ? 1 : 0;
    rows.push_back(std::to_string(t) + "," + std::to_string(res.non_unique[t]) + "," + (failed ? "1" : "0"));
  }
  res.failure_fraction = static_cast<double>(res.failures) / static_cast<double>(cfg.trials);
  res.bound = unique_hash_bound(cfg.n, cfg.big_c, cfg.k);

  std::string summary = "failures=" + std::to_string(res.failures) +
                        ",failure_fraction=" + fmt(res.failure_fraction) + ",theorem_bound=";
  if (res.bound) {
    const std::uint64_t allowed = allowed_failures(*res.bound * static_cast<double>(cfg.trials));
    summary += fmt(*res.bound) + ",allowed_failures=" + std::to_string(allowed);
    res.report.violated = *res.bound < 1.0 && res.failures > allowed;
  } else {
    summary += "N/A,allowed_failures=N/A";
  }
  res.report.summary.push_back(summary);
  if (cfg.big_c < kProvableC) res.report.summary.push_back("warning=C below 8e");
  const std::string params = "command=unique-hash,n=" + std::to_string(cfg.n) + ",C=" + fmt(cfg.big_c) +
                             ",k=" + std::to_string(cfg.k) + ",hash_degree=" + std::to_string(2 * cfg.k - 1) +
                             ",buckets=" + std::to_string(res.buckets) + ",trials=" + std::to_string(cfg.trials) +
                             ",seed=" + std::to_string(cfg.seed);
  res.report.csv = render(params, "trial,non_unique_count,failed", rows, res.report.summary);
  return res;
}

// ---------------------------------------------------------------------------
// decode-failure: insert `load` random pairs and decode.

struct DecodeFailureConfig {
  Params params;  // master_seed is replaced per trial
  std::uint64_t load = 0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct DecodeTrial {
  bool complete = false;
  bool correct = false;
  std::uint64_t recovered = 0;
};

struct DecodeFailureResult {
  Params resolved;
  std::vector<DecodeTrial> trials;
  std::uint64_t failures = 0;
  double failure_rate = 0.0;
  Report report;
};

inline std::string params_text(const Params& p) {
  std::string s = "n=" + std::to_string(p.n) + ",delta=" + fmt(p.delta) + ",C=" + fmt(p.big_c) +
                  ",C0=" + fmt(p.c0) + ",k=" + std::to_string(p.k) +
                  ",mode=" + (p.mode == Mode::checksum ? "checksum" : "plain");
  if (p.mode == Mode::checksum) s += ",p=" + std::to_string(p.p) + ",q=" + to_string(p.q);
  return s;
}

inline DecodeFailureResult decode_failure(const DecodeFailureConfig& cfg) {
  DecodeFailureResult res;
  res.resolved = resolve(cfg.params);
  if (cfg.trials < 1) throw std::invalid_argument("decode-failure: trials must be >= 1");
  res.trials = run_trials(cfg.trials, cfg.threads, [&](std::uint64_t t) {
    Params p = res.resolved;
    p.master_seed = derive_seed(cfg.seed, t);
    StackedSketch<KWiseHash> sketch(p);
    SeedStream rng(p.master_seed, 1);
    const auto pairs = random_pairs(rng, cfg.load, sketch.key_limit());
    sketch.insert(pairs);
    const DecodeOutcome out = sketch.list_entries_in_place();
    DecodeTrial trial;
    trial.complete = out.complete;
    trial.recovered = out.recovered_plus.size() + out.recovered_minus.size();
    trial.correct = out.complete && !out.inconsistent && out.recovered_minus.empty() &&
                    out.recovered_plus == PairSet(pairs.begin(), pairs.end());
    return trial;
  });
  std::vector<std::string> rows;
  rows.reserve(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const auto& tr = res.trials[t];
    res.failures += tr.correct ? 0 : 1;
    rows.push_back(std::to_string(t) + "," + std::to_string(cfg.load) + "," + (tr.complete ? "1" : "0") + "," +
                   (tr.correct ? "1" : "0") + "," + std::to_string(tr.recovered));
  }
  res.failure_rate = static_cast<double>(res.failures) / static_cast<double>(cfg.trials);
  const double expected = res.resolved.delta * static_cast<double>(cfg.trials);
  const std::uint64_t allowed = allowed_failures(expected);
  const bool bound_applies = cfg.load <= res.resolved.n;
  res.report.violated = bound_applies && res.failures > allowed;
  res.report.summary.push_back("failures=" + std::to_string(res.failures) + ",failure_rate=" +
                               fmt(res.failure_rate) + ",delta_bound=" + fmt(res.resolved.delta) +
                               ",expected_failures_at_bound=" + fmt(expected) + ",allowed_failures=" +
                               (bound_applies ? std::to_string(allowed) : std::string("N/A (load > n)")));
  if (regime_of(res.resolved).below_provable) res.report.summary.push_back("warning=parameters below provable regime");
  res.report.csv = render("command=decode-failure," + params_text(res.resolved) + ",load=" + std::to_string(cfg.load) +
                              ",trials=" + std::to_string(cfg.trials) + ",seed=" + std::to_string(cfg.seed),
                          "trial,load,complete,correct,recovered", rows, res.report.summary);
  return res;
}

// ---------------------------------------------------------------------------
// space: layout table plus the closed-form and classic comparisons.

struct SpaceResult {
  Params resolved;
  LayoutPlan layout;
  std::uint64_t total_cells = 0;
  double closed_form_bound = 0.0;
  double classic_cells = 0.0;
  double ratio_to_classic = 0.0;
  Report report;
};

inline SpaceResult space_report(const Params& params) {
  SpaceResult res;
  res.resolved = resolve(params);
  res.layout = plan_layout(res.resolved);
  res.total_cells = res.layout.total_cells();
  res.closed_form_bound = stacked_cell_bound(res.resolved.big_c, res.layout.capacity, res.layout.tau);
  res.classic_cells = classic_cell_estimate(res.resolved.big_c, res.resolved.n, res.resolved.delta);
  res.ratio_to_classic = static_cast<double>(res.total_cells) / res.classic_cells;

  std::vector<std::string> rows;
  for (std::size_t i = 0; i < res.layout.tables.size(); ++i) {
    const auto& t = res.layout.tables[i];
    const bool single = i < res.layout.single_rows;
    rows.push_back(std::to_string(i) + "," + (single ? "row" : "group") + "," + std::to_string(t.rows) + "," +
                   std::to_string(t.cols) + "," + std::to_string(t.cells()));
  }
  const Mode mode = res.resolved.mode;
  const double info_bits_per_cell =
      64.0 + std::log2(static_cast<double>(res.layout.capacity)) + std::log2(1.0 / res.resolved.delta);
  res.report.violated = static_cast<double>(res.total_cells) > res.closed_form_bound;
  res.report.summary.push_back("total_cells=" + std::to_string(res.total_cells) +
                               ",closed_form_bound=" + fmt(res.closed_form_bound) +
                               ",classic_cells=" + fmt(res.classic_cells) +
                               ",ratio_to_classic=" + fmt(res.ratio_to_classic));
  res.report.summary.push_back("tau=" + std::to_string(res.layout.tau) + ",capacity=" +
                               std::to_string(res.layout.capacity) + ",tables=" +
                               std::to_string(res.layout.tables.size()) + ",rows=" +
                               std::to_string(res.layout.total_rows()));
  res.report.summary.push_back(
      "memory_bits=" + std::to_string(res.total_cells * sizeof(Cell) * 8) + ",wire_bytes=" +
      std::to_string(envelope_size(res.layout, mode)) + ",info_bits_per_cell=" + fmt(std::ceil(info_bits_per_cell)));
  res.report.csv = render("command=space," + params_text(res.resolved), "table,kind,rows,cols,cells", rows,
                          res.report.summary);
  return res;
}

// ---------------------------------------------------------------------------
// lemma3 command: exhaustive worst case of the power-hash collision count.

// True when the signed keys cancel down to a single positively signed key;
// then both sides are the same polynomial and every base agrees.
inline bool is_identity_case(std::span<const std::uint64_t> keys, std::span<const int> signs) {
  std::map<std::uint64_t, std::int64_t> net;
  for (std::size_t i = 0; i < keys.size(); ++i) net[keys[i]] += signs[i];
  std::int64_t nonzero = 0;
  bool single_plus = false;
  for (const auto& [k, c] : net) {
    if (c != 0) {
      ++nonzero;
      single_plus = c == 1;
    }
  }
  return nonzero == 1 && single_plus;
}

struct CollisionLevel {
  std::uint64_t ell = 0;
  std::uint64_t instances = 0;
  std::uint64_t identity_cases = 0;
  std::uint64_t max_bad_bases = 0;
  std::uint64_t bound = 0;
};

struct CollisionSweep {
  std::vector<CollisionLevel> levels;
  Report report;
};

inline constexpr std::uint64_t kCollisionSweepGuard = 200'000'000;

inline CollisionSweep lemma3(std::uint64_t p, std::uint64_t q, std::uint64_t ell_max, unsigned threads = 1) {
  if (ell_max < 1) throw std::invalid_argument("lemma3: ell_max must be >= 1");
  if (!is_prime(p) || !is_prime(q) || p >= q) throw std::invalid_argument("lemma3: need primes p < q");
  CollisionSweep res;
  for (std::uint64_t ell = 1; ell <= ell_max; ++ell) {
    double work = std::pow(2.0 * static_cast<double>(p), static_cast<double>(ell)) * static_cast<double>(q) *
                  static_cast<double>(ell);
    if (work > static_cast<double>(kCollisionSweepGuard)) throw std::invalid_argument("lemma3: sweep too large");
    std::uint64_t tuples = 1;
    for (std::uint64_t i = 0; i < ell; ++i) tuples *= p;
    const std::uint64_t patterns = std::uint64_t{1} << ell;
    const std::uint64_t instances = tuples * patterns;
    struct Case {
      std::uint64_t count = 0;
      bool identity = false;
    };
    auto cases = run_trials(instances, threads, [&](std::uint64_t idx) {
      std::vector<std::uint64_t> keys(ell);
      std::vector<int> signs(ell);
      std::uint64_t tuple = idx / patterns, pattern = idx % patterns;
      for (std::uint64_t i = 0; i < ell; ++i) {
        keys[i] = tuple % p;
        tuple /= p;
        signs[i] = (pattern >> i) & 1 ? -1 : 1;
      }
      return Case{power_hash_bad_bases(p, q, keys, signs), is_identity_case(keys, signs)};
    });
    CollisionLevel level{ell, instances, 0, 0, 2 * ell * p + 1};
    for (const auto& c : cases) {
      if (c.identity) {
        ++level.identity_cases;
      } else {
        level.max_bad_bases = std::max(level.max_bad_bases, c.count);
      }
    }
    res.levels.push_back(level);
  }
  std::vector<std::string> rows;
  for (const auto& l : res.levels) {
    const bool ok = l.max_bad_bases <= l.bound;
    res.report.violated = res.report.violated || !ok;
    rows.push_back(std::to_string(l.ell) + "," + std::to_string(l.instances) + "," +
                   std::to_string(l.identity_cases) + "," + std::to_string(l.max_bad_bases) + "," +
                   std::to_string(l.bound) + "," + (ok ? "1" : "0"));
  }
  res.report.summary.push_back(std::string("all_within_bound=") + (res.report.violated ? "0" : "1") +
                               ",identity_case_bad_bases=" + std::to_string(q - 1) + " (excluded from max)");
  res.report.csv = render("command=lemma3,p=" + std::to_string(p) + ",q=" + std::to_string(q) +
                              ",ell_max=" + std::to_string(ell_max),
                          "ell,instances,identity_cases,max_bad_bases,bound_2lp_plus_1,within_bound", rows,
                          res.report.summary);
  return res;
}

// ---------------------------------------------------------------------------
// reconcile-demo: two parties exchange envelopes and recover the difference.

struct ReconcileDemoConfig {
  Params params;  // mode is forced to checksum
  std::uint64_t size_a = 1000;
  std::uint64_t size_b = 1000;
  std::uint64_t diff = 16;
  std::uint64_t seed = 1;
};

struct ReconcileDemoResult {
  Params resolved;
  std::size_t envelope_bytes = 0;
  ReconcileResult at_bob;    // Bob holds S_B and receives Alice's sketch
  ReconcileResult at_alice;  // Alice holds S_A and receives Bob's sketch
  bool exact = false;
  Report report;
  std::vector<std::string> human;
};

inline ReconcileDemoResult reconcile_demo(const ReconcileDemoConfig& cfg) {
  if (cfg.diff > cfg.size_a + cfg.size_b) throw std::invalid_argument("reconcile-demo: diff exceeds |A|+|B|");
  const std::int64_t skew = static_cast<std::int64_t>(cfg.size_a) - static_cast<std::int64_t>(cfg.size_b);
  const std::int64_t twice_a_only = static_cast<std::int64_t>(cfg.diff) + skew;
  if (twice_a_only < 0 || twice_a_only % 2 != 0) {
    throw std::invalid_argument("reconcile-demo: diff must have the parity of |A|-|B| and be >= ||A|-|B||");
  }
  const std::uint64_t a_only = static_cast<std::uint64_t>(twice_a_only / 2);
  const std::uint64_t b_only = cfg.diff - a_only;
  if (a_only > cfg.size_a || b_only > cfg.size_b) throw std::invalid_argument("reconcile-demo: diff too large");
  const std::uint64_t common = cfg.size_a - a_only;

  ReconcileDemoResult res;
  Params params = cfg.params;
  params.mode = Mode::checksum;
  params.master_seed = derive_seed(cfg.seed, 0);
  res.resolved = resolve(params);

  SeedStream rng(derive_seed(cfg.seed, 1), 0);
  const std::uint64_t limit = std::min<std::uint64_t>(res.resolved.p, KWiseHash::kFieldPrime);
  const auto all = random_pairs(rng, common + a_only + b_only, limit);
  std::vector<KeyValue> set_a(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(common + a_only));
  std::vector<KeyValue> set_b(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(common));
  set_b.insert(set_b.end(), all.begin() + static_cast<std::ptrdiff_t>(common + a_only), all.end());
  const PairSet only_a(all.begin() + static_cast<std::ptrdiff_t>(common),
                       all.begin() + static_cast<std::ptrdiff_t>(common + a_only));
  const PairSet only_b(all.begin() + static_cast<std::ptrdiff_t>(common + a_only), all.end());

  StackedSketch<KWiseHash> sketch_a(res.resolved), sketch_b(res.resolved);
  sketch_a.insert(set_a);
  sketch_b.insert(set_b);
  const auto wire_a = serialize(sketch_a);
  const auto wire_b = serialize(sketch_b);
  res.envelope_bytes = wire_a.size();
  res.at_bob = reconcile_local(set_b, wire_a, res.resolved);
  res.at_alice = reconcile_local(set_a, wire_b, res.resolved);
  const bool bob_exact = res.at_bob.complete && res.at_bob.missing_locally == only_a && res.at_bob.missing_remotely == only_b;
  const bool alice_exact =
      res.at_alice.complete && res.at_alice.missing_locally == only_b && res.at_alice.missing_remotely == only_a;
  res.exact = bob_exact && alice_exact;
  res.report.violated = cfg.diff <= res.resolved.n && !res.exact;

  auto row = [](const char* who, std::size_t bytes, const ReconcileResult& r, bool exact) {
    return std::string(who) + "," + std::to_string(bytes) + "," + std::to_string(r.missing_locally.size()) + "," +
           std::to_string(r.missing_remotely.size()) + "," + (r.complete ? "1" : "0") + "," + (exact ? "1" : "0");
  };
  std::vector<std::string> rows = {row("bob", wire_a.size(), res.at_bob, bob_exact),
                                   row("alice", wire_b.size(), res.at_alice, alice_exact)};
  res.report.summary.push_back("symmetric_difference=" + std::to_string(cfg.diff) + ",capacity_n=" +
                               std::to_string(res.resolved.n) + ",envelope_bytes=" + std::to_string(res.envelope_bytes) +
                               ",exact=" + (res.exact ? "1" : "0"));
  res.report.csv = render("command=reconcile-demo," + params_text(res.resolved) + ",size_a=" +
                              std::to_string(cfg.size_a) + ",size_b=" + std::to_string(cfg.size_b) +
                              ",diff=" + std::to_string(cfg.diff) + ",seed=" + std::to_string(cfg.seed),
                          "receiver,envelope_bytes,missing_locally,missing_remotely,complete,exact", rows,
                          res.report.summary);
  res.human.push_back("Alice holds " + std::to_string(cfg.size_a) + " pairs, Bob holds " +
                      std::to_string(cfg.size_b) + "; " + std::to_string(cfg.diff) + " differ.");
  res.human.push_back("Each party sends a " + std::to_string(res.envelope_bytes) + "-byte sketch.");
  res.human.push_back("Bob learns " + std::to_string(res.at_bob.missing_locally.size()) + " pairs they lack and " +
                      std::to_string(res.at_bob.missing_remotely.size()) + " pairs Alice lacks" +
                      (bob_exact ? " (exact)." : " (NOT exact)."));
  res.human.push_back("Alice learns " + std::to_string(res.at_alice.missing_locally.size()) +
                      " pairs they lack and " + std::to_string(res.at_alice.missing_remotely.size()) +
                      " pairs Bob lacks" + (alice_exact ? " (exact)." : " (NOT exact)."));
  return res;
}

}  // namespace siblt::experiments
