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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "siblt/envelope.hpp"
#include "siblt/stacked.hpp"

namespace siblt {

struct ReconcileResult {
  PairSet missing_locally;   // remote has, local lacks
  PairSet missing_remotely;  // local has, remote lacks
  bool complete = false;
  bool inconsistent = false;
};

// Subtract-then-decode against a remote sketch built with the same Params.
inline ReconcileResult reconcile_local(std::span<const KeyValue> local_set,
                                       const StackedSketch<KWiseHash>& remote,
                                       const Params& local_params) {
  const Params params = resolve(local_params);
  if (params.mode != Mode::checksum) {
    throw std::invalid_argument("reconcile: plain-mode sketches cannot absorb false deletions");
  }
  if (!(params == remote.params())) {
    throw std::invalid_argument("reconcile: remote sketch parameters differ from local ones");
  }
  StackedSketch<KWiseHash> local(params);
  local.insert(local_set);
  StackedSketch<KWiseHash> difference = remote - local;
  DecodeOutcome outcome = difference.list_entries_in_place();
  return {std::move(outcome.recovered_plus), std::move(outcome.recovered_minus), outcome.complete,
          outcome.inconsistent};
}

inline ReconcileResult reconcile_local(std::span<const KeyValue> local_set,
                                       std::span<const std::byte> remote_envelope,
                                       const Params& local_params) {
  return reconcile_local(local_set, deserialize(remote_envelope), local_params);
}

}  // namespace siblt
