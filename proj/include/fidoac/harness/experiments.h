// Copyright 2026 The fidoac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Winning predicates for the five experiments and the runners that apply them
// to a script.

#ifndef FIDOAC_HARNESS_EXPERIMENTS_H_
#define FIDOAC_HARNESS_EXPERIMENTS_H_

#include <map>
#include <string>
#include <vector>

#include "fidoac/harness/script.h"
#include "fidoac/harness/world.h"
#include "json.hpp"

namespace fidoac::harness {

struct Verdict {
  Experiment experiment = Experiment::kImp;
  std::string script;
  bool win = false;
  bool aborted = false;
  std::string abort_reason;
  nlohmann::json trace;

  // {"experiment", "script", "win", "aborted", "abort_reason"?, "trace"}
  std::string ToJson() const;
};

// What the winning predicates read from a finished run.
struct Observation {
  std::vector<TokenCall> token_calls;
  std::map<Handle, ServerInstance> servers;
  std::vector<Bytes> med_req_challenges;
  std::vector<std::string> server_ids;
  std::vector<std::vector<bool>> satisfies;  // [token][server]

  static Observation Of(const World& world);
};

// An accepted authentication on a properly registered server handle that no
// token produced, or that a token produced for a different server handle.
bool ImpersonationWon(const Observation& o);
// An accepted authentication on a properly registered server handle whose
// partner token, if any, does not satisfy the server policy, and whose
// challenge never went to MedReq.
bool AttributeForgeryWon(const Observation& o);
// Guess correct, challenged instances untouched outside Left/Right, and the
// credential-separation set for `level` empty.
bool UnlinkabilityWon(const Observation& o, const ChallengePhase& phase, UnlLevel level);

// Experiments decided by a guessed bit rather than by an event.
bool IsDistinguishing(Experiment e);

// One run in a fresh world. Aborted runs never win.
Verdict RunScript(const Script& script, const WorldOptions& options = {});

struct WinRate {
  int trials = 0;
  int wins = 0;
  int aborts = 0;
  double rate() const { return trials ? static_cast<double>(wins) / trials : 0; }
};

// Independent runs, each with a fresh world and fresh experiment bit.
WinRate EstimateWinRate(const Script& script, int trials, const WorldOptions& options = {});

// Field names and byte lengths of a mediator-facing view, with `drop` removed.
// Two views with equal shapes differ only in the values of their fields.
nlohmann::json ViewShape(const nlohmann::json& view,
                         const std::vector<std::string>& drop = {});

}  // namespace fidoac::harness

#endif  // FIDOAC_HARNESS_EXPERIMENTS_H_
