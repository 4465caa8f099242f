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

// Data-driven adversaries: a script is a JSON list of oracle calls whose
// outputs are captured into named variables and can be edited before reuse.
//
//   {"name": "...", "experiment": "imp", "steps": [
//     {"op": "setup", "servers": [{"id": "...", "policy": {...}}],
//      "tokens": [{"name": "...", "birth_date": "900101", ...}, null]},
//     {"op": "start", "server": 0, "i": 0, "j": 0, "as": "c0"},
//     {"op": "challenge", "token": 0, "i": 0, "j": 0, "client": true,
//      "challenge": "$c0", "as": "r0"},
//     {"op": "complete", "server": 0, "i": 0, "j": 0, "cid": "$r0/cid",
//      "response": "$r0"}]}
//
// A string "$name/json/pointer" refers to a captured value.

#ifndef FIDOAC_HARNESS_SCRIPT_H_
#define FIDOAC_HARNESS_SCRIPT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fidoac/harness/world.h"
#include "json.hpp"

namespace fidoac::harness {

enum class Experiment { kImp, kAttUnf, kUnl, kOrigPriv, kAttPriv };
std::string_view ExperimentName(Experiment e);
// Throws Error(kInvalidArgument).
Experiment ParseExperiment(std::string_view name);

// Credential-separation strength for unlinkability.
enum class UnlLevel { kWeak, kMedium, kStrong };
std::string_view UnlLevelName(UnlLevel level);

struct Script {
  std::string name;
  Experiment experiment = Experiment::kImp;
  UnlLevel level = UnlLevel::kWeak;
  nlohmann::json steps = nlohmann::json::array();

  // Throws Error(kMalformed).
  static Script FromJson(std::string_view json);
  static Script Load(const std::string& path);
};

// Challenge-phase state of the bit-guessing experiments.
struct ChallengePhase {
  bool chosen = false;
  int bit = 0;
  int t[2] = {-1, -1};
  int s[2] = {-1, -1};  // S_L, S_R or S_0, S_1; s[0] alone for attribute privacy
  int i[2] = {0, 0};
  int j[2] = {0, 0};
  std::vector<Bytes> reg_lr;
  std::vector<Bytes> auth_lr;
  bool responded = false;
  std::optional<int> guess;
};

// Runs `script` against `world`. Oracle aborts stop the run and are reported
// through `aborted`; other protocol errors are recorded in the trace and the
// script carries on.
class Interpreter {
 public:
  Interpreter(World& world, const Script& script) : world_(world), script_(script) {}

  void Run();

  bool aborted() const { return aborted_; }
  const std::string& abort_reason() const { return abort_reason_; }
  const ChallengePhase& phase() const { return phase_; }
  const nlohmann::json& trace() const { return trace_; }

 private:
  nlohmann::json Step(const nlohmann::json& step);
  nlohmann::json Resolve(const nlohmann::json& v) const;
  nlohmann::json& Target(const std::string& ref);
  nlohmann::json LeftRight(const nlohmann::json& step, int side);

  World& world_;
  const Script& script_;
  nlohmann::json vars_ = nlohmann::json::object();
  nlohmann::json trace_ = nlohmann::json::array();
  ChallengePhase phase_;
  bool aborted_ = false;
  std::string abort_reason_;
};

}  // namespace fidoac::harness

#endif  // FIDOAC_HARNESS_SCRIPT_H_
