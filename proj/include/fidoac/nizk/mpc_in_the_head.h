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

// Non-interactive proofs for the disclosure relation: MPC-in-the-head over the
// relation circuit with three parties, two views opened per repetition and a
// Fiat-Shamir challenge. Views are committed with Pedersen commitments on
// ristretto255, which lets a setup that keeps log_G(H) simulate proofs.

#ifndef FIDOAC_NIZK_MPC_IN_THE_HEAD_H_
#define FIDOAC_NIZK_MPC_IN_THE_HEAD_H_

#include <array>
#include <cstdint>
#include <optional>

#include "fidoac/nizk/policy.h"
#include "fidoac/nizk/relation.h"
#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac::nizk {

inline constexpr uint32_t kDefaultProfileTau = 137;
inline constexpr uint32_t kTestProfileTau = 40;
uint32_t DefaultTau(HashProfile profile);

enum class CrsMode : uint8_t { kTransparent = 0, kSimulation = 1 };

struct Crs {
  Policy policy;
  HashProfile profile = HashProfile::kDefault;
  uint32_t tau = 0;
  Digest32 circuit_digest;
  std::array<uint8_t, 32> h{};  // second commitment generator
  Bytes seed;
  CrsMode mode = CrsMode::kTransparent;

  Bytes Encode() const;
  // Throws Error(kMalformed).
  static Crs Decode(ByteSpan data);
  Digest32 Digest() const;
  bool operator==(const Crs&) const = default;
};

struct Trapdoor {
  std::array<uint8_t, 32> scalar{};
};

struct SimulationSetup {
  Crs crs;
  Trapdoor trapdoor;
};

struct Proof {
  Bytes bytes;
  bool operator==(const Proof&) const = default;
};

// Deterministic in all arguments. Throws Error(kInvalidArgument) for tau = 0
// and Error(kUnsupportedPolicy) for policies the circuit cannot express.
Crs ZkSetup(const Policy& policy, HashProfile profile, uint32_t tau, ByteSpan seed = {});
// Same CRS shape, but H is sampled as td * G and td is returned.
SimulationSetup ZkSetupWithTrapdoor(const Policy& policy, HashProfile profile,
                                    uint32_t tau);

// Throws Error(kNotAWitness) if the relation does not hold and
// Error(kInvalidArgument) if the statement does not match the CRS.
Proof ZkProve(const Crs& crs, const Statement& stmt, const Witness& wit);
// Never throws.
bool ZkVerify(const Crs& crs, const Statement& stmt, const Proof& proof);
// Throws Error(kNoTrapdoor) without a trapdoor matching the CRS.
Proof ZkSimulate(const Crs& crs, const Statement& stmt,
                 const std::optional<Trapdoor>& trapdoor);

namespace testing {

// Runs the prover on a non-witness. In every repetition one party, chosen
// uniformly, flips its share of the output so the shares reconstruct to 1.
// A repetition is caught only when the challenge makes the verifier recompute
// that party's view.
Proof CheatingProve(const Crs& crs, const Statement& stmt, const Witness& wit);

}  // namespace testing

}  // namespace fidoac::nizk

#endif  // FIDOAC_NIZK_MPC_IN_THE_HEAD_H_
