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

// The disclosure relation: m = H(H(dg1) || nonce) and dg1 satisfies the
// policy, with H the profile hash.

#ifndef FIDOAC_NIZK_RELATION_H_
#define FIDOAC_NIZK_RELATION_H_

#include <array>
#include <memory>
#include <vector>

#include "fidoac/eid/mrz.h"
#include "fidoac/nizk/circuit.h"
#include "fidoac/nizk/policy.h"
#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac::nizk {

inline constexpr size_t kNonceSize = 16;
inline constexpr uint32_t kPublicBits = 256;
inline constexpr uint32_t kWitnessBits = 8 * (eid::layout::kSize + kNonceSize);

using Nonce = std::array<uint8_t, kNonceSize>;

struct Statement {
  Digest32 m;
  Policy policy;
  HashProfile profile = HashProfile::kDefault;

  Bytes Encode() const;
};

struct Witness {
  eid::DataGroup1 dg1;
  Nonce nonce{};
};

// H(dg1_hash || nonce)
Digest32 SaltedDigest(const Digest32& dg1_hash, const Nonce& nonce, HashProfile profile);
// H(H(dg1) || nonce)
Digest32 SaltedDigest(const eid::DataGroup1& dg1, const Nonce& nonce, HashProfile profile);

bool RelationHolds(const Statement& stmt, const Witness& wit);

// Input assignments, most significant bit of each byte first.
std::vector<bool> PublicInputs(const Statement& stmt);
std::vector<bool> WitnessInputs(const Witness& wit);

// Throws Error(kUnsupportedPolicy) for age thresholds above kMaxAgeYears.
Circuit BuildCircuit(const Policy& policy, HashProfile profile);
struct CompiledCircuit {
  Circuit circuit;
  Digest32 digest;
  std::vector<uint32_t> and_wires;  // output wire of each AND, in order
};

// Memoised BuildCircuit; safe to call from several threads.
std::shared_ptr<const CompiledCircuit> CachedCircuit(const Policy& policy,
                                                     HashProfile profile);

}  // namespace fidoac::nizk

#endif  // FIDOAC_NIZK_RELATION_H_
