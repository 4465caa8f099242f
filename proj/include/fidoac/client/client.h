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

// Holder side of an attribute disclosure: reads the eID, relays the
// mediator's liveliness challenge to the chip, and proves the policy over the
// attested digest.

#ifndef FIDOAC_CLIENT_CLIENT_H_
#define FIDOAC_CLIENT_CLIENT_H_

#include <optional>
#include <utility>

#include "fidoac/client/attribute_proof.h"
#include "fidoac/eid/chip.h"
#include "fidoac/mediator/mediator.h"
#include "fidoac/nizk/mpc_in_the_head.h"
#include "fidoac/nizk/policy.h"

namespace fidoac::client {

struct ClientSession {
  mediator::Nonce nonce{};
  eid::DataGroup1 dg1;
  eid::ChipPublicData public_data;
  Bytes c;
};

// Chip data kept between sessions. Stays empty unless the holder opted in.
class EidCache {
 public:
  explicit EidCache(bool opt_in = false) : opt_in_(opt_in) {}

  void Store(const eid::DataGroup1& dg1, const eid::ChipPublicData& pub);
  bool has_value() const { return entry_.has_value(); }
  const std::pair<eid::DataGroup1, eid::ChipPublicData>& get() const { return *entry_; }
  void Clear() { entry_.reset(); }
  bool opt_in() const { return opt_in_; }

 private:
  bool opt_in_;
  std::optional<std::pair<eid::DataGroup1, eid::ChipPublicData>> entry_;
};

class Client {
 public:
  // `chip` may be null when only cached data is available; chip
  // authentication then fails with Error(kNoSource).
  Client(eid::Chip* chip, Bytes access_password, EidCache cache = EidCache());

  // Starts a session for server challenge `c`. Reads DG1 and the public data
  // over the password channel unless cached. Throws Error(kAccessDenied) for a
  // wrong password and Error(kNoSource) with neither chip nor cache.
  mediator::AttestRequest ReqAttest(ByteSpan c);

  // Relays the mediator challenge to the chip. Throws Error(kCaReject).
  primitives::Ciphertext AttestResp(const mediator::MediatorChallenge& chal);

  // Proves `policy` for the current session. Throws Error(kNotAttested) if the
  // mediator refused, Error(kNotAWitness) if the holder does not satisfy it.
  AttributeProof Prove(const mediator::MediatorAttestation& att,
                       const nizk::Policy& policy, const nizk::Crs& crs) const;

  const std::optional<ClientSession>& session() const { return session_; }
  const EidCache& cache() const { return cache_; }

 private:
  eid::Chip* chip_;
  Bytes password_;
  EidCache cache_;
  std::optional<ClientSession> session_;
};

// Stateless form of Client::Prove.
AttributeProof Prove(const mediator::MediatorAttestation& att, const mediator::Nonce& nonce,
                     const eid::DataGroup1& dg1, const nizk::Policy& policy,
                     const nizk::Crs& crs);

}  // namespace fidoac::client

#endif  // FIDOAC_CLIENT_CLIENT_H_
