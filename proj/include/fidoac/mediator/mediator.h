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

// The mediator: checks passive authentication and chip liveliness for a
// holder's eID, then signs a salted digest of DG1 together with the relying
// party's challenge. It sees hashes and public keys only, never DG1 itself.

#ifndef FIDOAC_MEDIATOR_MEDIATOR_H_
#define FIDOAC_MEDIATOR_MEDIATOR_H_

#include <array>
#include <optional>

#include "fidoac/eid/chip.h"
#include "fidoac/mediator/key_attestation.h"
#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/primitives.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac::mediator {

inline constexpr size_t kNonceSize = 16;
using Nonce = std::array<uint8_t, kNonceSize>;

struct AttestRequest {
  Digest32 dg1_hash;
  Bytes pk_eid;
  Bytes pi_pa;
  Bytes c;
  Nonce nonce{};

  Bytes Encode() const;
  static AttestRequest Decode(ByteSpan data);
  bool operator==(const AttestRequest&) const = default;
};

struct MediatorChallenge {
  Bytes pk_m;  // Ed25519
  primitives::Ciphertext cmd_cha;

  Bytes Encode() const;
  static MediatorChallenge Decode(ByteSpan data);
  bool operator==(const MediatorChallenge&) const = default;
};

struct MediatorAttestation {
  Bytes att_m;  // H(H(DG1) || nonce) || c
  std::optional<Bytes> sigma_m;

  // First 32 bytes of att_m, and the remainder. Both throw Error(kMalformed)
  // if att_m is shorter than a digest.
  Digest32 m() const;
  Bytes c_m() const;

  Bytes Encode() const;
  static MediatorAttestation Decode(ByteSpan data);
  bool operator==(const MediatorAttestation&) const = default;
};

// Session state between the challenge and the attestation. Consumed once.
class AttestState {
 public:
  const AttestRequest& request() const { return req_; }
  const primitives::Ciphertext& cmd_cha() const { return cmd_cha_; }
  bool consumed() const { return consumed_; }

 private:
  friend class Mediator;
  AttestRequest req_;
  primitives::SessionKey key_ses_;
  primitives::Ciphertext cmd_cha_;
  bool consumed_ = false;
};

Bytes ComputeAttM(const AttestRequest& req, HashProfile profile);

class Mediator {
 public:
  // `kp` is the Ed25519 mediator key; its X25519 image is used for chip
  // authentication. `tee` certifies the key per challenge.
  Mediator(primitives::KeyPair kp, const SimulatedTee* tee, ByteSpan issuer_pk,
           HashProfile profile);

  // Throws Error(kBadPoint) if req.pk_eid is not a usable X25519 key.
  std::pair<AttestState, MediatorChallenge> AttestChal(const AttestRequest& req) const;

  // Throws Error(kStateReplay) if `st` was already used. sigma_m is absent
  // unless passive and chip authentication both verify.
  MediatorAttestation Attest(AttestState& st, const primitives::Ciphertext& resp) const;

  // Key attestation for this mediator's key under `challenge`.
  KeyAttestationCert AttestKey(ByteSpan challenge) const;

  const Bytes& pk() const { return kp_.pk; }
  HashProfile profile() const { return profile_; }

 private:
  primitives::KeyPair kp_;
  Bytes ke_sk_;
  const SimulatedTee* tee_;
  Bytes issuer_pk_;
  HashProfile profile_;
};

bool VerifyAttestation(ByteSpan pk_m, const MediatorAttestation& att);

}  // namespace fidoac::mediator

#endif  // FIDOAC_MEDIATOR_MEDIATOR_H_
