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

// Wire types of the FIDO exchange and the challenge binding that ties a FIDO
// signature to an attribute proof.

#ifndef FIDOAC_FIDO_MESSAGES_H_
#define FIDOAC_FIDO_MESSAGES_H_

#include <string>
#include <string_view>

#include "fidoac/client/attribute_proof.h"
#include "fidoac/mediator/key_attestation.h"
#include "fidoac/nizk/policy.h"
#include "fidoac/primitives/bytes.h"

namespace fidoac::fido {

inline constexpr size_t kRsSize = 32;
inline constexpr size_t kCidSize = 16;
inline constexpr std::string_view kExtensionName = "fidoac";

enum class Flow { kRegister, kAuthenticate };
std::string_view FlowName(Flow flow);

struct ChallengeWithPolicy {
  std::string id_s;
  Bytes rs;
  nizk::Policy policy;

  // The challenge handed to the mediator: SHA-256(canonical(id_s, rs)).
  Bytes MediatorChallenge() const;

  // {"id_s": ..., "rs": b64u, "extensions": {"fidoac": <policy>}}
  std::string ToJson() const;
  // Throws Error(kMalformed) or Error(kBadPolicy).
  static ChallengeWithPolicy FromJson(std::string_view json);
  bool operator==(const ChallengeWithPolicy&) const = default;
};

Bytes MediatorChallengeFor(std::string_view id_s, ByteSpan rs);

// rs || SHA-256(proof.Encode()).
Bytes BindChallenge(ByteSpan rs, const client::AttributeProof& proof);

// Policy carried in a challenge's extension field. Same parser as the client.
nizk::Policy PolExt(ByteSpan extension);

// The bytes a token signs: canonical(id_s, bound_challenge, cid).
Bytes TokenSignedPayload(std::string_view id_s, ByteSpan bound_challenge, ByteSpan cid);

// Partnering transcript shared by token and server views of one session.
Digest32 PartnerTranscript(std::string_view id_s, ByteSpan cid, ByteSpan bound_challenge,
                           ByteSpan signature);

struct RegistrationResponse {
  Bytes credential_pk;
  Bytes signature;
};

struct AuthenticationResponse {
  Bytes signature;
};

// A token response together with the extension output. credential_pk is
// empty for authentication.
struct BoundResponse {
  Bytes cid;
  Bytes credential_pk;
  Bytes signature;
  client::AttributeProof proof;
  mediator::KeyAttestationCert mediator_cert;

  std::string ToJson() const;
  // Throws Error(kMalformed).
  static BoundResponse FromJson(std::string_view json);
  bool operator==(const BoundResponse&) const = default;
};

}  // namespace fidoac::fido

#endif  // FIDOAC_FIDO_MESSAGES_H_
