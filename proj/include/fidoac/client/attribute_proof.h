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

#ifndef FIDOAC_CLIENT_ATTRIBUTE_PROOF_H_
#define FIDOAC_CLIENT_ATTRIBUTE_PROOF_H_

#include <optional>
#include <string>

#include "fidoac/mediator/mediator.h"
#include "fidoac/nizk/mpc_in_the_head.h"
#include "fidoac/primitives/bytes.h"

namespace fidoac::client {

// The attribute proof carried next to a FIDO response.
struct AttributeProof {
  Bytes att_m;
  std::optional<Bytes> sigma_m;
  nizk::Proof pi_zkp;

  // canonical(att_m, sigma_m, pi_zkp), an absent signature encoded as an
  // empty field. This is what the FIDO challenge commits to.
  Bytes Encode() const;
  // Throws Error(kMalformed).
  static AttributeProof Decode(ByteSpan data);

  // {"att_m": b64u, "sigma_m": b64u or null, "pi_zkp": b64u}
  std::string ToJson() const;
  // Throws Error(kMalformed).
  static AttributeProof FromJson(std::string_view json);

  mediator::MediatorAttestation attestation() const { return {att_m, sigma_m}; }
  bool operator==(const AttributeProof&) const = default;
};

}  // namespace fidoac::client

#endif  // FIDOAC_CLIENT_ATTRIBUTE_PROOF_H_
