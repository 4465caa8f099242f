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

// Verification of an attribute proof against a relying party's challenge.

#ifndef FIDOAC_FIDO_CHECK_AC_H_
#define FIDOAC_FIDO_CHECK_AC_H_

#include <memory>
#include <string>
#include <vector>

#include "fidoac/client/attribute_proof.h"
#include "fidoac/mediator/key_attestation.h"
#include "fidoac/nizk/mpc_in_the_head.h"
#include "fidoac/nizk/policy.h"

namespace fidoac::fido {

// Static anchors of a verifier.
struct AcTrust {
  Bytes tee_root_pk;
  std::string package_name;
  Digest32 package_cert_fp;
  // Pins one mediator key when non-empty; otherwise any key the TEE attests
  // for the package is accepted.
  Bytes pk_m;
  HashProfile profile = HashProfile::kDefault;
  uint32_t tau = nizk::kDefaultProfileTau;
};

struct CheckAcResult {
  bool b_m = false;
  bool b_zkp = false;
  bool b_challenge = false;
  bool b_key_attestation = false;

  bool ok() const { return b_m && b_zkp && b_challenge && b_key_attestation; }
  // Tags of the failed checks: "b_M", "b_zkp", "b_challenge", "key_attestation".
  std::vector<std::string> FailedChecks() const;
};

// Transparent CRS for the tuple, built once per process.
std::shared_ptr<const nizk::Crs> CachedCrs(const nizk::Policy& policy, HashProfile profile,
                                           uint32_t tau);

// `c` is the mediator-facing challenge the relying party issued. Never throws.
CheckAcResult CheckAc(const client::AttributeProof& proof, const nizk::Policy& policy,
                      ByteSpan c, const mediator::KeyAttestationCert& cert,
                      const AcTrust& trust);

// Same, against an explicit CRS.
CheckAcResult CheckAc(const client::AttributeProof& proof, const nizk::Crs& crs,
                      ByteSpan c, const mediator::KeyAttestationCert& cert,
                      const AcTrust& trust);

}  // namespace fidoac::fido

#endif  // FIDOAC_FIDO_CHECK_AC_H_
