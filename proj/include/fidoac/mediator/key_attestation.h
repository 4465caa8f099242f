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

// Simulated hardware key attestation. A software root key stands in for the
// TEE vendor root and certifies that a mediator key belongs to a given app
// package and was attested for a given challenge.

#ifndef FIDOAC_MEDIATOR_KEY_ATTESTATION_H_
#define FIDOAC_MEDIATOR_KEY_ATTESTATION_H_

#include <string>

#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::mediator {

struct KeyAttestationCert {
  Bytes pk_m;
  std::string package_name;
  Digest32 package_cert_fp;
  Bytes attestation_challenge;
  Bytes root_sig;

  Bytes SignedPayload() const;
  Bytes Encode() const;
  // Throws Error(kMalformed).
  static KeyAttestationCert Decode(ByteSpan data);
  bool operator==(const KeyAttestationCert&) const = default;
};

// What a verifier pins: the app identity and the challenge it issued.
struct KeyAttestationExpectation {
  std::string package_name;
  Digest32 package_cert_fp;
  Bytes challenge;
};

KeyAttestationCert IssueKeyAttestation(ByteSpan pk_m, std::string_view package_name,
                                       const Digest32& package_cert_fp,
                                       ByteSpan challenge,
                                       const primitives::KeyPair& root);

bool VerifyKeyAttestation(const KeyAttestationCert& cert,
                          const KeyAttestationExpectation& expected,
                          ByteSpan root_pk);

// The device TEE: holds the root key and certifies keys for one package.
class SimulatedTee {
 public:
  SimulatedTee(primitives::KeyPair root, std::string package_name,
               Digest32 package_cert_fp);

  KeyAttestationCert Attest(ByteSpan pk_m, ByteSpan challenge) const;

  const Bytes& root_pk() const { return root_.pk; }
  const std::string& package_name() const { return package_name_; }
  const Digest32& package_cert_fp() const { return package_cert_fp_; }

 private:
  primitives::KeyPair root_;
  std::string package_name_;
  Digest32 package_cert_fp_;
};

}  // namespace fidoac::mediator

#endif  // FIDOAC_MEDIATOR_KEY_ATTESTATION_H_
