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

#include "fidoac/mediator/key_attestation.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"

namespace fidoac::mediator {

Bytes KeyAttestationCert::SignedPayload() const {
  return Canonical({AsBytes("fidoac/key-attestation/v1"), pk_m, AsBytes(package_name),
                    package_cert_fp.span(), attestation_challenge});
}

Bytes KeyAttestationCert::Encode() const {
  return Canonical({pk_m, AsBytes(package_name), package_cert_fp.span(),
                    attestation_challenge, root_sig});
}

KeyAttestationCert KeyAttestationCert::Decode(ByteSpan data) {
  CanonicalReader r(data);
  KeyAttestationCert cert;
  cert.pk_m = r.FieldBytes();
  cert.package_name = r.FieldString();
  auto fp = r.FixedField(32);
  std::copy(fp.begin(), fp.end(), cert.package_cert_fp.bytes.begin());
  cert.attestation_challenge = r.FieldBytes();
  cert.root_sig = r.FieldBytes();
  r.ExpectEnd();
  return cert;
}

KeyAttestationCert IssueKeyAttestation(ByteSpan pk_m, std::string_view package_name,
                                       const Digest32& package_cert_fp,
                                       ByteSpan challenge,
                                       const primitives::KeyPair& root) {
  KeyAttestationCert cert;
  cert.pk_m.assign(pk_m.begin(), pk_m.end());
  cert.package_name = std::string(package_name);
  cert.package_cert_fp = package_cert_fp;
  cert.attestation_challenge.assign(challenge.begin(), challenge.end());
  cert.root_sig = primitives::Sign(root, cert.SignedPayload());
  return cert;
}

bool VerifyKeyAttestation(const KeyAttestationCert& cert,
                          const KeyAttestationExpectation& expected,
                          ByteSpan root_pk) {
  return cert.package_name == expected.package_name &&
         cert.package_cert_fp == expected.package_cert_fp &&
         cert.attestation_challenge == expected.challenge &&
         primitives::Verify(root_pk, cert.SignedPayload(), cert.root_sig);
}

SimulatedTee::SimulatedTee(primitives::KeyPair root, std::string package_name,
                           Digest32 package_cert_fp)
    : root_(std::move(root)),
      package_name_(std::move(package_name)),
      package_cert_fp_(package_cert_fp) {}

KeyAttestationCert SimulatedTee::Attest(ByteSpan pk_m, ByteSpan challenge) const {
  return IssueKeyAttestation(pk_m, package_name_, package_cert_fp_, challenge, root_);
}

}  // namespace fidoac::mediator
