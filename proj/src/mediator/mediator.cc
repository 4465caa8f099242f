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

#include "fidoac/mediator/mediator.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"

namespace fidoac::mediator {

using primitives::Ciphertext;

Bytes AttestRequest::Encode() const {
  return Canonical({dg1_hash.span(), pk_eid, pi_pa, c, nonce});
}

AttestRequest AttestRequest::Decode(ByteSpan data) {
  CanonicalReader r(data);
  AttestRequest req;
  auto h = r.FixedField(32);
  std::copy(h.begin(), h.end(), req.dg1_hash.bytes.begin());
  req.pk_eid = r.FieldBytes();
  req.pi_pa = r.FieldBytes();
  req.c = r.FieldBytes();
  auto n = r.FixedField(kNonceSize);
  std::copy(n.begin(), n.end(), req.nonce.begin());
  r.ExpectEnd();
  return req;
}

Bytes MediatorChallenge::Encode() const {
  return Canonical({pk_m, cmd_cha.Encode()});
}

MediatorChallenge MediatorChallenge::Decode(ByteSpan data) {
  CanonicalReader r(data);
  MediatorChallenge chal;
  chal.pk_m = r.FieldBytes();
  chal.cmd_cha = Ciphertext::Decode(r.Field());
  r.ExpectEnd();
  return chal;
}

Digest32 MediatorAttestation::m() const {
  if (att_m.size() < 32) throw Error(ErrorCode::kMalformed, "att_m too short");
  Digest32 out;
  std::copy(att_m.begin(), att_m.begin() + 32, out.bytes.begin());
  return out;
}

Bytes MediatorAttestation::c_m() const {
  if (att_m.size() < 32) throw Error(ErrorCode::kMalformed, "att_m too short");
  return Bytes(att_m.begin() + 32, att_m.end());
}

// A missing signature is encoded as a zero flag and an empty field.
Bytes MediatorAttestation::Encode() const {
  CanonicalWriter w;
  w.Field(att_m).U32(sigma_m ? 1 : 0).Field(sigma_m ? ByteSpan(*sigma_m) : ByteSpan());
  return w.Take();
}

MediatorAttestation MediatorAttestation::Decode(ByteSpan data) {
  CanonicalReader r(data);
  MediatorAttestation att;
  att.att_m = r.FieldBytes();
  uint32_t has_sig = r.U32();
  Bytes sig = r.FieldBytes();
  r.ExpectEnd();
  if (has_sig > 1 || (has_sig == 0 && !sig.empty())) {
    throw Error(ErrorCode::kMalformed, "bad signature flag");
  }
  if (has_sig) att.sigma_m = std::move(sig);
  return att;
}

Bytes ComputeAttM(const AttestRequest& req, HashProfile profile) {
  Digest32 m = primitives::Hash(Concat({req.dg1_hash.span(), req.nonce}), profile);
  return Concat({m.span(), req.c});
}

Mediator::Mediator(primitives::KeyPair kp, const SimulatedTee* tee, ByteSpan issuer_pk,
                   HashProfile profile)
    : kp_(std::move(kp)),
      ke_sk_(primitives::SigningSecretKeyToKeyExchange(kp_.sk)),
      tee_(tee),
      issuer_pk_(issuer_pk.begin(), issuer_pk.end()),
      profile_(profile) {}

std::pair<AttestState, MediatorChallenge> Mediator::AttestChal(
    const AttestRequest& req) const {
  AttestState st;
  st.req_ = req;
  st.key_ses_ = primitives::KeDerive(req.pk_eid, ke_sk_);
  st.cmd_cha_ = primitives::AeSeal(st.key_ses_,
                                   primitives::RandomArray<primitives::kAeNonceSize>(),
                                   {}, AsBytes(eid::kGetChallengeCommand));
  MediatorChallenge chal{kp_.pk, st.cmd_cha_};
  return {std::move(st), std::move(chal)};
}

MediatorAttestation Mediator::Attest(AttestState& st, const Ciphertext& resp) const {
  if (st.consumed_) throw Error(ErrorCode::kStateReplay, "attestation state reused");
  st.consumed_ = true;
  eid::ChipPublicData pub{st.req_.dg1_hash, st.req_.pk_eid, st.req_.pi_pa};
  bool b_pa = eid::PaVerify(pub, issuer_pk_);
  bool b_ca = eid::CaVerify(resp, st.key_ses_, st.cmd_cha_);
  st.key_ses_ = primitives::SessionKey{};

  MediatorAttestation out;
  out.att_m = ComputeAttM(st.req_, profile_);
  if (b_pa && b_ca) out.sigma_m = primitives::Sign(kp_, out.att_m);
  return out;
}

KeyAttestationCert Mediator::AttestKey(ByteSpan challenge) const {
  if (tee_ == nullptr) throw Error(ErrorCode::kInvalidArgument, "mediator has no TEE");
  return tee_->Attest(kp_.pk, challenge);
}

bool VerifyAttestation(ByteSpan pk_m, const MediatorAttestation& att) {
  return att.sigma_m.has_value() && primitives::Verify(pk_m, att.att_m, *att.sigma_m);
}

}  // namespace fidoac::mediator
