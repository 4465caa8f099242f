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

#include "fidoac/fido/server.h"

#include "fidoac/primitives/error.h"

namespace fidoac::fido {

RelyingParty::RelyingParty(std::string id_s, nizk::Policy policy, AcTrust trust)
    : id_s_(std::move(id_s)), policy_(std::move(policy)), trust_(std::move(trust)) {}

std::pair<ChallengeWithPolicy, ServerState> RelyingParty::ChallengeAc(Flow flow) const {
  if (flow == Flow::kAuthenticate) {
    std::lock_guard<std::mutex> lock(mu_);
    if (rcs_.empty()) throw Error(ErrorCode::kNoCredential, "nothing registered");
  }
  ServerState st;
  st.challenge_ = {id_s_, primitives::RandomBytes(kRsSize), policy_};
  st.flow_ = flow;
  ChallengeWithPolicy c = st.challenge_;
  return {std::move(c), std::move(st)};
}

CheckFlowResult RelyingParty::CheckFlow(ServerState& st, const BoundResponse& resp) {
  if (st.consumed_) throw Error(ErrorCode::kStateReplay, "server state reused");
  st.consumed_ = true;
  const ChallengeWithPolicy& ch = st.challenge_;

  CheckFlowResult r;
  Bytes bound = BindChallenge(ch.rs, resp.proof);
  Bytes payload = TokenSignedPayload(ch.id_s, bound, resp.cid);
  r.transcript = PartnerTranscript(ch.id_s, resp.cid, bound, resp.signature);

  Bytes pk;
  if (st.flow_ == Flow::kRegister) {
    pk = resp.credential_pk;
  } else {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = rcs_.find(resp.cid); it != rcs_.end()) pk = it->second;
  }
  r.b_fido = !pk.empty() && primitives::Verify(pk, payload, resp.signature);
  r.ac = CheckAc(resp.proof, ch.policy, ch.MediatorChallenge(), resp.mediator_cert, trust_);

  if (r.ok() && st.flow_ == Flow::kRegister) {
    std::lock_guard<std::mutex> lock(mu_);
    rcs_.emplace(resp.cid, pk);
  }
  return r;
}

RegistrationContext RelyingParty::rcs() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rcs_;
}

}  // namespace fidoac::fido
