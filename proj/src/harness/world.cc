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

#include "fidoac/harness/world.h"

#include <utility>

#include "fidoac/primitives/error.h"

namespace fidoac::harness {
namespace {

[[noreturn]] void Abort(const std::string& what) {
  throw Error(ErrorCode::kOracleAbort, what);
}

// Stands in for a token whose holder declared no attributes.
eid::Attributes PlaceholderAttributes() {
  return {"HOLDER", "000101", "991231", "UTO", "X", "", ""};
}

}  // namespace

World::World(WorldOptions options)
    : options_(options),
      deployment_(flow::DeploymentOptions{options.profile, options.tau,
                                          std::string(flow::kDefaultPackageName)}) {}

void World::Setup(const std::vector<ServerSpec>& servers,
                  const std::vector<std::optional<eid::Attributes>>& tokens) {
  if (setup_done_) throw Error(ErrorCode::kAlreadySetup, "Setup already ran");
  setup_done_ = true;
  for (const auto& spec : servers) {
    ServerEntry e;
    e.spec = spec;
    e.rp = std::make_unique<fido::RelyingParty>(spec.id, spec.policy, deployment_.Trust());
    servers_.push_back(std::move(e));
  }
  for (const auto& att : tokens) {
    TokenEntry e;
    e.attributes = att.value_or(PlaceholderAttributes());
    IssueChip(e);
    e.token = std::make_unique<fido::Token>();
    tokens_.push_back(std::move(e));
  }
}

void World::IssueChip(TokenEntry& entry) {
  entry.chip = std::make_unique<eid::Chip>(
      deployment_.Issue(entry.attributes, options_.reference));
  entry.holder = std::make_unique<client::Client>(
      entry.chip.get(), eid::DeriveAccessPassword(entry.chip->attributes()));
}

const World::TokenEntry& World::token(int t) const {
  if (!setup_done_) Abort("Setup has not run");
  if (t < 0 || static_cast<size_t>(t) >= tokens_.size()) Abort("unknown token");
  return tokens_[t];
}

const World::ServerEntry& World::server(int s) const {
  if (!setup_done_) Abort("Setup has not run");
  if (s < 0 || static_cast<size_t>(s) >= servers_.size()) Abort("unknown server");
  return servers_[s];
}

World::TokenEntry& World::token(int t) {
  return const_cast<TokenEntry&>(std::as_const(*this).token(t));
}

World::ServerEntry& World::server(int s) {
  return const_cast<ServerEntry&>(std::as_const(*this).server(s));
}

const ServerSpec& World::server_spec(int s) const { return server(s).spec; }

fido::ChallengeWithPolicy World::Start(const Handle& s) {
  ServerEntry& e = server(s.party);
  if (s.i < 0 || s.j < 0) Abort("negative handle index");
  if (instances_.contains(s)) Abort("server handle already started");
  auto flow = s.registration() ? fido::Flow::kRegister : fido::Flow::kAuthenticate;
  auto [cp, st] = e.rp->ChallengeAc(flow);
  ServerInstance inst;
  inst.handle = s;
  inst.challenge = cp;
  inst.state = std::move(st);
  instances_.emplace(s, std::move(inst));
  return cp;
}

void World::ClaimTokenHandle(const Handle& t) {
  token(t.party);
  if (t.i < 0 || t.j < 0) Abort("negative handle index");
  if (!used_token_handles_.insert(t).second) Abort("token handle already used");
}

fido::BoundResponse World::Challenge(const Handle& t, const std::string& id_s, ByteSpan cid,
                                     ByteSpan bound_challenge, bool left_right) {
  ClaimTokenHandle(t);
  fido::Token& tok = *token(t.party).token;
  fido::BoundResponse out;
  if (t.registration()) {
    auto [new_cid, r] = tok.Register(id_s, bound_challenge);
    out.cid = std::move(new_cid);
    out.credential_pk = std::move(r.credential_pk);
    out.signature = std::move(r.signature);
  } else {
    out.cid.assign(cid.begin(), cid.end());
    out.signature = tok.Authenticate(id_s, cid, bound_challenge).signature;
  }
  TokenCall call;
  call.handle = t;
  call.id_s = id_s;
  call.cid = out.cid;
  call.bound_challenge.assign(bound_challenge.begin(), bound_challenge.end());
  call.signature = out.signature;
  call.v_t = fido::PartnerTranscript(id_s, call.cid, call.bound_challenge, call.signature);
  call.left_right = left_right;
  token_calls_.push_back(std::move(call));
  return out;
}

fido::BoundResponse World::ChallengeWithClient(const Handle& t, ByteSpan cid,
                                               const fido::ChallengeWithPolicy& cp,
                                               bool left_right) {
  // Check the handle up front but claim it only once the client part has
  // succeeded, so a refused attestation leaves it unused.
  ClaimTokenHandle(t);
  used_token_handles_.erase(t);
  TokenEntry& e = token(t.party);
  flow::ExtensionOutput ext = flow::ProduceExtension(deployment_, *e.holder, cp);
  fido::BoundResponse out = Challenge(t, cp.id_s, cid, ext.bound_challenge, left_right);
  out.proof = std::move(ext.proof);
  out.mediator_cert = std::move(ext.mediator_cert);
  return out;
}

bool World::Complete(const Handle& s, ByteSpan cid, const fido::BoundResponse& resp) {
  ServerEntry& e = server(s.party);
  auto it = instances_.find(s);
  if (it == instances_.end()) Abort("Complete before Start");
  ServerInstance& inst = it->second;
  if (inst.completed) Abort("server handle already completed");
  Bytes cid_b(cid.begin(), cid.end());
  if (!s.registration()) {
    auto c = e.c_s.find(s.i);
    if (c == e.c_s.end() || c->second != cid_b) Abort("cid does not match C_S[i]");
  }
  inst.completed = true;
  inst.cid = cid_b;
  if (s.registration()) e.c_s[s.i] = cid_b;

  fido::BoundResponse r = resp;
  r.cid = cid_b;
  fido::CheckFlowResult result;
  try {
    result = e.rp->CheckFlow(*inst.state, r);
  } catch (const Error&) {
    result = {};
  }
  inst.accepted = result.ok();
  inst.v_s = fido::PartnerTranscript(e.spec.id, r.cid, fido::BindChallenge(
                                         inst.challenge.rs, r.proof), r.signature);
  return inst.accepted;
}

MedReqOutput World::MedReq(int t, ByteSpan c) {
  MedReqOutput out = RequestAttestation(t, c);
  med_req_challenges_.emplace_back(c.begin(), c.end());
  return out;
}

MedReqOutput World::RequestAttestation(int t, ByteSpan c) {
  TokenEntry& e = token(t);
  MedReqOutput out;
  out.req = e.holder->ReqAttest(c);
  out.nonce = out.req.nonce;
  return out;
}

mediator::MediatorChallenge World::MedChal(int session, const mediator::AttestRequest& req) {
  if (!setup_done_) Abort("Setup has not run");
  if (session < 0) Abort("negative session index");
  if (med_sessions_.contains(session)) Abort("mediator session already started");
  auto [st, chal] = deployment_.mediator().AttestChal(req);
  med_sessions_.emplace(session, std::move(st));
  return chal;
}

primitives::Ciphertext World::MedResp(int t, const mediator::MediatorChallenge& chal) {
  return token(t).holder->AttestResp(chal);
}

mediator::MediatorAttestation World::MedAttest(int session,
                                               const primitives::Ciphertext& resp) {
  auto it = med_sessions_.find(session);
  if (it == med_sessions_.end()) Abort("no mediator session state");
  if (it->second.consumed()) Abort("mediator session already attested");
  return deployment_.mediator().Attest(it->second, resp);
}

fido::ChallengeWithPolicy World::FreshChallenge(int s) {
  return server(s).rp->ChallengeAc(fido::Flow::kRegister).first;
}

void World::Reissue(int t) { IssueChip(token(t)); }

bool World::Satisfies(int t, const nizk::Policy& policy) const {
  const TokenEntry& e = token(t);
  return nizk::Satisfies(policy, eid::BuildDataGroup1(e.chip->attributes()));
}

bool Partnered(const TokenCall& t, const ServerInstance& s) {
  return s.completed && t.handle.registration() == s.handle.registration() &&
         t.v_t == s.v_s;
}

}  // namespace fidoac::harness
