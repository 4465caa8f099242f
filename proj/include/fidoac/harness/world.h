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

// Executable oracle model: tokens with their eIDs, servers with instance
// tables, and mediator sessions, with the bookkeeping the experiments read.

#ifndef FIDOAC_HARNESS_WORLD_H_
#define FIDOAC_HARNESS_WORLD_H_

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fidoac/client/client.h"
#include "fidoac/fido/server.h"
#include "fidoac/fido/token.h"
#include "fidoac/flow/flow.h"
#include "fidoac/mediator/mediator.h"

namespace fidoac::harness {

// pi_P^{i,j}: party index, registration index, and 0 for registration or the
// authentication count.
struct Handle {
  int party = 0;
  int i = 0;
  int j = 0;
  auto operator<=>(const Handle&) const = default;
  bool registration() const { return j == 0; }
};

struct WorldOptions {
  HashProfile profile = HashProfile::kTest;
  uint32_t tau = nizk::kTestProfileTau;
  eid::Date reference{2023, 1, 1};
};

struct ServerSpec {
  std::string id;
  nizk::Policy policy;
};

// One Challenge oracle call as the token saw it.
struct TokenCall {
  Handle handle;
  std::string id_s;
  Bytes cid;  // input for authentication, output for registration
  Bytes bound_challenge;
  Bytes signature;
  Digest32 v_t;
  bool left_right = false;
};

struct ServerInstance {
  Handle handle;
  fido::ChallengeWithPolicy challenge;
  std::optional<fido::ServerState> state;
  bool completed = false;
  bool accepted = false;
  Bytes cid;
  Digest32 v_s;
};

struct MedReqOutput {
  mediator::AttestRequest req;
  mediator::Nonce nonce{};
};

// Partnering: both sides saw the same (id_S, cid, bound challenge, signature)
// and agree on whether it was a registration.
bool Partnered(const TokenCall& t, const ServerInstance& s);

class World {
 public:
  explicit World(WorldOptions options = {});
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  // Attributes left empty get a neutral placeholder record. Throws
  // Error(kAlreadySetup) on a second call.
  void Setup(const std::vector<ServerSpec>& servers,
             const std::vector<std::optional<eid::Attributes>>& tokens);

  // All oracles throw Error(kOracleAbort) on unknown parties, repeated
  // handles and ordering violations.
  fido::ChallengeWithPolicy Start(const Handle& s);

  // Token part only: `bound_challenge` is signed as is. For registration the
  // returned response carries the new cid and credential key.
  fido::BoundResponse Challenge(const Handle& t, const std::string& id_s, ByteSpan cid,
                                ByteSpan bound_challenge, bool left_right = false);

  // Client and token part: the holder of token `t` produces the attribute
  // proof for `cp` through the honest local mediator, then the token signs.
  fido::BoundResponse ChallengeWithClient(const Handle& t, ByteSpan cid,
                                          const fido::ChallengeWithPolicy& cp,
                                          bool left_right = false);

  bool Complete(const Handle& s, ByteSpan cid, const fido::BoundResponse& resp);

  MedReqOutput MedReq(int token, ByteSpan c);
  mediator::MediatorChallenge MedChal(int session, const mediator::AttestRequest& req);
  primitives::Ciphertext MedResp(int token, const mediator::MediatorChallenge& chal);
  mediator::MediatorAttestation MedAttest(int session, const primitives::Ciphertext& resp);

  // Replaces token `t`'s eID with a fresh issuance of the same attributes.
  void Reissue(int token);
  // Server and holder sides of an exchange run by the experiment itself, so
  // neither is recorded against the oracles.
  fido::ChallengeWithPolicy FreshChallenge(int server);
  MedReqOutput RequestAttestation(int token, ByteSpan c);

  bool Satisfies(int token, const nizk::Policy& policy) const;

  size_t num_tokens() const { return tokens_.size(); }
  size_t num_servers() const { return servers_.size(); }
  const ServerSpec& server_spec(int s) const;
  const std::vector<TokenCall>& token_calls() const { return token_calls_; }
  const std::map<Handle, ServerInstance>& server_instances() const { return instances_; }
  // Challenges passed to MedReq, in order.
  const std::vector<Bytes>& med_req_challenges() const { return med_req_challenges_; }
  const flow::Deployment& deployment() const { return deployment_; }
  const WorldOptions& options() const { return options_; }

 private:
  struct TokenEntry {
    eid::Attributes attributes;
    std::unique_ptr<eid::Chip> chip;
    std::unique_ptr<client::Client> holder;
    std::unique_ptr<fido::Token> token;
  };
  struct ServerEntry {
    ServerSpec spec;
    std::unique_ptr<fido::RelyingParty> rp;
    std::map<int, Bytes> c_s;  // C_S[i]
  };

  const TokenEntry& token(int t) const;
  const ServerEntry& server(int s) const;
  TokenEntry& token(int t);
  ServerEntry& server(int s);
  void ClaimTokenHandle(const Handle& t);
  void IssueChip(TokenEntry& entry);

  WorldOptions options_;
  flow::Deployment deployment_;
  bool setup_done_ = false;
  std::vector<TokenEntry> tokens_;
  std::vector<ServerEntry> servers_;
  std::map<Handle, ServerInstance> instances_;
  std::set<Handle> used_token_handles_;
  std::vector<TokenCall> token_calls_;
  std::map<int, mediator::AttestState> med_sessions_;
  std::vector<Bytes> med_req_challenges_;
};

}  // namespace fidoac::harness

#endif  // FIDOAC_HARNESS_WORLD_H_
