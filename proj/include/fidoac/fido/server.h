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

// Relying party: issues policy-carrying challenges and checks bound responses.

#ifndef FIDOAC_FIDO_SERVER_H_
#define FIDOAC_FIDO_SERVER_H_

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fidoac/fido/check_ac.h"
#include "fidoac/fido/messages.h"

namespace fidoac::fido {

// cid -> credential public key.
using RegistrationContext = std::map<Bytes, Bytes>;

class ServerState {
 public:
  const ChallengeWithPolicy& challenge() const { return challenge_; }
  Flow flow() const { return flow_; }
  bool consumed() const { return consumed_; }

 private:
  friend class RelyingParty;
  ChallengeWithPolicy challenge_;
  Flow flow_ = Flow::kRegister;
  bool consumed_ = false;
};

struct CheckFlowResult {
  bool b_fido = false;
  CheckAcResult ac;
  // Server-side partnering transcript; set whenever the response parsed.
  Digest32 transcript;

  bool ok() const { return b_fido && ac.ok(); }
};

class RelyingParty {
 public:
  RelyingParty(std::string id_s, nizk::Policy policy, AcTrust trust);

  // Throws Error(kNoCredential) for an authentication challenge while nothing
  // is registered.
  std::pair<ChallengeWithPolicy, ServerState> ChallengeAc(Flow flow) const;

  // Checks the FIDO signature over rs || H(proof), then the attribute proof.
  // A successful registration stores cid -> credential_pk. Throws
  // Error(kStateReplay) if `st` was already checked.
  CheckFlowResult CheckFlow(ServerState& st, const BoundResponse& resp);

  const std::string& id_s() const { return id_s_; }
  const nizk::Policy& policy() const { return policy_; }
  const AcTrust& trust() const { return trust_; }
  RegistrationContext rcs() const;

 private:
  std::string id_s_;
  nizk::Policy policy_;
  AcTrust trust_;
  mutable std::mutex mu_;
  RegistrationContext rcs_;
};

}  // namespace fidoac::fido

#endif  // FIDOAC_FIDO_SERVER_H_
