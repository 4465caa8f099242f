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

// In-process wiring of issuer, TEE, mediator, holder and relying party, and
// the timed register/authenticate runs built on it.

#ifndef FIDOAC_FLOW_FLOW_H_
#define FIDOAC_FLOW_FLOW_H_

#include <memory>
#include <optional>
#include <string>

#include "fidoac/client/client.h"
#include "fidoac/eid/chip.h"
#include "fidoac/fido/server.h"
#include "fidoac/fido/token.h"
#include "fidoac/mediator/mediator.h"

namespace fidoac::flow {

inline constexpr std::string_view kDefaultPackageName = "org.fidoac.mediator";

struct DeploymentKeys {
  primitives::KeyPair issuer;
  primitives::KeyPair tee_root;
  primitives::KeyPair mediator;
  Digest32 package_cert_fp;

  static DeploymentKeys Generate();
};

struct DeploymentOptions {
  HashProfile profile = HashProfile::kTest;
  uint32_t tau = nizk::kTestProfileTau;
  std::string package_name = std::string(kDefaultPackageName);
};

// Issuer, device TEE and mediator sharing one set of keys.
class Deployment {
 public:
  explicit Deployment(DeploymentOptions options = {},
                      DeploymentKeys keys = DeploymentKeys::Generate());
  Deployment(const Deployment&) = delete;
  Deployment& operator=(const Deployment&) = delete;

  eid::Chip Issue(const eid::Attributes& att, const eid::Date& reference) const;

  // Anchors a relying party needs to verify this deployment's proofs.
  fido::AcTrust Trust() const;

  const DeploymentOptions& options() const { return options_; }
  const DeploymentKeys& keys() const { return keys_; }
  const mediator::Mediator& mediator() const { return *mediator_; }
  const mediator::SimulatedTee& tee() const { return *tee_; }

 private:
  DeploymentOptions options_;
  DeploymentKeys keys_;
  std::unique_ptr<mediator::SimulatedTee> tee_;
  std::unique_ptr<mediator::Mediator> mediator_;
};

enum class Stage { kNone, kEidRead, kAttestation, kProve, kFidoSign, kVerify };
std::string_view StageName(Stage stage);

struct StageTimings {
  double eid_read = 0;
  double liveliness = 0;
  double prove = 0;
  double fido_sign = 0;
  double verify = 0;
  double Sum() const { return eid_read + liveliness + prove + fido_sign + verify; }
};

// Everything the holder's device returns for one challenge.
struct ExtensionOutput {
  client::AttributeProof proof;
  mediator::KeyAttestationCert mediator_cert;
  Bytes bound_challenge;
};

// Runs eID read, mediator attestation and proving for `challenge`. Throws
// Error(kNotAttested) if the mediator refuses and propagates proof errors.
// `timings` may be null.
ExtensionOutput ProduceExtension(const Deployment& d, client::Client& holder,
                                 const fido::ChallengeWithPolicy& challenge,
                                 StageTimings* timings = nullptr);

struct FlowReport {
  fido::Flow flow = fido::Flow::kRegister;
  StageTimings ms;
  double wall_ms = 0;
  bool accepted = false;
  Stage failed_stage = Stage::kNone;
  std::string error;
  fido::CheckFlowResult result;
  Bytes cid;

  // 0 accepted, 2 attestation refused, 3 proof failure, 4 FIDO check failure.
  int ExitCode() const;
  std::string ToJson() const;
};

// One full exchange. For authentication `cid` names the credential to use.
// Never throws for protocol failures; they are reported in the result.
FlowReport RunFlow(const Deployment& d, client::Client& holder, fido::Token& token,
                   fido::RelyingParty& rp, fido::Flow flow, ByteSpan cid = {});

}  // namespace fidoac::flow

#endif  // FIDOAC_FLOW_FLOW_H_
