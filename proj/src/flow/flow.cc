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

#include "fidoac/flow/flow.h"

#include <chrono>

#include "fidoac/primitives/error.h"
#include "json.hpp"

namespace fidoac::flow {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

DeploymentKeys DeploymentKeys::Generate() {
  return {primitives::GenerateSigningKey(), primitives::GenerateSigningKey(),
          primitives::GenerateSigningKey(),
          primitives::Hash(primitives::RandomBytes(32))};
}

Deployment::Deployment(DeploymentOptions options, DeploymentKeys keys)
    : options_(std::move(options)), keys_(std::move(keys)) {
  tee_ = std::make_unique<mediator::SimulatedTee>(keys_.tee_root, options_.package_name,
                                                  keys_.package_cert_fp);
  mediator_ = std::make_unique<mediator::Mediator>(keys_.mediator, tee_.get(),
                                                   keys_.issuer.pk, options_.profile);
}

eid::Chip Deployment::Issue(const eid::Attributes& att, const eid::Date& reference) const {
  return eid::IssCred(att, keys_.issuer, options_.profile, reference);
}

fido::AcTrust Deployment::Trust() const {
  return {keys_.tee_root.pk, options_.package_name, keys_.package_cert_fp,
          keys_.mediator.pk, options_.profile, options_.tau};
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kNone: return "none";
    case Stage::kEidRead: return "eid_read";
    case Stage::kAttestation: return "attestation";
    case Stage::kProve: return "prove";
    case Stage::kFidoSign: return "fido_sign";
    case Stage::kVerify: return "verify";
  }
  return "unknown";
}

ExtensionOutput ProduceExtension(const Deployment& d, client::Client& holder,
                                 const fido::ChallengeWithPolicy& challenge,
                                 StageTimings* timings) {
  StageTimings local;
  StageTimings& t = timings ? *timings : local;
  Bytes c = challenge.MediatorChallenge();

  auto start = Clock::now();
  mediator::AttestRequest req = holder.ReqAttest(c);
  t.eid_read = MsSince(start);

  start = Clock::now();
  auto [st, chal] = d.mediator().AttestChal(req);
  mediator::MediatorAttestation att = d.mediator().Attest(st, holder.AttestResp(chal));
  mediator::KeyAttestationCert cert = d.mediator().AttestKey(c);
  t.liveliness = MsSince(start);
  if (!att.sigma_m) throw Error(ErrorCode::kNotAttested, "mediator refused to attest");

  start = Clock::now();
  auto crs = fido::CachedCrs(challenge.policy, d.options().profile, d.options().tau);
  client::AttributeProof proof = holder.Prove(att, challenge.policy, *crs);
  t.prove = MsSince(start);

  Bytes bound = fido::BindChallenge(challenge.rs, proof);
  return {std::move(proof), std::move(cert), std::move(bound)};
}

int FlowReport::ExitCode() const {
  if (accepted) return 0;
  switch (failed_stage) {
    case Stage::kEidRead:
    case Stage::kAttestation: return 2;
    case Stage::kProve: return 3;
    default: return 4;
  }
}

std::string FlowReport::ToJson() const {
  nlohmann::json j;
  j["flow"] = fido::FlowName(flow);
  j["accepted"] = accepted;
  j["exit_code"] = ExitCode();
  j["failed_stage"] = StageName(failed_stage);
  if (!error.empty()) j["error"] = error;
  j["wall_ms"] = wall_ms;
  j["stages_ms"] = {{"eid_read", ms.eid_read},   {"liveliness", ms.liveliness},
                    {"prove", ms.prove},         {"fido_sign", ms.fido_sign},
                    {"verify", ms.verify}};
  j["verdict"] = {{"b_fido", result.b_fido},
                  {"b_M", result.ac.b_m},
                  {"b_zkp", result.ac.b_zkp},
                  {"b_challenge", result.ac.b_challenge},
                  {"key_attestation", result.ac.b_key_attestation}};
  if (!cid.empty()) j["cid"] = Base64UrlEncode(cid);
  return j.dump();
}

FlowReport RunFlow(const Deployment& d, client::Client& holder, fido::Token& token,
                   fido::RelyingParty& rp, fido::Flow flow, ByteSpan cid) {
  FlowReport report;
  report.flow = flow;
  auto wall = Clock::now();
  Stage stage = Stage::kEidRead;
  try {
    auto [challenge, st] = rp.ChallengeAc(flow);
    stage = Stage::kAttestation;
    ExtensionOutput ext;
    try {
      ext = ProduceExtension(d, holder, challenge, &report.ms);
    } catch (const Error& e) {
      // Attribute the failure to the stage that threw.
      bool proving = e.code() == ErrorCode::kNotAWitness ||
                     e.code() == ErrorCode::kUnsupportedPolicy ||
                     e.code() == ErrorCode::kInvalidArgument;
      bool reading = e.code() == ErrorCode::kAccessDenied ||
                     e.code() == ErrorCode::kNoSource;
      stage = proving ? Stage::kProve : reading ? Stage::kEidRead : Stage::kAttestation;
      throw;
    }

    stage = Stage::kFidoSign;
    auto start = Clock::now();
    fido::BoundResponse resp;
    resp.proof = std::move(ext.proof);
    resp.mediator_cert = std::move(ext.mediator_cert);
    if (flow == fido::Flow::kRegister) {
      auto [new_cid, r] = token.Register(challenge.id_s, ext.bound_challenge);
      resp.cid = std::move(new_cid);
      resp.credential_pk = std::move(r.credential_pk);
      resp.signature = std::move(r.signature);
    } else {
      resp.cid.assign(cid.begin(), cid.end());
      resp.signature = token.Authenticate(challenge.id_s, cid, ext.bound_challenge).signature;
    }
    report.ms.fido_sign = MsSince(start);

    stage = Stage::kVerify;
    start = Clock::now();
    report.result = rp.CheckFlow(st, resp);
    report.ms.verify = MsSince(start);
    report.cid = resp.cid;
    report.accepted = report.result.ok();
    if (!report.accepted) report.failed_stage = Stage::kVerify;
  } catch (const Error& e) {
    report.failed_stage = stage;
    report.error = e.what();
  }
  report.wall_ms = MsSince(wall);
  return report;
}

}  // namespace fidoac::flow
