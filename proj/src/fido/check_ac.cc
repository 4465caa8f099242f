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

#include "fidoac/fido/check_ac.h"

#include <map>
#include <mutex>
#include <tuple>

#include "fidoac/primitives/error.h"

namespace fidoac::fido {

std::vector<std::string> CheckAcResult::FailedChecks() const {
  std::vector<std::string> out;
  if (!b_m) out.push_back("b_M");
  if (!b_zkp) out.push_back("b_zkp");
  if (!b_challenge) out.push_back("b_challenge");
  if (!b_key_attestation) out.push_back("key_attestation");
  return out;
}

std::shared_ptr<const nizk::Crs> CachedCrs(const nizk::Policy& policy, HashProfile profile,
                                           uint32_t tau) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, HashProfile, uint32_t>,
                  std::shared_ptr<const nizk::Crs>>
      cache;
  auto key = std::make_tuple(policy.ToJson(), profile, tau);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto crs = std::make_shared<const nizk::Crs>(nizk::ZkSetup(policy, profile, tau));
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() >= 64) cache.clear();
  return cache.emplace(key, crs).first->second;
}

CheckAcResult CheckAc(const client::AttributeProof& proof, const nizk::Policy& policy,
                      ByteSpan c, const mediator::KeyAttestationCert& cert,
                      const AcTrust& trust) {
  std::shared_ptr<const nizk::Crs> crs;
  try {
    crs = CachedCrs(policy, trust.profile, trust.tau);
  } catch (const Error&) {
    CheckAcResult r;
    r.b_zkp = false;
    return r;
  }
  return CheckAc(proof, *crs, c, cert, trust);
}

CheckAcResult CheckAc(const client::AttributeProof& proof, const nizk::Crs& crs,
                      ByteSpan c, const mediator::KeyAttestationCert& cert,
                      const AcTrust& trust) {
  CheckAcResult r;
  r.b_key_attestation =
      (trust.pk_m.empty() || cert.pk_m == trust.pk_m) &&
      mediator::VerifyKeyAttestation(
          cert, {trust.package_name, trust.package_cert_fp, Bytes(c.begin(), c.end())},
          trust.tee_root_pk);
  r.b_m = proof.sigma_m.has_value() &&
          primitives::Verify(cert.pk_m, proof.att_m, *proof.sigma_m);
  if (proof.att_m.size() < 32) return r;

  mediator::MediatorAttestation att = proof.attestation();
  Bytes c_m = att.c_m();
  r.b_challenge = c_m.size() == c.size() && std::equal(c_m.begin(), c_m.end(), c.begin());
  r.b_zkp = crs.profile == trust.profile &&
            nizk::ZkVerify(crs, nizk::Statement{att.m(), crs.policy, crs.profile},
                           proof.pi_zkp);
  return r;
}

}  // namespace fidoac::fido
