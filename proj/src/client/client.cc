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

#include "fidoac/client/client.h"

#include "fidoac/primitives/error.h"

namespace fidoac::client {

void EidCache::Store(const eid::DataGroup1& dg1, const eid::ChipPublicData& pub) {
  if (opt_in_) entry_.emplace(dg1, pub);
}

Client::Client(eid::Chip* chip, Bytes access_password, EidCache cache)
    : chip_(chip), password_(std::move(access_password)), cache_(std::move(cache)) {}

mediator::AttestRequest Client::ReqAttest(ByteSpan c) {
  ClientSession s;
  if (cache_.has_value()) {
    std::tie(s.dg1, s.public_data) = cache_.get();
  } else if (chip_ != nullptr) {
    eid::ChannelHandle ch = chip_->EstablishChannel(password_);
    s.dg1 = chip_->ReadDataGroup1(ch);
    s.public_data = chip_->Read(ch);
    chip_->Close(ch);
    cache_.Store(s.dg1, s.public_data);
  } else {
    throw Error(ErrorCode::kNoSource, "no chip and nothing cached");
  }
  s.nonce = primitives::RandomArray<mediator::kNonceSize>();
  s.c.assign(c.begin(), c.end());
  mediator::AttestRequest req{s.public_data.dg1_hash, s.public_data.pk_eid,
                              s.public_data.pi_pa, s.c, s.nonce};
  session_ = std::move(s);
  return req;
}

primitives::Ciphertext Client::AttestResp(const mediator::MediatorChallenge& chal) {
  if (chip_ == nullptr) throw Error(ErrorCode::kNoSource, "chip authentication needs the chip");
  return chip_->CaRespond(chal.pk_m, chal.cmd_cha);
}

AttributeProof Client::Prove(const mediator::MediatorAttestation& att,
                             const nizk::Policy& policy, const nizk::Crs& crs) const {
  if (!session_) throw Error(ErrorCode::kInvalidArgument, "no session");
  return client::Prove(att, session_->nonce, session_->dg1, policy, crs);
}

AttributeProof Prove(const mediator::MediatorAttestation& att, const mediator::Nonce& nonce,
                     const eid::DataGroup1& dg1, const nizk::Policy& policy,
                     const nizk::Crs& crs) {
  if (!att.sigma_m) throw Error(ErrorCode::kNotAttested, "mediator did not sign");
  nizk::Statement stmt{att.m(), policy, crs.profile};
  nizk::Proof proof = nizk::ZkProve(crs, stmt, nizk::Witness{dg1, nonce});
  return AttributeProof{att.att_m, att.sigma_m, std::move(proof)};
}

}  // namespace fidoac::client
