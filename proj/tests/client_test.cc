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

#include <gtest/gtest.h>

#include <set>

#include "fidoac/client/attribute_proof.h"
#include "fidoac/client/client.h"
#include "fidoac/primitives/error.h"

namespace fidoac::client {
namespace {

using mediator::Mediator;
using mediator::MediatorAttestation;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kMalformed;
}

const eid::Date kRef{2023, 1, 1};
const nizk::Policy kAdult = nizk::Policy::AgeOver(18, kRef);

class ClientTest : public ::testing::Test {
 protected:
  eid::Chip Issue(const std::string& birth) {
    return eid::IssCred({"Alice Example", birth, "301231", "DEU", "F", "", ""}, issuer_,
                        HashProfile::kTest, kRef);
  }

  MediatorAttestation Attest(Client& client, ByteSpan c) {
    auto [st, chal] = mediator_.AttestChal(client.ReqAttest(c));
    return mediator_.Attest(st, client.AttestResp(chal));
  }

  primitives::KeyPair issuer_ = primitives::GenerateSigningKey();
  mediator::SimulatedTee tee_{primitives::GenerateSigningKey(), "org.example.fidoac",
                              primitives::Hash(AsBytes("cert"))};
  Mediator mediator_{primitives::GenerateSigningKey(), &tee_, issuer_.pk,
                     HashProfile::kTest};
  nizk::Crs crs_ = nizk::ZkSetup(kAdult, HashProfile::kTest, nizk::kTestProfileTau);
  eid::Chip chip_ = Issue("900101");
  Bytes password_ = eid::DeriveAccessPassword(chip_.attributes());
  Bytes c_ = primitives::RandomBytes(32);
};

TEST_F(ClientTest, RequestCarriesChipPublicData) {
  Client client(&chip_, password_);
  mediator::AttestRequest req = client.ReqAttest(c_);
  EXPECT_EQ(req.dg1_hash, chip_.public_data().dg1_hash);
  EXPECT_EQ(req.dg1_hash, primitives::Hash(client.session()->dg1.bytes(), HashProfile::kTest));
  EXPECT_EQ(req.pk_eid, chip_.public_data().pk_eid);
  EXPECT_EQ(req.c, c_);
  EXPECT_EQ(req.nonce, client.session()->nonce);
  EXPECT_FALSE(chip_.channel_open());
}

TEST_F(ClientTest, WrongPasswordPropagates) {
  Client client(&chip_, primitives::RandomBytes(32));
  EXPECT_EQ(CodeOf([&] { client.ReqAttest(c_); }), ErrorCode::kAccessDenied);
}

TEST_F(ClientTest, CacheOnlyWhenOptedIn) {
  Client no_cache(&chip_, password_);
  no_cache.ReqAttest(c_);
  EXPECT_FALSE(no_cache.cache().has_value());

  Client cached(&chip_, password_, EidCache(/*opt_in=*/true));
  auto first = cached.ReqAttest(c_);
  ASSERT_TRUE(cached.cache().has_value());
  auto second = cached.ReqAttest(c_);
  EXPECT_EQ(first.dg1_hash, second.dg1_hash);
  EXPECT_EQ(first.pi_pa, second.pi_pa);
  EXPECT_NE(first.nonce, second.nonce);
}

TEST_F(ClientTest, NoSourceWithoutChipOrCache) {
  Client client(nullptr, password_);
  EXPECT_EQ(CodeOf([&] { client.ReqAttest(c_); }), ErrorCode::kNoSource);
}

TEST_F(ClientTest, NoncesAreFresh) {
  Client client(&chip_, password_, EidCache(true));
  std::set<mediator::Nonce> seen;
  for (int i = 0; i < 10000; ++i) seen.insert(client.ReqAttest(c_).nonce);
  EXPECT_EQ(seen.size(), 10000u);
}

TEST_F(ClientTest, RelaysChipAuthentication) {
  Client client(&chip_, password_);
  MediatorAttestation att = Attest(client, c_);
  EXPECT_TRUE(att.sigma_m.has_value());

  // Challenge sealed for a different mediator key.
  Mediator other(primitives::GenerateSigningKey(), &tee_, issuer_.pk, HashProfile::kTest);
  auto [st, chal] = other.AttestChal(client.ReqAttest(c_));
  auto forwarded = chal;
  forwarded.pk_m = mediator_.pk();
  EXPECT_EQ(CodeOf([&] { client.AttestResp(forwarded); }), ErrorCode::kCaReject);

  auto [st2, chal2] = mediator_.AttestChal(client.ReqAttest(c_));
  chal2.cmd_cha.body[2] ^= 4;
  EXPECT_EQ(CodeOf([&] { client.AttestResp(chal2); }), ErrorCode::kCaReject);
}

TEST_F(ClientTest, ProveEndToEnd) {
  Client client(&chip_, password_);
  MediatorAttestation att = Attest(client, c_);
  AttributeProof proof = client.Prove(att, kAdult, crs_);
  EXPECT_EQ(proof.att_m, att.att_m);
  nizk::Statement stmt{att.m(), kAdult, HashProfile::kTest};
  EXPECT_TRUE(nizk::ZkVerify(crs_, stmt, proof.pi_zkp));
}

TEST_F(ClientTest, UnsignedAttestationRefused) {
  Client client(&chip_, password_);
  MediatorAttestation att = Attest(client, c_);
  att.sigma_m.reset();
  EXPECT_EQ(CodeOf([&] { client.Prove(att, kAdult, crs_); }), ErrorCode::kNotAttested);
}

TEST_F(ClientTest, MinorCannotProveAdulthood) {
  eid::Chip minor = Issue("050102");  // 18 one day after the reference date
  Client client(&minor, eid::DeriveAccessPassword(minor.attributes()));
  MediatorAttestation att = Attest(client, c_);
  ASSERT_TRUE(att.sigma_m.has_value());
  EXPECT_EQ(CodeOf([&] { client.Prove(att, kAdult, crs_); }), ErrorCode::kNotAWitness);
}

TEST_F(ClientTest, ParsePolicyFromExtension) {
  EXPECT_EQ(nizk::ParsePolicy(AsBytes(
                R"({"kind":"age_over","years":18,"ref_date":"20230101"})")),
            kAdult);
  EXPECT_EQ(nizk::ParsePolicy(AsBytes(R"({"kind":"none"})")), nizk::Policy::None());
  std::string full = kAdult.ToJson();
  EXPECT_EQ(CodeOf([&] { nizk::ParsePolicy(AsBytes(full).first(full.size() - 3)); }),
            ErrorCode::kBadPolicy);
}

TEST_F(ClientTest, ProofEncodingsRoundTrip) {
  Client client(&chip_, password_);
  AttributeProof proof = client.Prove(Attest(client, c_), kAdult, crs_);
  EXPECT_EQ(AttributeProof::Decode(proof.Encode()), proof);
  EXPECT_EQ(AttributeProof::FromJson(proof.ToJson()), proof);
  AttributeProof unsigned_proof = proof;
  unsigned_proof.sigma_m.reset();
  EXPECT_EQ(AttributeProof::Decode(unsigned_proof.Encode()), unsigned_proof);
  EXPECT_EQ(AttributeProof::FromJson(unsigned_proof.ToJson()), unsigned_proof);
  for (const char* bad : {"", "{}", "[]", R"({"att_m":"AA","sigma_m":null})",
                          R"({"att_m":"A!","sigma_m":null,"pi_zkp":""})"}) {
    EXPECT_EQ(CodeOf([&] { AttributeProof::FromJson(bad); }), ErrorCode::kMalformed) << bad;
  }
}

TEST_F(ClientTest, OutboundMessagesCarryNoPersonalData) {
  Client client(&chip_, password_);
  const std::string name = "ALICE<EXAMPLE";
  const std::string birth = chip_.attributes().birth_date;
  for (int i = 0; i < 50; ++i) {
    mediator::AttestRequest req = client.ReqAttest(primitives::RandomBytes(32));
    auto [st, chal] = mediator_.AttestChal(req);
    MediatorAttestation att = mediator_.Attest(st, client.AttestResp(chal));
    AttributeProof proof = client.Prove(att, kAdult, crs_);
    for (const Bytes& wire : {req.Encode(), proof.Encode(), ToBytes(proof.ToJson())}) {
      ASSERT_FALSE(ContainsSubsequence(wire, AsBytes(name)));
      ASSERT_FALSE(ContainsSubsequence(wire, AsBytes(birth)));
    }
  }
}

}  // namespace
}  // namespace fidoac::client
