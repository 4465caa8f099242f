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

#include <random>

#include "fidoac/acserver/acserver.h"
#include "fidoac/acserver/config.h"
#include "httplib.h"
#include "json.hpp"
#include "test_support.h"

namespace fidoac::acserver {
namespace {

using nlohmann::json;
using testing_support::CodeOf;
using testing_support::Scenario;

const std::string kAdultJson = R"({"kind":"age_over","years":18,"ref_date":"20230101"})";

struct VerifyCase {
  client::AttributeProof proof;
  nizk::Policy policy;
  Bytes challenge;
  mediator::KeyAttestationCert cert;

  std::string Body() const {
    json j{{"proof", json::parse(proof.ToJson())},
           {"policy", json::parse(policy.ToJson())},
           {"challenge", Base64UrlEncode(challenge)},
           {"mediator_cert", Base64UrlEncode(cert.Encode())}};
    return j.dump();
  }
};

class AcServerTest : public ::testing::Test {
 protected:
  AcServerTest() : server_(Config{s_.d.Trust(), 0}) {
    auto [challenge, st] = s_.rp.ChallengeAc(fido::Flow::kRegister);
    flow::ExtensionOutput ext = flow::ProduceExtension(s_.d, s_.holder, challenge);
    honest_ = {ext.proof, challenge.policy, challenge.MediatorChallenge(), ext.mediator_cert};
  }

  Scenario s_;
  AcServer server_;
  VerifyCase honest_;
};

TEST_F(AcServerTest, CrsIsDeterministic) {
  std::map<std::string, std::string> q{{"policy", kAdultJson}, {"profile", "test"},
                                       {"tau", "40"}};
  Response a = server_.HandleCrs(q);
  ASSERT_EQ(a.status, 200) << a.body;
  EXPECT_EQ(server_.HandleCrs(q), a);
  AcServer other(Config{s_.d.Trust(), 0});
  EXPECT_EQ(other.HandleCrs(q), a);
  auto crs = nizk::Crs::Decode(Base64UrlDecode(json::parse(a.body)["crs"].get<std::string>()));
  EXPECT_EQ(crs, nizk::ZkSetup(nizk::ParsePolicy(std::string_view(kAdultJson)),
                               HashProfile::kTest, 40));
}

TEST_F(AcServerTest, CrsRejectsBadQueries) {
  EXPECT_EQ(server_.HandleCrs({{"policy", R"({"kind":"nationality"})"},
                               {"profile", "test"},
                               {"tau", "40"}})
                .status,
            400);
  EXPECT_EQ(server_.HandleCrs({{"profile", "test"}, {"tau", "40"}}).status, 400);
  EXPECT_EQ(server_.HandleCrs({{"policy", kAdultJson}, {"profile", "x"}, {"tau", "4"}})
                .status,
            400);
  EXPECT_EQ(server_.HandleCrs({{"policy", kAdultJson}, {"profile", "test"}, {"tau", "0"}})
                .status,
            400);
  EXPECT_EQ(server_.HandleCrs({{"policy", kAdultJson}, {"profile", "test"}, {"tau", "4x"}})
                .status,
            400);
}

TEST_F(AcServerTest, HonestRequestVerifies) {
  Response r = server_.HandleVerify(honest_.Body());
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body), (json{{"ok", true}, {"reasons", json::array()}}));
  EXPECT_EQ(server_.HandleVerify(honest_.Body()), r);
}

TEST_F(AcServerTest, ChallengeMismatchReported) {
  // The mediator attested for c' while the key attestation names c.
  Bytes c = primitives::RandomBytes(32);
  Bytes c_prime = primitives::RandomBytes(32);
  auto [st, chal] = s_.d.mediator().AttestChal(s_.holder.ReqAttest(c_prime));
  auto att = s_.d.mediator().Attest(st, s_.holder.AttestResp(chal));
  auto crs = fido::CachedCrs(honest_.policy, HashProfile::kTest, 40);
  VerifyCase v{s_.holder.Prove(att, honest_.policy, *crs), honest_.policy, c,
               s_.d.mediator().AttestKey(c)};
  Response r = server_.HandleVerify(v.Body());
  EXPECT_EQ(json::parse(r.body), (json{{"ok", false}, {"reasons", {"b_challenge"}}}));
}

TEST_F(AcServerTest, UndecodableBodiesAre400) {
  for (std::string bad : {std::string(""), std::string("{"), std::string("[]"),
                          std::string(R"({"proof":1})")}) {
    EXPECT_EQ(server_.HandleVerify(bad).status, 400) << bad;
  }
  json j = json::parse(honest_.Body());
  j["mediator_cert"] = "AAAA";
  EXPECT_EQ(server_.HandleVerify(j.dump()).status, 400);
  j = json::parse(honest_.Body());
  j["policy"] = {{"kind", "nationality"}};
  EXPECT_EQ(server_.HandleVerify(j.dump()).status, 400);
}

TEST_F(AcServerTest, FuzzedBodiesNeverCrashAndMatchInProcess) {
  std::mt19937 rng(3);
  std::string honest = honest_.Body();
  int ok_count = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string body = honest;
    int kind = i % 4;
    if (kind == 0) {
      body[rng() % body.size()] = static_cast<char>(rng());
    } else if (kind == 1) {
      body = body.substr(0, rng() % body.size());
    } else if (kind == 2) {
      body.assign(rng() % 300, '\0');
      for (char& ch : body) ch = static_cast<char>(rng());
    } else {
      json j = json::parse(honest);
      const char* keys[] = {"proof", "policy", "challenge", "mediator_cert"};
      j.erase(keys[rng() % 4]);
      body = j.dump();
    }
    Response r = server_.HandleVerify(body);
    ASSERT_TRUE(r.status == 200 || r.status == 400) << r.status;
    if (r.status != 200) continue;
    // Anything that decoded must match the in-process verdict.
    json j = json::parse(body);
    auto proof = client::AttributeProof::FromJson(j["proof"].dump());
    auto policy = nizk::ParsePolicy(std::string_view(j["policy"].dump()));
    auto challenge = Base64UrlDecode(j["challenge"].get<std::string>());
    auto cert = mediator::KeyAttestationCert::Decode(
        Base64UrlDecode(j["mediator_cert"].get<std::string>()));
    auto expected = fido::CheckAc(proof, policy, challenge, cert, s_.d.Trust());
    json got = json::parse(r.body);
    ASSERT_EQ(got["ok"].get<bool>(), expected.ok());
    ASSERT_EQ(got["reasons"].get<std::vector<std::string>>(), expected.FailedChecks());
    ok_count += expected.ok();
  }
  // Flips in insignificant positions (whitespace-free JSON has few) may
  // still verify; the honest body itself always does.
  EXPECT_LT(ok_count, 200);
}

TEST_F(AcServerTest, ServesOverHttp) {
  int port = server_.Start(0);
  httplib::Client http("127.0.0.1", port);
  auto res = http.Post("/verify", honest_.Body(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_TRUE(json::parse(res->body)["ok"].get<bool>());
  httplib::Params q{{"policy", kAdultJson}, {"profile", "test"}, {"tau", "40"}};
  auto a = http.Get("/crs", q, httplib::Headers{});
  auto b = http.Get("/crs", q, httplib::Headers{});
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->status, 200);
  EXPECT_EQ(a->body, b->body);
  auto missing = http.Get("/crs");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 400);
  server_.Stop();
}

TEST(ConfigTest, RoundTripAndErrors) {
  flow::Deployment d;
  Config c{d.Trust(), 9000};
  Config parsed = Config::Parse(c.Format());
  EXPECT_EQ(parsed.trust.tee_root_pk, c.trust.tee_root_pk);
  EXPECT_EQ(parsed.trust.package_cert_fp, c.trust.package_cert_fp);
  EXPECT_EQ(parsed.trust.pk_m, c.trust.pk_m);
  EXPECT_EQ(parsed.trust.profile, c.trust.profile);
  EXPECT_EQ(parsed.trust.tau, c.trust.tau);
  EXPECT_EQ(parsed.port, 9000);
  EXPECT_EQ(CodeOf([] { Config::Parse("package_name=x\n"); }), ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf([] {
              Config::Parse("tee_root_pk=00\npackage_name=x\npackage_cert_fp=00\n");
            }),
            ErrorCode::kMalformed);
  Config defaults = Config::Parse(
      "tee_root_pk=00\npackage_name=x\npackage_cert_fp=" + std::string(64, 'a') + "\n");
  EXPECT_EQ(defaults.trust.profile, HashProfile::kDefault);
  EXPECT_EQ(defaults.trust.tau, nizk::kDefaultProfileTau);
  EXPECT_EQ(ResolvePort(1234, defaults), 1234);
}

}  // namespace
}  // namespace fidoac::acserver
