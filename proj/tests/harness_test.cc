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

#include <string>

#include "fidoac/harness/experiments.h"
#include "fidoac/primitives/error.h"
#include "json.hpp"
#include "test_support.h"

namespace fidoac::harness {
namespace {

using nlohmann::json;
using testing_support::CodeOf;

const eid::Date kRef{2023, 1, 1};

std::string ScriptPath(const std::string& name) {
  return std::string(FIDOAC_TESTDATA_DIR) + "/scripts/" + name + ".json";
}

Verdict RunNamed(const std::string& name) { return RunScript(Script::Load(ScriptPath(name))); }

const json& StepResult(const Verdict& v, const std::string& as_op, int nth_from_end = 0) {
  int seen = 0;
  for (auto it = v.trace.rbegin(); it != v.trace.rend(); ++it) {
    if ((*it)["op"] == as_op && seen++ == nth_from_end) return *it;
  }
  static const json kNull;
  return kNull;
}

class WorldTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world.Setup({{"https://a.example", nizk::Policy::AgeOver(18, kRef)},
                 {"https://b.example", nizk::Policy::None()}},
                {eid::Attributes{"Alice Example", "900101", "301231", "DEU", "F", "", ""},
                 eid::Attributes{"Bob Minor", "100101", "301231", "DEU", "M", "", ""},
                 std::nullopt});
  }
  World world;
};

TEST_F(WorldTest, PlaceholderTokenMeetsTheEmptyPolicy) {
  EXPECT_TRUE(world.Satisfies(2, nizk::Policy::None()));
  auto cp = world.Start({1, 0, 0});
  auto resp = world.ChallengeWithClient({2, 0, 0}, {}, cp);
  EXPECT_TRUE(world.Complete({1, 0, 0}, resp.cid, resp));
}

TEST_F(WorldTest, SetupRunsOnce) {
  EXPECT_EQ(CodeOf([&] { world.Setup({}, {}); }), ErrorCode::kAlreadySetup);
}

TEST(WorldBareTest, OraclesAbortBeforeSetup) {
  World w;
  EXPECT_EQ(CodeOf([&] { w.Start({0, 0, 0}); }), ErrorCode::kOracleAbort);
  EXPECT_EQ(CodeOf([&] { w.MedReq(0, Bytes(32)); }), ErrorCode::kOracleAbort);
}

TEST_F(WorldTest, CompleteRequiresStartAndRunsOnce) {
  fido::BoundResponse r;
  EXPECT_EQ(CodeOf([&] { world.Complete({0, 0, 0}, Bytes(16), r); }),
            ErrorCode::kOracleAbort);
  auto cp = world.Start({0, 0, 0});
  auto resp = world.ChallengeWithClient({0, 0, 0}, {}, cp);
  EXPECT_TRUE(world.Complete({0, 0, 0}, resp.cid, resp));
  EXPECT_EQ(CodeOf([&] { world.Complete({0, 0, 0}, resp.cid, resp); }),
            ErrorCode::kOracleAbort);
  EXPECT_EQ(CodeOf([&] { world.Start({0, 0, 0}); }), ErrorCode::kOracleAbort);
}

TEST_F(WorldTest, AuthenticationCompleteChecksRegisteredCid) {
  auto cp = world.Start({0, 0, 0});
  auto reg = world.ChallengeWithClient({0, 0, 0}, {}, cp);
  ASSERT_TRUE(world.Complete({0, 0, 0}, reg.cid, reg));
  auto ap = world.Start({0, 0, 1});
  auto auth = world.ChallengeWithClient({0, 0, 1}, reg.cid, ap);
  Bytes other = reg.cid;
  other[0] ^= 1;
  EXPECT_EQ(CodeOf([&] { world.Complete({0, 0, 1}, other, auth); }),
            ErrorCode::kOracleAbort);
  // The abort left the handle usable.
  EXPECT_TRUE(world.Complete({0, 0, 1}, reg.cid, auth));
  // No registration on index 1.
  world.Start({0, 1, 1});
  EXPECT_EQ(CodeOf([&] { world.Complete({0, 1, 1}, reg.cid, auth); }),
            ErrorCode::kOracleAbort);
}

TEST_F(WorldTest, TokenHandlesAreOnceOnly) {
  auto cp = world.Start({1, 0, 0});
  world.ChallengeWithClient({1, 0, 0}, {}, cp);
  EXPECT_EQ(CodeOf([&] { world.Challenge({1, 0, 0}, cp.id_s, {}, Bytes(40)); }),
            ErrorCode::kOracleAbort);
  EXPECT_EQ(CodeOf([&] { world.Challenge({7, 0, 0}, cp.id_s, {}, Bytes(40)); }),
            ErrorCode::kOracleAbort);
}

TEST_F(WorldTest, RefusedClientPartLeavesHandleUnused) {
  auto cp = world.Start({0, 0, 0});
  EXPECT_EQ(CodeOf([&] { world.ChallengeWithClient({1, 0, 0}, {}, cp); }),
            ErrorCode::kNotAWitness);
  EXPECT_NO_THROW(world.Challenge({1, 0, 0}, cp.id_s, {}, Bytes(40)));
}

TEST_F(WorldTest, HonestExchangeIsPartnered) {
  auto cp = world.Start({0, 0, 0});
  auto resp = world.ChallengeWithClient({0, 0, 0}, {}, cp);
  ASSERT_TRUE(world.Complete({0, 0, 0}, resp.cid, resp));
  const auto& inst = world.server_instances().at({0, 0, 0});
  ASSERT_EQ(world.token_calls().size(), 1u);
  EXPECT_TRUE(Partnered(world.token_calls()[0], inst));
  // A registration transcript never partners with an authentication handle.
  ServerInstance auth = inst;
  auth.handle.j = 1;
  EXPECT_FALSE(Partnered(world.token_calls()[0], auth));
}

TEST_F(WorldTest, MediatorSessionsAreOnceOnly) {
  auto out = world.MedReq(0, Bytes(32, 7));
  auto chal = world.MedChal(0, out.req);
  EXPECT_EQ(CodeOf([&] { world.MedChal(0, out.req); }), ErrorCode::kOracleAbort);
  EXPECT_EQ(CodeOf([&] { world.MedAttest(1, {}); }), ErrorCode::kOracleAbort);
  auto att = world.MedAttest(0, world.MedResp(0, chal));
  EXPECT_TRUE(att.sigma_m.has_value());
  EXPECT_EQ(CodeOf([&] { world.MedAttest(0, {}); }), ErrorCode::kOracleAbort);
  ASSERT_EQ(world.med_req_challenges().size(), 1u);
}

TEST_F(WorldTest, ReissueChangesPublicDataButNotAttributes) {
  auto before = world.RequestAttestation(0, Bytes(32));
  world.Reissue(0);
  auto after = world.RequestAttestation(0, Bytes(32));
  EXPECT_NE(before.req.dg1_hash, after.req.dg1_hash);
  EXPECT_NE(before.req.pk_eid, after.req.pk_eid);
  EXPECT_TRUE(world.Satisfies(0, nizk::Policy::AgeOver(18, kRef)));
}

// Predicates over hand-built observations, so that winning runs can be
// checked without breaking the protocol.
class PredicateTest : public ::testing::Test {
 protected:
  static TokenCall Call(Handle h, const std::string& id_s, uint8_t tag, bool lr = false) {
    TokenCall t;
    t.handle = h;
    t.id_s = id_s;
    t.cid = Bytes(16, tag);
    t.v_t.bytes.fill(tag);
    t.left_right = lr;
    return t;
  }
  static ServerInstance Inst(Handle h, uint8_t tag, bool accepted) {
    ServerInstance s;
    s.handle = h;
    s.completed = true;
    s.accepted = accepted;
    s.cid = Bytes(16, tag);
    s.v_s.bytes.fill(tag);
    return s;
  }
  void SetUp() override {
    o.server_ids = {"https://a.example", "https://b.example"};
    o.satisfies = {{true, true}, {false, true}};
    o.token_calls.push_back(Call({0, 0, 0}, "https://a.example", 1));
    o.servers[{0, 0, 0}] = Inst({0, 0, 0}, 1, true);
  }
  Observation o;
};

TEST_F(PredicateTest, HonestAuthenticationLoses) {
  o.token_calls.push_back(Call({0, 0, 1}, "https://a.example", 2));
  o.servers[{0, 0, 1}] = Inst({0, 0, 1}, 2, true);
  EXPECT_FALSE(ImpersonationWon(o));
  EXPECT_FALSE(AttributeForgeryWon(o));
}

TEST_F(PredicateTest, UnpartneredAcceptanceWins) {
  o.servers[{0, 0, 1}] = Inst({0, 0, 1}, 9, true);
  EXPECT_TRUE(ImpersonationWon(o));
  EXPECT_TRUE(AttributeForgeryWon(o));
  o.servers[{0, 0, 1}].accepted = false;
  EXPECT_FALSE(ImpersonationWon(o));
}

TEST_F(PredicateTest, RegistrationMustBePartnered) {
  o.servers[{0, 0, 0}].v_s.bytes.fill(5);
  o.servers[{0, 0, 1}] = Inst({0, 0, 1}, 9, true);
  EXPECT_FALSE(ImpersonationWon(o));
  EXPECT_FALSE(AttributeForgeryWon(o));
}

TEST_F(PredicateTest, DoublyPartneredTokenWinsImpersonation) {
  o.token_calls.push_back(Call({0, 0, 1}, "https://a.example", 2));
  o.servers[{0, 0, 1}] = Inst({0, 0, 1}, 2, true);
  o.servers[{0, 0, 2}] = Inst({0, 0, 2}, 2, false);
  EXPECT_TRUE(ImpersonationWon(o));
}

TEST_F(PredicateTest, UnqualifiedPartnerWinsAttributeForgery) {
  o.token_calls[0].handle.party = 1;
  o.token_calls.push_back(Call({1, 0, 1}, "https://a.example", 2));
  o.servers[{0, 0, 1}] = Inst({0, 0, 1}, 2, true);
  EXPECT_FALSE(ImpersonationWon(o));
  EXPECT_TRUE(AttributeForgeryWon(o));
  // Unless the challenge was run through MedReq.
  o.med_req_challenges.push_back(o.servers[{0, 0, 1}].challenge.MediatorChallenge());
  EXPECT_FALSE(AttributeForgeryWon(o));
}

TEST_F(PredicateTest, UnlinkabilityNeedsCorrectGuess) {
  ChallengePhase p;
  p.chosen = true;
  p.t[0] = 0;
  p.t[1] = 1;
  p.s[0] = 0;
  p.s[1] = 1;
  p.i[0] = 1;
  p.bit = 1;
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kStrong));
  p.guess = 0;
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kStrong));
  p.guess = 1;
  EXPECT_TRUE(UnlinkabilityWon(o, p, UnlLevel::kStrong));
  // Touching a challenged instance outside Left/Right breaks freshness.
  o.token_calls.push_back(Call({1, 0, 3}, "https://b.example", 3));
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kStrong));
}

TEST_F(PredicateTest, CredentialSeparationLevels) {
  ChallengePhase p;
  p.chosen = true;
  p.t[0] = 0;
  p.t[1] = 1;
  p.s[0] = 0;
  p.s[1] = 1;
  p.i[0] = 1;
  p.bit = 0;
  p.guess = 0;
  Bytes reg_ch = o.token_calls[0].cid;

  // Left/Right authenticates with a cid registered outside: every level
  // forbids it.
  p.auth_lr = {reg_ch};
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kWeak));
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kMedium));
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kStrong));

  // Only the registrations overlap: weak forbids, medium and strong allow.
  p.auth_lr.clear();
  p.reg_lr = {reg_ch};
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kWeak));
  EXPECT_TRUE(UnlinkabilityWon(o, p, UnlLevel::kMedium));
  EXPECT_TRUE(UnlinkabilityWon(o, p, UnlLevel::kStrong));

  // Both sides authenticate with the same outside cid: medium forbids.
  p.reg_lr.clear();
  o.token_calls.push_back(Call({0, 5, 1}, "https://b.example", 4));
  p.auth_lr = {o.token_calls.back().cid};
  EXPECT_FALSE(UnlinkabilityWon(o, p, UnlLevel::kMedium));
  EXPECT_TRUE(UnlinkabilityWon(o, p, UnlLevel::kStrong));
}

// Script runs.

TEST(ScriptTest, HonestRelaysLoseEveryExperiment) {
  for (const char* name : {"imp_honest_relay", "attunf_honest_relay", "unl_honest_relay",
                           "origpriv_honest_relay", "attpriv_honest_relay"}) {
    Verdict v = RunNamed(name);
    EXPECT_FALSE(v.aborted) << name << ": " << v.abort_reason;
    EXPECT_FALSE(v.win) << name;
  }
}

TEST(ScriptTest, HonestRelayAccepts) {
  Verdict v = RunNamed("imp_honest_relay");
  EXPECT_EQ(StepResult(v, "complete", 0)["result"]["accepted"], true);
  EXPECT_EQ(StepResult(v, "complete", 1)["result"]["accepted"], true);
  Verdict u = RunNamed("unl_honest_relay");
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(StepResult(u, "complete", k)["result"]["accepted"], true) << k;
  }
  Verdict a = RunNamed("attunf_honest_relay");
  EXPECT_EQ(StepResult(a, "challenge")["error"], "NotAWitness");
}

TEST(ScriptTest, MediatorRefusesForgedSessions) {
  for (const char* name : {"attunf_fake_dso", "attunf_dg_tamper", "attunf_clone_without_ask",
                           "attunf_ca_replay"}) {
    Verdict v = RunNamed(name);
    ASSERT_FALSE(v.aborted) << name << ": " << v.abort_reason;
    EXPECT_FALSE(v.win) << name;
    const json& att = StepResult(v, "med_attest");
    ASSERT_TRUE(att.contains("result")) << name << " " << att.dump();
    EXPECT_TRUE(att["result"]["sigma_m"].is_null()) << name;
  }
}

TEST(ScriptTest, ForgedProofsAreRejected) {
  for (const char* name : {"attunf_stale_proof", "attunf_random_sigma", "imp_proof_splice",
                           "imp_challenge_replay"}) {
    Verdict v = RunNamed(name);
    ASSERT_FALSE(v.aborted) << name << ": " << v.abort_reason;
    EXPECT_FALSE(v.win) << name;
    EXPECT_EQ(StepResult(v, "complete")["result"]["accepted"], false) << name;
  }
}

TEST(ScriptTest, PreconditionViolationAborts) {
  Script s = Script::FromJson(R"({"experiment": "imp", "steps": [
      {"op": "setup", "servers": [{"id": "https://a.example"}], "tokens": [null]},
      {"op": "challenge", "token": 0, "i": 0, "j": 0, "id_s": "https://a.example",
       "bound_challenge": "AAAA", "as": "r"},
      {"op": "complete", "server": 0, "i": 0, "j": 0, "cid": "$r/cid", "response": "$r"}]})");
  Verdict v = RunScript(s);
  EXPECT_TRUE(v.aborted);
  EXPECT_FALSE(v.win);

  Script twice = Script::FromJson(R"({"experiment": "imp", "steps": [
      {"op": "setup", "servers": [], "tokens": []},
      {"op": "setup", "servers": [], "tokens": []}]})");
  EXPECT_TRUE(RunScript(twice).aborted);

  Script unbound = Script::FromJson(R"({"experiment": "imp", "steps": [
      {"op": "setup", "servers": [], "tokens": []},
      {"op": "med_req", "token": 0, "c": "$nothing"}]})");
  EXPECT_TRUE(RunScript(unbound).aborted);
}

TEST(ScriptTest, MalformedScriptsAreRejected) {
  EXPECT_EQ(CodeOf([] { Script::FromJson("{"); }), ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf([] { Script::FromJson(R"({"experiment": "nope", "steps": []})"); }),
            ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf([] { Script::FromJson(R"({"experiment": "unl", "unl_level": "x",
                                             "steps": []})"); }),
            ErrorCode::kMalformed);
}

TEST(ScriptTest, ProtocolErrorsDoNotAbort) {
  Script s = Script::FromJson(R"({"experiment": "imp", "steps": [
      {"op": "setup", "servers": [{"id": "https://a.example"}], "tokens": [null]},
      {"op": "start", "server": 0, "i": 0, "j": 1, "as": "c"},
      {"op": "guess", "rule": "constant", "bit": 1}]})");
  Verdict v = RunScript(s);
  EXPECT_FALSE(v.aborted);
  EXPECT_EQ(v.trace[1]["error"], "NoCredential");
}

TEST(ScriptTest, LeftRightAbortOnPolicyMismatch) {
  Script s = Script::FromJson(R"({"experiment": "unl", "steps": [
      {"op": "setup", "servers": [{"id": "https://a.example"},
         {"id": "https://b.example", "policy": {"kind": "age_over", "years": 18,
                                                "ref_date": "20230101"}}],
       "tokens": [null, null]},
      {"op": "unl_choose", "t0": 0, "t1": 1, "sl": 0, "sr": 1},
      {"op": "start", "server": 0, "i": 0, "j": 0, "as": "c"},
      {"op": "right", "challenge": "$c"}]})");
  Verdict v = RunScript(s);
  EXPECT_TRUE(v.aborted);
  EXPECT_NE(v.abort_reason.find("policy"), std::string::npos);
}

TEST(ScriptTest, UnlChooseRequiresMatchingQualification) {
  Script s = Script::FromJson(R"({"experiment": "unl", "steps": [
      {"op": "setup", "servers": [{"id": "https://a.example", "policy":
          {"kind": "age_over", "years": 18, "ref_date": "20230101"}}],
       "tokens": [{"name": "A", "birth_date": "900101"},
                  {"name": "B", "birth_date": "100101"}]},
      {"op": "unl_choose", "t0": 0, "t1": 1, "sl": 0, "sr": 0}]})");
  EXPECT_TRUE(RunScript(s).aborted);
}

// The distinguishers have no edge; the rate check here is loose and the
// acceptance run uses n = 1000.
TEST(ScriptTest, DistinguishersAreNearCoinFlip) {
  for (const char* name : {"origpriv_challenge_parity", "attpriv_stale_hash"}) {
    WinRate r = EstimateWinRate(Script::Load(ScriptPath(name)), 200);
    EXPECT_EQ(r.aborts, 0) << name;
    EXPECT_NEAR(r.rate(), 0.5, 0.15) << name;
  }
}

TEST(ScriptTest, OriginViewsShareShape) {
  Script s = Script::Load(ScriptPath("origpriv_honest_relay"));
  Verdict v = RunScript(s);
  const json& req = StepResult(v, "orig_choose")["result"];
  EXPECT_EQ(ViewShape(req), json::parse(R"({"c":32,"dg1_hash":32,"nonce":16,"pi_pa":64,
                                            "pk_eid":32})"));
}

TEST(ViewShapeTest, DropsNamedFields) {
  json a = {{"c", "AAAA"}, {"x", {{"y", "AAAAAA"}}}, {"n", 3}};
  EXPECT_EQ(ViewShape(a, {"c"}), json::parse(R"({"x":{"y":4},"n":"number"})"));
}

}  // namespace
}  // namespace fidoac::harness
