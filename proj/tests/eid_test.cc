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
#include <set>

#include "fidoac/eid/chip.h"
#include "fidoac/eid/fixture.h"
#include "fidoac/eid/mrz.h"
#include "fidoac/primitives/error.h"

namespace fidoac::eid {
namespace {

using primitives::Ciphertext;
using primitives::KeyPair;

const Date kReference{2023, 1, 1};

Attributes Alice() {
  return {"Alice Example", "900101", "301231", "DEU", "F", "", ""};
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kMalformed;
}

struct Terminal {
  KeyPair key = primitives::GenerateSigningKey();

  primitives::SessionKey SessionWith(const Chip& chip) const {
    return primitives::KeDerive(chip.public_data().pk_eid,
                                primitives::SigningSecretKeyToKeyExchange(key.sk));
  }
  Ciphertext Command(const primitives::SessionKey& k,
                     std::string_view cmd = kGetChallengeCommand) const {
    return primitives::AeSeal(k, primitives::RandomArray<12>(), {}, AsBytes(cmd));
  }
};

class ChipTest : public ::testing::Test {
 protected:
  KeyPair issuer_ = primitives::GenerateSigningKey();
};

TEST(MrzTest, PivotRule) {
  EXPECT_EQ(PivotYear(23, kReference), 2023);
  EXPECT_EQ(PivotYear(24, kReference), 1924);
  EXPECT_EQ(PivotYear(0, kReference), 2000);
  EXPECT_EQ(ParseMrzDate("000229", kReference), (Date{2000, 2, 29}));
  EXPECT_EQ(CodeOf([] { ParseMrzDate("990229", kReference); }),
            ErrorCode::kBadAttributes);
}

TEST(MrzTest, CheckDigitsMatchIcaoSpecimen) {
  // Specimen values from the ICAO 9303 TD3 example passport.
  EXPECT_EQ(CheckDigit("L898902C3"), '6');
  EXPECT_EQ(CheckDigit("740812"), '2');
  EXPECT_EQ(CheckDigit("120415"), '9');
  EXPECT_EQ(CheckDigit("ZE184226B<<<<<"), '1');
}

TEST(MrzTest, LayoutOffsets) {
  Attributes a = Alice();
  a.document_number = "AB1234567";
  a.personal_number = "ZE184226B00000";
  DataGroup1 dg1 = BuildDataGroup1(a);
  std::string_view t = dg1.text();
  ASSERT_EQ(t.size(), 88u);
  EXPECT_EQ(t.substr(0, 5), "P<DEU");
  EXPECT_EQ(t.substr(5, 15), "ALICE<EXAMPLE<<");
  EXPECT_EQ(t.substr(44, 9), "AB1234567");
  EXPECT_EQ(t.substr(54, 3), "DEU");
  EXPECT_EQ(t.substr(57, 6), "900101");
  EXPECT_EQ(t[64], 'F');
  EXPECT_EQ(t.substr(65, 6), "301231");
  EXPECT_EQ(t.substr(72, 14), "ZE184226B00000");
  Attributes parsed = ParseDataGroup1(dg1);
  EXPECT_EQ(parsed.name, "ALICE EXAMPLE");
  parsed.name = a.name;
  EXPECT_EQ(parsed, a);
}

TEST(MrzTest, ValidationRejectsBadFields) {
  Attributes a = Alice();
  a.document_number = "AB1234567";
  a.personal_number = "ZE184226B00000";
  ValidateAttributes(a, kReference);
  auto bad = [&](auto mutate) {
    Attributes x = a;
    mutate(x);
    return CodeOf([&] { ValidateAttributes(x, kReference); });
  };
  EXPECT_EQ(bad([](Attributes& x) { x.birth_date = "991332"; }), ErrorCode::kBadAttributes);
  EXPECT_EQ(bad([](Attributes& x) { x.expiry_date = "30123"; }), ErrorCode::kBadAttributes);
  EXPECT_EQ(bad([](Attributes& x) { x.nationality = "de"; }), ErrorCode::kBadAttributes);
  EXPECT_EQ(bad([](Attributes& x) { x.name = "Al1ce"; }), ErrorCode::kBadAttributes);
  EXPECT_EQ(bad([](Attributes& x) { x.name = std::string(40, 'A'); }),
            ErrorCode::kBadAttributes);
  EXPECT_EQ(bad([](Attributes& x) { x.document_number = "short"; }),
            ErrorCode::kBadAttributes);
}

TEST_F(ChipTest, InvalidBirthDateIsBadAttributes) {
  Attributes a = Alice();
  a.birth_date = "991332";
  EXPECT_EQ(CodeOf([&] { IssCred(a, issuer_, HashProfile::kDefault, kReference); }),
            ErrorCode::kBadAttributes);
}

TEST_F(ChipTest, IssuedChipPassesPassiveAuthentication) {
  Chip chip = IssCred(Alice(), issuer_);
  EXPECT_TRUE(PaVerify(chip.public_data(), issuer_.pk));
  EXPECT_FALSE(PaVerify(chip.public_data(), primitives::GenerateSigningKey().pk));
}

TEST_F(ChipTest, ReissueResamplesDocumentRandomness) {
  Chip a = IssCred(Alice(), issuer_);
  Chip b = IssCred(Alice(), issuer_);
  EXPECT_NE(a.public_data().dg1_hash, b.public_data().dg1_hash);
  EXPECT_NE(a.attributes().document_number, b.attributes().document_number);
  EXPECT_NE(a.public_data().pk_eid, b.public_data().pk_eid);
  EXPECT_EQ(a.attributes().birth_date, b.attributes().birth_date);
}

TEST_F(ChipTest, ResampledNumbersAreUniformAlphanumerics) {
  std::array<int, 256> counts{};
  const int kChips = 2000;
  for (int i = 0; i < kChips; ++i) {
    Chip c = IssCred(Alice(), issuer_);
    for (char ch : c.attributes().document_number + c.attributes().personal_number) {
      ASSERT_TRUE((ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9'));
      ++counts[static_cast<uint8_t>(ch)];
    }
  }
  // 23 symbols per chip over 36 letters; every symbol appears within 25% of
  // its expectation.
  double expected = kChips * 23.0 / 36.0;
  for (char ch : std::string("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")) {
    EXPECT_NEAR(counts[static_cast<uint8_t>(ch)], expected, expected * 0.25) << ch;
  }
}

TEST_F(ChipTest, NoDigestCollisionsForFixedAttributes) {
  std::set<std::array<uint8_t, 32>> seen;
  for (int i = 0; i < 10000; ++i) {
    ASSERT_TRUE(seen.insert(IssCred(Alice(), issuer_, HashProfile::kTest)
                                .public_data()
                                .dg1_hash.bytes)
                    .second);
  }
}

TEST_F(ChipTest, PassiveAuthenticationRoundTripRandomAttributes) {
  std::mt19937 rng(3);
  auto pick = [&](std::string_view alphabet, size_t n) {
    std::string s;
    for (size_t i = 0; i < n; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
    return s;
  };
  auto two = [&](int lo, int hi) {
    int v = lo + static_cast<int>(rng() % (hi - lo + 1));
    return std::string(1, char('0' + v / 10)) + char('0' + v % 10);
  };
  for (int i = 0; i < 1000; ++i) {
    Attributes a;
    a.name = pick("ABCDEFGHIJKLMNOPQRSTUVWXYZ ", 1 + rng() % 30);
    if (a.name.find_first_not_of(' ') == std::string::npos) a.name = "X";
    a.birth_date = two(0, 99) + two(1, 12) + two(1, 28);
    a.expiry_date = two(0, 99) + two(1, 12) + two(1, 28);
    a.nationality = pick("ABCDEFGHIJKLMNOPQRSTUVWXYZ", 3);
    a.sex = pick("MF<", 1);
    HashProfile profile = i % 2 ? HashProfile::kTest : HashProfile::kDefault;
    Chip c = IssCred(a, issuer_, profile, kReference);
    ASSERT_TRUE(PaVerify(c.public_data(), issuer_.pk)) << i;
  }
}

TEST_F(ChipTest, EveryDigestByteMutationFailsPassiveAuthentication) {
  Chip chip = IssCred(Alice(), issuer_);
  for (size_t i = 0; i < 32; ++i) {
    ChipPublicData d = chip.public_data();
    d.dg1_hash.bytes[i] ^= 0x01;
    ASSERT_FALSE(PaVerify(d, issuer_.pk)) << i;
  }
}

TEST_F(ChipTest, SwappedChipKeysFailPassiveAuthentication) {
  std::vector<Chip> chips;
  for (int i = 0; i < 10; ++i) chips.push_back(IssCred(Alice(), issuer_));
  for (size_t i = 0; i < chips.size(); ++i) {
    for (size_t j = 0; j < chips.size(); ++j) {
      if (i == j) continue;
      ChipPublicData d = chips[i].public_data();
      d.pk_eid = chips[j].public_data().pk_eid;
      ASSERT_FALSE(PaVerify(d, issuer_.pk));
    }
  }
}

TEST_F(ChipTest, ChannelRequiresMrzPassword) {
  Chip chip = IssCred(Alice(), issuer_);
  const Attributes& a = chip.attributes();
  ChannelHandle ch = chip.EstablishChannel(DeriveAccessPassword(a));
  EXPECT_EQ(chip.Read(ch), chip.public_data());

  Attributes wrong = a;
  wrong.birth_date = "900102";
  EXPECT_EQ(CodeOf([&] { chip.EstablishChannel(DeriveAccessPassword(wrong)); }),
            ErrorCode::kAccessDenied);
}

TEST_F(ChipTest, SessionsUseDistinctChannelKeys) {
  Chip chip = IssCred(Alice(), issuer_);
  Bytes pw = DeriveAccessPassword(chip.attributes());
  ChannelHandle a = chip.EstablishChannel(pw);
  ChannelHandle b = chip.EstablishChannel(pw);
  EXPECT_NE(a.key, b.key);
  // Opening a new session invalidates the old handle.
  EXPECT_EQ(CodeOf([&] { chip.Read(a); }), ErrorCode::kChannelClosed);
  EXPECT_EQ(chip.Read(b), chip.Read(b));
}

TEST_F(ChipTest, ReadAfterCloseFails) {
  Chip chip = IssCred(Alice(), issuer_);
  ChannelHandle ch = chip.EstablishChannel(DeriveAccessPassword(chip.attributes()));
  EXPECT_EQ(ParseDataGroup1(chip.ReadDataGroup1(ch)), chip.attributes());
  chip.Close(ch);
  EXPECT_FALSE(chip.channel_open());
  EXPECT_EQ(CodeOf([&] { chip.Read(ch); }), ErrorCode::kChannelClosed);
  EXPECT_EQ(CodeOf([&] { chip.ReadDataGroup1(ch); }), ErrorCode::kChannelClosed);
}

TEST_F(ChipTest, ChipAuthenticationHonestRun) {
  Chip chip = IssCred(Alice(), issuer_);
  Terminal t;
  auto key = t.SessionWith(chip);
  Ciphertext cmd = t.Command(key);
  Ciphertext resp = chip.CaRespond(t.key.pk, cmd);
  EXPECT_EQ(resp.ad, cmd.Encode());
  EXPECT_EQ(primitives::AeOpen(key, resp).size(), kCaChallengeSize);
  EXPECT_TRUE(CaVerify(resp, key, cmd));
}

TEST_F(ChipTest, MutatedCommandRejected) {
  Chip chip = IssCred(Alice(), issuer_);
  Terminal t;
  Ciphertext cmd = t.Command(t.SessionWith(chip));
  for (size_t bit = 0; bit < cmd.body.size() * 8; ++bit) {
    Ciphertext x = cmd;
    x.body[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    ASSERT_EQ(CodeOf([&] { chip.CaRespond(t.key.pk, x); }), ErrorCode::kCaReject);
  }
  for (size_t bit = 0; bit < cmd.nonce.size() * 8; ++bit) {
    Ciphertext x = cmd;
    x.nonce[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    ASSERT_EQ(CodeOf([&] { chip.CaRespond(t.key.pk, x); }), ErrorCode::kCaReject);
  }
}

TEST_F(ChipTest, WrongCommandOrKeyRejected) {
  Chip chip = IssCred(Alice(), issuer_);
  Terminal t;
  auto key = t.SessionWith(chip);
  EXPECT_EQ(CodeOf([&] { chip.CaRespond(t.key.pk, t.Command(key, "READ_BINARY")); }),
            ErrorCode::kCaReject);
  Terminal other;
  EXPECT_EQ(CodeOf([&] { chip.CaRespond(other.key.pk, t.Command(key)); }),
            ErrorCode::kCaReject);
  EXPECT_EQ(CodeOf([&] { chip.CaRespond(Bytes(32, 0), t.Command(key)); }),
            ErrorCode::kCaReject);
}

TEST_F(ChipTest, ReplayedResponseFailsForNewCommand) {
  Chip chip = IssCred(Alice(), issuer_);
  Terminal t;
  auto key = t.SessionWith(chip);
  for (int i = 0; i < 100; ++i) {
    Ciphertext old_cmd = t.Command(key);
    Ciphertext old_resp = chip.CaRespond(t.key.pk, old_cmd);
    Ciphertext new_cmd = t.Command(key);
    ASSERT_FALSE(CaVerify(old_resp, key, new_cmd));
    // Rewriting the associated data breaks the tag.
    Ciphertext forged = old_resp;
    forged.ad = new_cmd.Encode();
    ASSERT_FALSE(CaVerify(forged, key, new_cmd));
  }
}

TEST_F(ChipTest, OutputsNeverContainChipSecret) {
  Chip chip = IssCred(Alice(), issuer_);
  Bytes ask = HexDecode(RequireKey(ParseKeyValues(SaveChipFixture(chip)), "ask"));
  ASSERT_EQ(ask.size(), 32u);
  Terminal t;
  auto key = t.SessionWith(chip);
  std::vector<Bytes> outputs;
  ChannelHandle ch = chip.EstablishChannel(DeriveAccessPassword(chip.attributes()));
  outputs.push_back(chip.Read(ch).Encode());
  auto dg1 = chip.ReadDataGroup1(ch);
  outputs.emplace_back(dg1.mrz.begin(), dg1.mrz.end());
  outputs.emplace_back(ch.key.key.begin(), ch.key.key.end());
  for (int i = 0; i < 50; ++i) {
    Ciphertext cmd = t.Command(key);
    outputs.push_back(chip.CaRespond(t.key.pk, cmd).Encode());
  }
  for (const Bytes& out : outputs) {
    EXPECT_FALSE(ContainsSubsequence(out, ask));
  }
}

TEST_F(ChipTest, FixtureRoundTrip) {
  Chip chip = IssCred(Alice(), issuer_, HashProfile::kTest);
  Chip loaded = LoadChipFixture(SaveChipFixture(chip));
  EXPECT_EQ(loaded.public_data(), chip.public_data());
  EXPECT_EQ(loaded.attributes(), chip.attributes());
  EXPECT_EQ(loaded.profile(), HashProfile::kTest);
  EXPECT_TRUE(PaVerify(loaded.public_data(), issuer_.pk));

  KeyValues kv = ParseKeyValues(SaveChipFixture(chip));
  kv["pk_eid"] = HexEncode(primitives::GenerateKeyExchangeKey().pk);
  EXPECT_EQ(CodeOf([&] { LoadChipFixture(FormatKeyValues(kv)); }), ErrorCode::kMalformed);
}

TEST(KeyValueTest, ParsesCommentsAndWhitespace) {
  KeyValues kv = ParseKeyValues("# c\n a = 1 \n\nb=x=y\n");
  EXPECT_EQ(kv.at("a"), "1");
  EXPECT_EQ(kv.at("b"), "x=y");
  EXPECT_THROW(ParseKeyValues("novalue\n"), Error);
  EXPECT_THROW(RequireKey(kv, "c"), Error);
}

TEST(KeyValueTest, KeyPairRoundTrip) {
  KeyPair k = primitives::GenerateSigningKey();
  KeyPair l = LoadKeyPair(SaveKeyPair(k));
  EXPECT_EQ(l.sk, k.sk);
  EXPECT_EQ(l.pk, k.pk);
}

}  // namespace
}  // namespace fidoac::eid
