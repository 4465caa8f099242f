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

#include <openssl/sha.h>

#include <gtest/gtest.h>

#include <random>

#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/primitives.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac {
namespace {

using namespace primitives;

Digest32 OpenSslSha256(ByteSpan data) {
  Digest32 d;
  SHA256(data.data(), data.size(), d.bytes.data());
  return d;
}

TEST(Sha256Test, EmptyInputMatchesPublishedVector) {
  EXPECT_EQ(HexEncode(Hash({}).span()),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Hash({}), OpenSslSha256({}));
}

TEST(Sha256Test, MatchesOpenSslAcrossLengths) {
  std::mt19937 rng(7);
  for (size_t len = 0; len < 300; ++len) {
    Bytes m(len);
    for (auto& b : m) b = static_cast<uint8_t>(rng());
    ASSERT_EQ(Hash(m), OpenSslSha256(m)) << "length " << len;
  }
}

TEST(Sha256Test, SingleBitFlipChangesDigest) {
  Bytes m = RandomBytes(88);
  for (size_t bit = 0; bit < m.size() * 8; ++bit) {
    Bytes x = m;
    x[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    Digest32 ours = Hash(x);
    ASSERT_EQ(ours, OpenSslSha256(x));
    ASSERT_NE(ours, Hash(m));
  }
}

TEST(Sha256Test, Deterministic) {
  Bytes m = RandomBytes(100);
  EXPECT_EQ(Hash(m), Hash(m));
  EXPECT_EQ(Hash(m, HashProfile::kTest), Hash(m, HashProfile::kTest));
}

TEST(Sha256Test, TestProfileDiffersFromDefault) {
  Bytes m = RandomBytes(88);
  EXPECT_NE(Hash(m, HashProfile::kTest), Hash(m));
}

TEST(Sha256Test, ReducedRoundsMatchTruncatedLoop) {
  // Independent straight-line reference for a one-block message: the round
  // loop stopped after r rounds, then feed-forward.
  Bytes m = ToBytes("abc");
  Bytes block = sha256::Pad(m);
  ASSERT_EQ(block.size(), 64u);
  for (int r = 1; r <= 64; ++r) {
    sha256::State s = sha256::kInitialState;
    sha256::Compress(s, block.data(), r);
    Digest32 d = Sha256(m, r);
    for (int i = 0; i < 8; ++i) {
      uint32_t w = (uint32_t{d.bytes[4 * i]} << 24) | (uint32_t{d.bytes[4 * i + 1]} << 16) |
                   (uint32_t{d.bytes[4 * i + 2]} << 8) | d.bytes[4 * i + 3];
      ASSERT_EQ(w, s[i]);
    }
  }
  EXPECT_EQ(Sha256(m, 64), OpenSslSha256(m));
}

TEST(Sha256Test, TestProfileReadsEveryMessageByte) {
  Bytes m = primitives::RandomBytes(88);
  Digest32 base = primitives::Hash(m, HashProfile::kTest);
  for (size_t i = 0; i < m.size(); ++i) {
    Bytes x = m;
    x[i] ^= 0x80;
    ASSERT_NE(primitives::Hash(x, HashProfile::kTest), base) << i;
  }
}

TEST(Sha256Test, RejectsBadRoundCount) {
  EXPECT_THROW(Sha256({}, 0), Error);
  EXPECT_THROW(Sha256({}, 65), Error);
}

TEST(ProfileTest, ParseRoundTrip) {
  EXPECT_EQ(ParseProfile("test"), HashProfile::kTest);
  EXPECT_EQ(ParseProfile(ProfileName(HashProfile::kDefault)), HashProfile::kDefault);
  EXPECT_THROW(ParseProfile("fast"), Error);
}

TEST(SignatureTest, RoundTrip) {
  for (int i = 0; i < 20; ++i) {
    KeyPair k = GenerateSigningKey();
    Bytes m = RandomBytes(64);
    EXPECT_TRUE(Verify(k.pk, m, Sign(k, m)));
  }
}

TEST(SignatureTest, DeterministicSignatures) {
  KeyPair k = GenerateSigningKey();
  Bytes m = RandomBytes(64);
  EXPECT_EQ(Sign(k, m), Sign(k, m));
}

TEST(SignatureTest, FlippedMessageBitRejected) {
  KeyPair k = GenerateSigningKey();
  Bytes m = RandomBytes(64);
  Bytes sig = Sign(k, m);
  for (size_t bit = 0; bit < m.size() * 8; ++bit) {
    Bytes x = m;
    x[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    ASSERT_FALSE(Verify(k.pk, x, sig));
  }
}

TEST(SignatureTest, UnrelatedKeysRejected) {
  KeyPair k = GenerateSigningKey();
  Bytes m = RandomBytes(64);
  Bytes sig = Sign(k, m);
  for (int i = 0; i < 100; ++i) {
    ASSERT_FALSE(Verify(GenerateSigningKey().pk, m, sig));
  }
}

TEST(SignatureTest, MutationSuiteNeverVerifies) {
  std::mt19937 rng(11);
  KeyPair k = GenerateSigningKey();
  for (int i = 0; i < 1000; ++i) {
    Bytes m = RandomBytes(1 + rng() % 128);
    Bytes sig = Sign(k, m);
    switch (rng() % 4) {
      case 0:
        sig[rng() % sig.size()] ^= static_cast<uint8_t>(1u << (rng() % 8));
        break;
      case 1:
        m[rng() % m.size()] ^= static_cast<uint8_t>(1u << (rng() % 8));
        break;
      case 2:
        sig.resize(rng() % sig.size());
        break;
      default:
        sig.push_back(static_cast<uint8_t>(rng()));
        break;
    }
    ASSERT_FALSE(Verify(k.pk, m, sig)) << "trial " << i;
  }
}

TEST(SignatureTest, MalformedInputsReturnFalse) {
  KeyPair k = GenerateSigningKey();
  Bytes m = ToBytes("m");
  EXPECT_FALSE(Verify(Bytes(5), m, Sign(k, m)));
  EXPECT_FALSE(Verify(k.pk, m, Bytes()));
}

TEST(SignatureTest, SeededKeysAreReproducible) {
  Bytes seed = RandomBytes(32);
  EXPECT_EQ(SigningKeyFromSeed(seed).pk, SigningKeyFromSeed(seed).pk);
  EXPECT_THROW(SigningKeyFromSeed(Bytes(31)), Error);
}

TEST(KeyExchangeTest, Symmetry) {
  for (int i = 0; i < 20; ++i) {
    KeyPair a = GenerateKeyExchangeKey(), b = GenerateKeyExchangeKey();
    EXPECT_EQ(KeDerive(b.pk, a.sk), KeDerive(a.pk, b.sk));
  }
}

TEST(KeyExchangeTest, ThirdPartyGetsDifferentKey) {
  for (int i = 0; i < 100; ++i) {
    KeyPair a = GenerateKeyExchangeKey(), b = GenerateKeyExchangeKey(),
            c = GenerateKeyExchangeKey();
    ASSERT_NE(KeDerive(b.pk, a.sk), KeDerive(b.pk, c.sk));
    ASSERT_NE(KeDerive(b.pk, a.sk), KeDerive(c.pk, a.sk));
  }
}

TEST(KeyExchangeTest, MalformedPointIsBadPoint) {
  KeyPair a = GenerateKeyExchangeKey();
  try {
    KeDerive(Bytes(31, 9), a.sk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadPoint);
  }
  // The all-zero point has small order.
  try {
    KeDerive(Bytes(32, 0), a.sk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadPoint);
  }
}

TEST(KeyExchangeTest, SigningKeysConvertConsistently) {
  KeyPair m = GenerateSigningKey();
  KeyPair chip = GenerateKeyExchangeKey();
  Bytes m_sk = SigningSecretKeyToKeyExchange(m.sk);
  Bytes m_pk = SigningPublicKeyToKeyExchange(m.pk);
  EXPECT_EQ(KeyExchangePublicKey(m_sk), m_pk);
  EXPECT_EQ(KeDerive(chip.pk, m_sk), KeDerive(m_pk, chip.sk));
}

TEST(AeTest, RoundTrip) {
  SessionKey k{RandomArray<32>()};
  Bytes pt = RandomBytes(50);
  Ciphertext ct = AeSeal(k, RandomArray<12>(), ToBytes("ad"), pt);
  EXPECT_EQ(AeOpen(k, ct), pt);
  EXPECT_EQ(Ciphertext::Decode(ct.Encode()), ct);
}

TEST(AeTest, EveryAdByteMutationFails) {
  SessionKey k{RandomArray<32>()};
  Ciphertext ct = AeSeal(k, RandomArray<12>(), RandomBytes(40), ToBytes("hello"));
  for (size_t i = 0; i < ct.ad.size(); ++i) {
    Ciphertext x = ct;
    x.ad[i] ^= 0x01;
    try {
      AeOpen(k, x);
      FAIL() << "byte " << i;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kAuthFail);
    }
  }
}

TEST(AeTest, EveryBitOfNonceAndBodyAuthenticated) {
  SessionKey k{RandomArray<32>()};
  Ciphertext ct = AeSeal(k, RandomArray<12>(), ToBytes("x"), ToBytes("payload"));
  for (size_t bit = 0; bit < ct.nonce.size() * 8; ++bit) {
    Ciphertext x = ct;
    x.nonce[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_THROW(AeOpen(k, x), Error);
  }
  for (size_t bit = 0; bit < ct.body.size() * 8; ++bit) {
    Ciphertext x = ct;
    x.body[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_THROW(AeOpen(k, x), Error);
  }
}

TEST(AeTest, WrongKeyFails) {
  Ciphertext ct = AeSeal(SessionKey{RandomArray<32>()}, RandomArray<12>(), {},
                         ToBytes("p"));
  try {
    AeOpen(SessionKey{RandomArray<32>()}, ct);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuthFail);
  }
}

TEST(KdfTest, Rfc5869CaseThreeZeroSalt) {
  // RFC 5869 test case 3: empty salt and info.
  Bytes ikm(22, 0x0b);
  EXPECT_EQ(HexEncode(Hkdf(ikm, "", 42)),
            "8da4e775a563c18f715f802a063c5a31b8a11f5c5ee1879ec3454e5f3c738d2d"
            "9d201395faa4b61a96c8");
}

TEST(CanonicalTest, LengthPrefixedFields) {
  Bytes enc = Canonical({ToBytes("ab"), Bytes{}, Bytes{7}});
  EXPECT_EQ(HexEncode(enc), "000000026162" "00000000" "0000000107");
  CanonicalReader r(enc);
  EXPECT_EQ(r.FieldString(), "ab");
  EXPECT_TRUE(r.Field().empty());
  EXPECT_EQ(r.FieldBytes(), Bytes{7});
  EXPECT_TRUE(r.AtEnd());
}

TEST(CanonicalTest, FieldBoundariesAreUnambiguous) {
  EXPECT_NE(Canonical({ToBytes("ab"), ToBytes("c")}),
            Canonical({ToBytes("a"), ToBytes("bc")}));
}

TEST(CanonicalTest, TruncationIsMalformed) {
  Bytes enc = Canonical({ToBytes("abcdef")});
  for (size_t n = 1; n < enc.size(); ++n) {
    CanonicalReader r(ByteSpan(enc).first(n));
    EXPECT_THROW(r.Field(), Error);
  }
}

TEST(EncodingTest, Base64UrlHasNoPadding) {
  EXPECT_EQ(Base64UrlEncode(ToBytes("a")), "YQ");
  EXPECT_EQ(Base64UrlDecode("YQ"), ToBytes("a"));
  Bytes b{0xfb, 0xff};
  EXPECT_EQ(Base64UrlEncode(b), "-_8");
  EXPECT_THROW(Base64UrlDecode("*"), Error);
}

TEST(EncodingTest, HexRoundTrip) {
  Bytes b = RandomBytes(33);
  EXPECT_EQ(HexDecode(HexEncode(b)), b);
  EXPECT_THROW(HexDecode("abc"), Error);
  EXPECT_THROW(HexDecode("zz"), Error);
}

}  // namespace
}  // namespace fidoac
