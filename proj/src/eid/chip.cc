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

#include "fidoac/eid/chip.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"

namespace fidoac::eid {

using primitives::Ciphertext;
using primitives::SessionKey;

namespace {

constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

std::string RandomAlphanumeric(size_t n) {
  std::string out;
  while (out.size() < n) {
    for (uint8_t b : primitives::RandomBytes(n)) {
      // 252 = 7 * 36; larger bytes would bias the draw.
      if (b < 252 && out.size() < n) out.push_back(kAlphabet[b % 36]);
    }
  }
  return out;
}

bool ConstantTimeEqual(ByteSpan a, ByteSpan b) {
  if (a.size() != b.size()) return false;
  uint8_t diff = 0;
  for (size_t i = 0; i < a.size(); ++i) diff |= a[i] ^ b[i];
  return diff == 0;
}

Bytes U64Bytes(uint64_t v) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>(v >> (56 - 8 * i));
  return out;
}

}  // namespace

Bytes ChipPublicData::SignedPayload() const {
  return Canonical({dg1_hash.span(), pk_eid});
}

Bytes ChipPublicData::Encode() const {
  return Canonical({dg1_hash.span(), pk_eid, pi_pa});
}

ChipPublicData ChipPublicData::Decode(ByteSpan data) {
  CanonicalReader r(data);
  ChipPublicData d;
  auto h = r.FixedField(32);
  std::copy(h.begin(), h.end(), d.dg1_hash.bytes.begin());
  d.pk_eid = r.FieldBytes();
  d.pi_pa = r.FieldBytes();
  r.ExpectEnd();
  return d;
}

Bytes DeriveAccessPassword(std::string_view document_number,
                           std::string_view birth_date,
                           std::string_view expiry_date) {
  return primitives::Hkdf(
      Canonical({AsBytes(document_number), AsBytes(birth_date), AsBytes(expiry_date)}),
      "fidoac/eid/access-password", 32);
}

Bytes DeriveAccessPassword(const Attributes& att) {
  return DeriveAccessPassword(att.document_number, att.birth_date, att.expiry_date);
}

Chip IssCred(const Attributes& att, const primitives::KeyPair& issuer,
             HashProfile profile, const Date& reference) {
  Attributes fresh = att;
  fresh.document_number = RandomAlphanumeric(layout::kDocumentNumberLength);
  fresh.personal_number = RandomAlphanumeric(layout::kPersonalNumberLength);
  ValidateAttributes(fresh, reference);

  Chip chip;
  chip.profile_ = profile;
  chip.dg1_ = BuildDataGroup1(fresh);
  chip.attributes_ = ParseDataGroup1(chip.dg1_);
  auto ca = primitives::GenerateKeyExchangeKey();
  chip.ask_ = std::move(ca.sk);
  chip.public_.pk_eid = std::move(ca.pk);
  chip.public_.dg1_hash = primitives::Hash(chip.dg1_.bytes(), profile);
  chip.public_.pi_pa = primitives::Sign(issuer, chip.public_.SignedPayload());
  chip.access_password_ = DeriveAccessPassword(fresh);
  return chip;
}

Chip Chip::FromParts(const Attributes& att, Bytes ask, Bytes pk_eid, Bytes pi_pa,
                     HashProfile profile) {
  ValidateAttributes(att, Today());
  if (primitives::KeyExchangePublicKey(ask) != pk_eid) {
    throw Error(ErrorCode::kMalformed, "pk_eid does not match the chip secret");
  }
  Chip chip;
  chip.profile_ = profile;
  chip.dg1_ = BuildDataGroup1(att);
  chip.attributes_ = ParseDataGroup1(chip.dg1_);
  chip.ask_ = std::move(ask);
  chip.public_.pk_eid = std::move(pk_eid);
  chip.public_.pi_pa = std::move(pi_pa);
  chip.public_.dg1_hash = primitives::Hash(chip.dg1_.bytes(), profile);
  chip.access_password_ = DeriveAccessPassword(att);
  return chip;
}

ChannelHandle Chip::EstablishChannel(ByteSpan password) {
  Bytes chip_nonce = primitives::RandomBytes(16);
  Bytes terminal_nonce = primitives::RandomBytes(16);

  // The terminal proves knowledge of the password over both nonces; the chip
  // recomputes with its own copy.
  Bytes terminal_auth = primitives::Hkdf(
      Canonical({password, chip_nonce, terminal_nonce}), "fidoac/eid/channel-auth", 32);
  Bytes expected = primitives::Hkdf(
      Canonical({access_password_, chip_nonce, terminal_nonce}),
      "fidoac/eid/channel-auth", 32);
  if (!ConstantTimeEqual(terminal_auth, expected)) {
    throw Error(ErrorCode::kAccessDenied, "channel authentication failed");
  }

  open_session_ = next_session_++;
  send_counter_ = 0;
  channel_key_ = primitives::DeriveKey(
      Canonical({access_password_, chip_nonce, terminal_nonce}), "fidoac/eid/channel");
  ChannelHandle ch;
  ch.session = open_session_;
  ch.key = primitives::DeriveKey(Canonical({password, chip_nonce, terminal_nonce}),
                                 "fidoac/eid/channel");
  return ch;
}

Bytes Chip::Transfer(const ChannelHandle& ch, ByteSpan payload) const {
  if (open_session_ == 0 || ch.session != open_session_) {
    throw Error(ErrorCode::kChannelClosed, "no open channel for this handle");
  }
  std::array<uint8_t, primitives::kAeNonceSize> nonce{};
  Bytes counter = U64Bytes(send_counter_++);
  std::copy(counter.begin(), counter.end(), nonce.begin() + 4);
  Ciphertext ct =
      primitives::AeSeal(channel_key_, nonce, U64Bytes(open_session_), payload);
  return primitives::AeOpen(ch.key, ct);
}

ChipPublicData Chip::Read(const ChannelHandle& ch) const {
  return ChipPublicData::Decode(Transfer(ch, public_.Encode()));
}

DataGroup1 Chip::ReadDataGroup1(const ChannelHandle& ch) const {
  Bytes raw = Transfer(ch, dg1_.bytes());
  DataGroup1 out;
  std::copy(raw.begin(), raw.end(), out.mrz.begin());
  return out;
}

void Chip::Close(const ChannelHandle& ch) {
  if (open_session_ == 0 || ch.session != open_session_) {
    throw Error(ErrorCode::kChannelClosed, "channel already closed");
  }
  open_session_ = 0;
  channel_key_ = SessionKey{};
}

Ciphertext Chip::CaRespond(ByteSpan pk_terminal, const Ciphertext& cmd_cha) const {
  SessionKey key_ses;
  Bytes command;
  try {
    key_ses = primitives::KeDerive(
        primitives::SigningPublicKeyToKeyExchange(pk_terminal), ask_);
    command = primitives::AeOpen(key_ses, cmd_cha);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCaReject, e.what());
  }
  if (command != ToBytes(kGetChallengeCommand)) {
    throw Error(ErrorCode::kCaReject, "unexpected command");
  }
  return primitives::AeSeal(key_ses,
                            primitives::RandomArray<primitives::kAeNonceSize>(),
                            cmd_cha.Encode(),
                            primitives::RandomBytes(kCaChallengeSize));
}

bool PaVerify(const ChipPublicData& d, ByteSpan issuer_pk) {
  return primitives::Verify(issuer_pk, d.SignedPayload(), d.pi_pa);
}

bool CaVerify(const Ciphertext& resp, const SessionKey& key_ses,
              const Ciphertext& cmd_cha) {
  if (resp.ad != cmd_cha.Encode()) return false;
  try {
    return primitives::AeOpen(key_ses, resp).size() == kCaChallengeSize;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace fidoac::eid
