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

// Simulated identity-document chip: issuance, passive authentication, the
// password-authenticated read channel, and chip authentication.

#ifndef FIDOAC_EID_CHIP_H_
#define FIDOAC_EID_CHIP_H_

#include <cstdint>
#include <string_view>

#include "fidoac/eid/mrz.h"
#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/primitives.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac::eid {

inline constexpr std::string_view kGetChallengeCommand = "GET_CHALLENGE";
inline constexpr size_t kCaChallengeSize = 8;

struct ChipPublicData {
  Digest32 dg1_hash;
  Bytes pk_eid;  // X25519
  Bytes pi_pa;   // issuer Ed25519 signature

  // canonical(dg1_hash, pk_eid), the bytes the issuer signs.
  Bytes SignedPayload() const;
  Bytes Encode() const;
  static ChipPublicData Decode(ByteSpan data);
  bool operator==(const ChipPublicData&) const = default;
};

// Terminal side of an open channel. Only valid against the chip that issued it
// and only until that chip closes or reopens its channel.
struct ChannelHandle {
  uint64_t session = 0;
  primitives::SessionKey key;
};

// Password guarding the read channel, derived from the three MRZ fields a
// reader can see printed on the document.
Bytes DeriveAccessPassword(std::string_view document_number,
                           std::string_view birth_date,
                           std::string_view expiry_date);
Bytes DeriveAccessPassword(const Attributes& att);

class Chip {
 public:
  // Reconstructs a chip from stored parts (fixture loading). Recomputes the
  // record and its hash; throws Error(kBadAttributes) if `att` is invalid or
  // Error(kMalformed) if `pk_eid` does not match `ask`.
  static Chip FromParts(const Attributes& att, Bytes ask, Bytes pk_eid,
                        Bytes pi_pa, HashProfile profile);

  // Opens the single channel, replacing any earlier one. Throws
  // Error(kAccessDenied) if the password is wrong.
  ChannelHandle EstablishChannel(ByteSpan password);
  // Both throw Error(kChannelClosed) unless `ch` is the open channel.
  ChipPublicData Read(const ChannelHandle& ch) const;
  DataGroup1 ReadDataGroup1(const ChannelHandle& ch) const;
  void Close(const ChannelHandle& ch);

  // Chip authentication. `pk_terminal` is the terminal's Ed25519 key. Throws
  // Error(kCaReject) unless `cmd_cha` opens to the get-challenge command.
  primitives::Ciphertext CaRespond(ByteSpan pk_terminal,
                                   const primitives::Ciphertext& cmd_cha) const;

  const ChipPublicData& public_data() const { return public_; }
  const Attributes& attributes() const { return attributes_; }
  HashProfile profile() const { return profile_; }
  bool channel_open() const { return open_session_ != 0; }

 private:
  friend Chip IssCred(const Attributes&, const primitives::KeyPair&, HashProfile,
                      const Date&);
  friend std::string SaveChipFixture(const Chip&);

  Chip() = default;

  // Seals `payload` under the open channel and opens it on the terminal side,
  // which is what a read over the channel amounts to in one process.
  Bytes Transfer(const ChannelHandle& ch, ByteSpan payload) const;

  Attributes attributes_;
  DataGroup1 dg1_;
  ChipPublicData public_;
  Bytes ask_;
  Bytes access_password_;
  HashProfile profile_ = HashProfile::kDefault;

  uint64_t open_session_ = 0;
  uint64_t next_session_ = 1;
  primitives::SessionKey channel_key_;
  mutable uint64_t send_counter_ = 0;
};

// Issues a chip. Document and personal numbers in `att` are replaced by fresh
// uniform draws from [A-Z0-9]; the other fields are checked against
// `reference` with the pivot rule. Throws Error(kBadAttributes).
Chip IssCred(const Attributes& att, const primitives::KeyPair& issuer,
             HashProfile profile, const Date& reference);
inline Chip IssCred(const Attributes& att, const primitives::KeyPair& issuer,
                    HashProfile profile = HashProfile::kDefault) {
  return IssCred(att, issuer, profile, Today());
}

bool PaVerify(const ChipPublicData& d, ByteSpan issuer_pk);

// Terminal-side check of a chip-authentication response: the response must be
// bound to `cmd_cha` as associated data and open under `key_ses`.
bool CaVerify(const primitives::Ciphertext& resp,
              const primitives::SessionKey& key_ses,
              const primitives::Ciphertext& cmd_cha);

}  // namespace fidoac::eid

#endif  // FIDOAC_EID_CHIP_H_
