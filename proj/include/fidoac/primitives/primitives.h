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

#ifndef FIDOAC_PRIMITIVES_PRIMITIVES_H_
#define FIDOAC_PRIMITIVES_PRIMITIVES_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <string_view>

#include "fidoac/primitives/bytes.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/sha256.h"

// Cryptographic contracts shared by every module. Signatures are Ed25519,
// key exchange is X25519 followed by HKDF-SHA256, authenticated encryption is
// ChaCha20-Poly1305 (IETF, 12-byte nonce). All of them are stateless; the only
// randomness is the explicit RandomBytes() call.
namespace fidoac::primitives {

inline constexpr size_t kSignaturePublicKeySize = 32;
inline constexpr size_t kSignatureSecretKeySize = 64;
inline constexpr size_t kSignatureSize = 64;
inline constexpr size_t kKeyExchangeKeySize = 32;
inline constexpr size_t kAeNonceSize = 12;
inline constexpr size_t kAeTagSize = 16;

// Hash under the given profile. Default profile is plain SHA-256.
// Initialises libsodium once. Every function here calls it; code that uses
// libsodium directly must call it first.
void EnsureSodium();

Digest32 Hash(ByteSpan data, HashProfile profile = HashProfile::kDefault);

Bytes RandomBytes(size_t n);

template <size_t N>
std::array<uint8_t, N> RandomArray() {
  std::array<uint8_t, N> out;
  Bytes b = RandomBytes(N);
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

// A secret key and its public counterpart. The secret half is never part of
// a wire type.
struct KeyPair {
  Bytes sk;
  Bytes pk;
};

// --- signatures ---

KeyPair GenerateSigningKey();
// Deterministic key from a 32-byte seed.
KeyPair SigningKeyFromSeed(ByteSpan seed);
Bytes Sign(const KeyPair& key, ByteSpan message);
// Returns false (never throws) for malformed keys or signatures.
bool Verify(ByteSpan pk, ByteSpan message, ByteSpan signature);

// --- key exchange ---

struct SessionKey {
  std::array<uint8_t, 32> key{};
  bool operator==(const SessionKey&) const = default;
};

KeyPair GenerateKeyExchangeKey();
// X25519 public key for a secret scalar.
Bytes KeyExchangePublicKey(ByteSpan sk);

// X25519 agreement followed by HKDF over the shared secret and both public
// keys (sorted), so KeDerive(pkB, skA) == KeDerive(pkA, skB).
// Throws Error(kBadPoint) for a malformed or small-order peer key.
SessionKey KeDerive(ByteSpan pk_peer, ByteSpan sk_self);

// Maps an Ed25519 key pair onto the birationally equivalent X25519 key so one
// key pair can both sign and run key exchange. Throws Error(kBadPoint).
Bytes SigningPublicKeyToKeyExchange(ByteSpan signing_pk);
Bytes SigningSecretKeyToKeyExchange(ByteSpan signing_sk);

// --- authenticated encryption ---

struct Ciphertext {
  std::array<uint8_t, kAeNonceSize> nonce{};
  Bytes ad;
  Bytes body;  // ciphertext || 16-byte tag

  // canonical(nonce, ad, body)
  Bytes Encode() const;
  static Ciphertext Decode(ByteSpan data);
  bool operator==(const Ciphertext&) const = default;
};

Ciphertext AeSeal(const SessionKey& key,
                  const std::array<uint8_t, kAeNonceSize>& nonce, ByteSpan ad,
                  ByteSpan plaintext);
// Throws Error(kAuthFail) if the key, nonce, ad or body do not authenticate.
Bytes AeOpen(const SessionKey& key, const Ciphertext& ct);

// --- key derivation ---

// HKDF-SHA256 (RFC 5869) with an empty salt.
Bytes Hkdf(ByteSpan ikm, std::string_view info, size_t length);
SessionKey DeriveKey(ByteSpan ikm, std::string_view info);

}  // namespace fidoac::primitives

#endif  // FIDOAC_PRIMITIVES_PRIMITIVES_H_
