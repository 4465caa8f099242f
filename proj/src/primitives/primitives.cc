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

#include "fidoac/primitives/primitives.h"

#include <sodium.h>

#include <algorithm>
#include <mutex>

#include "fidoac/primitives/canonical.h"

namespace fidoac::primitives {

void EnsureSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) {
      throw std::runtime_error("libsodium initialisation failed");
    }
  });
}

Digest32 Hash(ByteSpan data, HashProfile profile) {
  return Sha256(data, RoundsFor(profile));
}

Bytes RandomBytes(size_t n) {
  EnsureSodium();
  Bytes out(n);
  randombytes_buf(out.data(), n);
  return out;
}

KeyPair GenerateSigningKey() {
  EnsureSodium();
  KeyPair kp{Bytes(crypto_sign_SECRETKEYBYTES), Bytes(crypto_sign_PUBLICKEYBYTES)};
  crypto_sign_keypair(kp.pk.data(), kp.sk.data());
  return kp;
}

KeyPair SigningKeyFromSeed(ByteSpan seed) {
  EnsureSodium();
  if (seed.size() != crypto_sign_SEEDBYTES) {
    throw Error(ErrorCode::kInvalidArgument, "signing seed must be 32 bytes");
  }
  KeyPair kp{Bytes(crypto_sign_SECRETKEYBYTES), Bytes(crypto_sign_PUBLICKEYBYTES)};
  crypto_sign_seed_keypair(kp.pk.data(), kp.sk.data(), seed.data());
  return kp;
}

Bytes Sign(const KeyPair& key, ByteSpan message) {
  EnsureSodium();
  if (key.sk.size() != crypto_sign_SECRETKEYBYTES) {
    throw Error(ErrorCode::kInvalidArgument, "malformed signing key");
  }
  Bytes sig(crypto_sign_BYTES);
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       key.sk.data());
  return sig;
}

bool Verify(ByteSpan pk, ByteSpan message, ByteSpan signature) {
  EnsureSodium();
  if (pk.size() != crypto_sign_PUBLICKEYBYTES ||
      signature.size() != crypto_sign_BYTES) {
    return false;
  }
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(), pk.data()) == 0;
}

KeyPair GenerateKeyExchangeKey() {
  EnsureSodium();
  KeyPair kp{RandomBytes(crypto_scalarmult_SCALARBYTES), {}};
  kp.pk = KeyExchangePublicKey(kp.sk);
  return kp;
}

Bytes KeyExchangePublicKey(ByteSpan sk) {
  EnsureSodium();
  if (sk.size() != crypto_scalarmult_SCALARBYTES) {
    throw Error(ErrorCode::kInvalidArgument, "key-exchange secret must be 32 bytes");
  }
  Bytes pk(crypto_scalarmult_BYTES);
  crypto_scalarmult_base(pk.data(), sk.data());
  return pk;
}

SessionKey KeDerive(ByteSpan pk_peer, ByteSpan sk_self) {
  EnsureSodium();
  if (pk_peer.size() != crypto_scalarmult_BYTES) {
    throw Error(ErrorCode::kBadPoint, "public key must be 32 bytes");
  }
  Bytes pk_self = KeyExchangePublicKey(sk_self);
  std::array<uint8_t, crypto_scalarmult_BYTES> shared;
  // Fails for small-order points, which would give an all-zero secret.
  if (crypto_scalarmult(shared.data(), sk_self.data(), pk_peer.data()) != 0) {
    throw Error(ErrorCode::kBadPoint, "small-order public key");
  }
  ByteSpan lo = pk_self, hi = pk_peer;
  if (!std::lexicographical_compare(lo.begin(), lo.end(), hi.begin(), hi.end())) {
    std::swap(lo, hi);
  }
  Bytes ikm = Canonical({shared, lo, hi});
  sodium_memzero(shared.data(), shared.size());
  SessionKey out = DeriveKey(ikm, "fidoac/ke/v1");
  sodium_memzero(ikm.data(), ikm.size());
  return out;
}

Bytes SigningPublicKeyToKeyExchange(ByteSpan signing_pk) {
  EnsureSodium();
  Bytes out(crypto_scalarmult_curve25519_BYTES);
  if (signing_pk.size() != crypto_sign_PUBLICKEYBYTES ||
      crypto_sign_ed25519_pk_to_curve25519(out.data(), signing_pk.data()) != 0) {
    throw Error(ErrorCode::kBadPoint, "not an Ed25519 public key");
  }
  return out;
}

Bytes SigningSecretKeyToKeyExchange(ByteSpan signing_sk) {
  EnsureSodium();
  if (signing_sk.size() != crypto_sign_SECRETKEYBYTES) {
    throw Error(ErrorCode::kInvalidArgument, "not an Ed25519 secret key");
  }
  Bytes out(crypto_scalarmult_curve25519_BYTES);
  crypto_sign_ed25519_sk_to_curve25519(out.data(), signing_sk.data());
  return out;
}

Bytes Ciphertext::Encode() const {
  return Canonical({nonce, ad, body});
}

Ciphertext Ciphertext::Decode(ByteSpan data) {
  CanonicalReader r(data);
  Ciphertext ct;
  auto n = r.FixedField(kAeNonceSize);
  std::copy(n.begin(), n.end(), ct.nonce.begin());
  ct.ad = r.FieldBytes();
  ct.body = r.FieldBytes();
  r.ExpectEnd();
  return ct;
}

Ciphertext AeSeal(const SessionKey& key,
                  const std::array<uint8_t, kAeNonceSize>& nonce, ByteSpan ad,
                  ByteSpan plaintext) {
  EnsureSodium();
  Ciphertext ct;
  ct.nonce = nonce;
  ct.ad.assign(ad.begin(), ad.end());
  ct.body.resize(plaintext.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(
      ct.body.data(), &len, plaintext.data(), plaintext.size(), ct.ad.data(),
      ct.ad.size(), nullptr, nonce.data(), key.key.data());
  ct.body.resize(len);
  return ct;
}

Bytes AeOpen(const SessionKey& key, const Ciphertext& ct) {
  EnsureSodium();
  if (ct.body.size() < crypto_aead_chacha20poly1305_ietf_ABYTES) {
    throw Error(ErrorCode::kAuthFail, "ciphertext shorter than tag");
  }
  Bytes pt(ct.body.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(
          pt.data(), &len, nullptr, ct.body.data(), ct.body.size(),
          ct.ad.data(), ct.ad.size(), ct.nonce.data(), key.key.data()) != 0) {
    throw Error(ErrorCode::kAuthFail, "authentication failed");
  }
  pt.resize(len);
  return pt;
}

Bytes Hkdf(ByteSpan ikm, std::string_view info, size_t length) {
  EnsureSodium();
  if (length > 255 * crypto_auth_hmacsha256_BYTES) {
    throw Error(ErrorCode::kInvalidArgument, "HKDF output too long");
  }
  // Extract with an all-zero salt of hash length.
  std::array<uint8_t, crypto_auth_hmacsha256_BYTES> salt{};
  std::array<uint8_t, crypto_auth_hmacsha256_BYTES> prk;
  crypto_auth_hmacsha256_state st;
  crypto_auth_hmacsha256_init(&st, salt.data(), salt.size());
  crypto_auth_hmacsha256_update(&st, ikm.data(), ikm.size());
  crypto_auth_hmacsha256_final(&st, prk.data());

  Bytes out;
  std::array<uint8_t, crypto_auth_hmacsha256_BYTES> block{};
  size_t block_len = 0;
  for (uint8_t counter = 1; out.size() < length; ++counter) {
    crypto_auth_hmacsha256_init(&st, prk.data(), prk.size());
    crypto_auth_hmacsha256_update(&st, block.data(), block_len);
    crypto_auth_hmacsha256_update(
        &st, reinterpret_cast<const uint8_t*>(info.data()), info.size());
    crypto_auth_hmacsha256_update(&st, &counter, 1);
    crypto_auth_hmacsha256_final(&st, block.data());
    block_len = block.size();
    size_t take = std::min(block.size(), length - out.size());
    out.insert(out.end(), block.begin(), block.begin() + take);
  }
  sodium_memzero(prk.data(), prk.size());
  return out;
}

SessionKey DeriveKey(ByteSpan ikm, std::string_view info) {
  Bytes k = Hkdf(ikm, info, 32);
  SessionKey out;
  std::copy(k.begin(), k.end(), out.key.begin());
  return out;
}

}  // namespace fidoac::primitives
