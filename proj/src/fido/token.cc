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

#include "fidoac/fido/token.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"

namespace fidoac::fido {

Token::Token() : Token(primitives::RandomBytes(32)) {}

Token::Token(Bytes msk) : msk_(std::move(msk)) {}

std::pair<Bytes, RegistrationResponse> Token::Register(std::string_view id_s,
                                                       ByteSpan bound_challenge) {
  std::lock_guard<std::mutex> lock(mu_);
  Bytes cid;
  do {
    cid = primitives::RandomBytes(kCidSize);
  } while (creds_.contains(cid));
  // Keys are a function of msk and the fresh cid, so they are independent per
  // registration.
  Credential cred{std::string(id_s),
                  primitives::SigningKeyFromSeed(primitives::Hkdf(
                      Canonical({msk_, cid}), "fidoac/token/credential", 32))};
  RegistrationResponse r{cred.key.pk,
                         primitives::Sign(cred.key, TokenSignedPayload(id_s, bound_challenge, cid))};
  creds_.emplace(cid, std::move(cred));
  return {cid, std::move(r)};
}

AuthenticationResponse Token::Authenticate(std::string_view id_s, ByteSpan cid,
                                           ByteSpan bound_challenge) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = creds_.find(Bytes(cid.begin(), cid.end()));
  if (it == creds_.end() || it->second.id_s != id_s) {
    throw Error(ErrorCode::kWrongToken, "no credential for this origin");
  }
  return {primitives::Sign(it->second.key, TokenSignedPayload(id_s, bound_challenge, cid))};
}

size_t Token::credential_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return creds_.size();
}

}  // namespace fidoac::fido
