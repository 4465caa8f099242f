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

// Software FIDO token with resident credentials and no signature counter.

#ifndef FIDOAC_FIDO_TOKEN_H_
#define FIDOAC_FIDO_TOKEN_H_

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fidoac/fido/messages.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::fido {

class Token {
 public:
  Token();
  explicit Token(Bytes msk);
  Token(const Token&) = delete;
  Token& operator=(const Token&) = delete;

  // Creates a credential for `id_s` and signs the bound challenge with it.
  std::pair<Bytes, RegistrationResponse> Register(std::string_view id_s,
                                                  ByteSpan bound_challenge);

  // Throws Error(kWrongToken) if `cid` is unknown or belongs to another origin.
  AuthenticationResponse Authenticate(std::string_view id_s, ByteSpan cid,
                                      ByteSpan bound_challenge);

  size_t credential_count() const;

 private:
  struct Credential {
    std::string id_s;
    primitives::KeyPair key;
  };

  Bytes msk_;
  mutable std::mutex mu_;
  std::map<Bytes, Credential> creds_;
};

}  // namespace fidoac::fido

#endif  // FIDOAC_FIDO_TOKEN_H_
