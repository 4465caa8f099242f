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

#include "fidoac/fido/messages.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/primitives.h"
#include "json.hpp"

namespace fidoac::fido {

using nlohmann::json;

namespace {

const json& Require(const json& j, const char* key, bool (json::*is)() const noexcept) {
  if (!j.is_object() || !j.contains(key) || !(j[key].*is)()) {
    throw Error(ErrorCode::kMalformed, std::string("missing or mistyped field ") + key);
  }
  return j[key];
}

Bytes B64Field(const json& j, const char* key) {
  return Base64UrlDecode(Require(j, key, &json::is_string).get<std::string>());
}

json Parse(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) throw Error(ErrorCode::kMalformed, "expected a JSON object");
  return j;
}

}  // namespace

std::string_view FlowName(Flow flow) {
  return flow == Flow::kRegister ? "register" : "authenticate";
}

Bytes MediatorChallengeFor(std::string_view id_s, ByteSpan rs) {
  return primitives::Hash(Canonical({AsBytes(id_s), rs})).ToBytes();
}

Bytes ChallengeWithPolicy::MediatorChallenge() const {
  return MediatorChallengeFor(id_s, rs);
}

std::string ChallengeWithPolicy::ToJson() const {
  json j;
  j["id_s"] = id_s;
  j["rs"] = Base64UrlEncode(rs);
  j["extensions"][std::string(kExtensionName)] = json::parse(policy.ToJson());
  return j.dump();
}

ChallengeWithPolicy ChallengeWithPolicy::FromJson(std::string_view text) {
  json j = Parse(text);
  ChallengeWithPolicy out;
  out.id_s = Require(j, "id_s", &json::is_string).get<std::string>();
  out.rs = B64Field(j, "rs");
  const json& ext = Require(j, "extensions", &json::is_object);
  out.policy = PolExt(AsBytes(Require(ext, kExtensionName.data(), &json::is_object).dump()));
  return out;
}

Bytes BindChallenge(ByteSpan rs, const client::AttributeProof& proof) {
  return Concat({rs, primitives::Hash(proof.Encode()).span()});
}

nizk::Policy PolExt(ByteSpan extension) { return nizk::ParsePolicy(extension); }

Bytes TokenSignedPayload(std::string_view id_s, ByteSpan bound_challenge, ByteSpan cid) {
  return Canonical({AsBytes(id_s), bound_challenge, cid});
}

Digest32 PartnerTranscript(std::string_view id_s, ByteSpan cid, ByteSpan bound_challenge,
                           ByteSpan signature) {
  return primitives::Hash(Canonical({AsBytes(id_s), cid, bound_challenge, signature}));
}

std::string BoundResponse::ToJson() const {
  json j;
  j["cid"] = Base64UrlEncode(cid);
  j["credential_pk"] = Base64UrlEncode(credential_pk);
  j["signature"] = Base64UrlEncode(signature);
  j["extensions"][std::string(kExtensionName)] = {
      {"proof", json::parse(proof.ToJson())},
      {"mediator_cert", Base64UrlEncode(mediator_cert.Encode())}};
  return j.dump();
}

BoundResponse BoundResponse::FromJson(std::string_view text) {
  json j = Parse(text);
  BoundResponse out;
  out.cid = B64Field(j, "cid");
  out.credential_pk = B64Field(j, "credential_pk");
  out.signature = B64Field(j, "signature");
  const json& ext = Require(Require(j, "extensions", &json::is_object), kExtensionName.data(),
                            &json::is_object);
  out.proof = client::AttributeProof::FromJson(Require(ext, "proof", &json::is_object).dump());
  out.mediator_cert = mediator::KeyAttestationCert::Decode(B64Field(ext, "mediator_cert"));
  return out;
}

}  // namespace fidoac::fido
