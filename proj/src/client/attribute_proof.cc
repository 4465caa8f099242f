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

#include "fidoac/client/attribute_proof.h"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "json.hpp"

namespace fidoac::client {

using nlohmann::json;

Bytes AttributeProof::Encode() const {
  return Canonical({att_m, sigma_m ? ByteSpan(*sigma_m) : ByteSpan(), pi_zkp.bytes});
}

AttributeProof AttributeProof::Decode(ByteSpan data) {
  CanonicalReader r(data);
  AttributeProof p;
  p.att_m = r.FieldBytes();
  Bytes sig = r.FieldBytes();
  if (!sig.empty()) p.sigma_m = std::move(sig);
  p.pi_zkp.bytes = r.FieldBytes();
  r.ExpectEnd();
  return p;
}

std::string AttributeProof::ToJson() const {
  json j;
  j["att_m"] = Base64UrlEncode(att_m);
  j["sigma_m"] = sigma_m ? json(Base64UrlEncode(*sigma_m)) : json(nullptr);
  j["pi_zkp"] = Base64UrlEncode(pi_zkp.bytes);
  return j.dump();
}

AttributeProof AttributeProof::FromJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object() || !j.contains("att_m") || !j.contains("sigma_m") ||
      !j.contains("pi_zkp") || !j["att_m"].is_string() || !j["pi_zkp"].is_string() ||
      !(j["sigma_m"].is_string() || j["sigma_m"].is_null())) {
    throw Error(ErrorCode::kMalformed, "attribute proof JSON lacks required fields");
  }
  AttributeProof p;
  p.att_m = Base64UrlDecode(j["att_m"].get<std::string>());
  if (j["sigma_m"].is_string()) {
    p.sigma_m = Base64UrlDecode(j["sigma_m"].get<std::string>());
    if (p.sigma_m->empty()) p.sigma_m.reset();
  }
  p.pi_zkp.bytes = Base64UrlDecode(j["pi_zkp"].get<std::string>());
  return p;
}

}  // namespace fidoac::client
