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

#include "fidoac/primitives/bytes.h"

#include <sodium.h>

#include <algorithm>

#include "fidoac/primitives/error.h"

namespace fidoac {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "Malformed";
    case ErrorCode::kBadPoint: return "BadPoint";
    case ErrorCode::kAuthFail: return "AuthFail";
    case ErrorCode::kBadAttributes: return "BadAttributes";
    case ErrorCode::kAccessDenied: return "AccessDenied";
    case ErrorCode::kChannelClosed: return "ChannelClosed";
    case ErrorCode::kCaReject: return "CaReject";
    case ErrorCode::kUnsupportedPolicy: return "UnsupportedPolicy";
    case ErrorCode::kBadPolicy: return "BadPolicy";
    case ErrorCode::kNotAWitness: return "NotAWitness";
    case ErrorCode::kNoTrapdoor: return "NoTrapdoor";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kStateReplay: return "StateReplay";
    case ErrorCode::kNoSource: return "NoSource";
    case ErrorCode::kNotAttested: return "NotAttested";
    case ErrorCode::kNoCredential: return "NoCredential";
    case ErrorCode::kWrongToken: return "WrongToken";
    case ErrorCode::kAlreadySetup: return "AlreadySetup";
    case ErrorCode::kOracleAbort: return "OracleAbort";
  }
  return "Unknown";
}

Bytes Concat(std::initializer_list<ByteSpan> parts) {
  Bytes out;
  size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string HexEncode(ByteSpan data) {
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.pop_back();
  return out;
}

Bytes HexDecode(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::kMalformed, "odd-length hex string");
  }
  Bytes out(hex.size() / 2);
  size_t written = 0;
  const char* end = nullptr;
  if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr,
                     &written, &end) != 0 ||
      written != out.size() || end != hex.data() + hex.size()) {
    throw Error(ErrorCode::kMalformed, "invalid hex string");
  }
  return out;
}

std::string Base64UrlEncode(ByteSpan data) {
  constexpr int kVariant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;
  std::string out(sodium_base64_encoded_len(data.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), kVariant);
  out.resize(std::char_traits<char>::length(out.c_str()));
  return out;
}

Bytes Base64UrlDecode(std::string_view text) {
  constexpr int kVariant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;
  Bytes out(text.size() * 3 / 4 + 3);
  size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(),
                        nullptr, &written, &end, kVariant) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::kMalformed, "invalid base64url");
  }
  out.resize(written);
  return out;
}

bool ContainsSubsequence(ByteSpan haystack, ByteSpan needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace fidoac
