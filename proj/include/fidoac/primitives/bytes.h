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

#ifndef FIDOAC_PRIMITIVES_BYTES_H_
#define FIDOAC_PRIMITIVES_BYTES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fidoac {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

struct Digest32 {
  std::array<uint8_t, 32> bytes{};

  ByteSpan span() const { return bytes; }
  Bytes ToBytes() const { return Bytes(bytes.begin(), bytes.end()); }
  bool operator==(const Digest32&) const = default;
};

inline ByteSpan AsBytes(std::string_view s) {
  return ByteSpan(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

inline Bytes ToBytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

Bytes Concat(std::initializer_list<ByteSpan> parts);

std::string HexEncode(ByteSpan data);
// Throws Error(kMalformed) on odd length or non-hex characters.
Bytes HexDecode(std::string_view hex);

// RFC 4648 base64url without padding, the transport form of every binary
// field in JSON messages.
std::string Base64UrlEncode(ByteSpan data);
// Throws Error(kMalformed) on invalid input.
Bytes Base64UrlDecode(std::string_view text);

// True if `needle` occurs as a contiguous substring of `haystack`.
bool ContainsSubsequence(ByteSpan haystack, ByteSpan needle);

}  // namespace fidoac

#endif  // FIDOAC_PRIMITIVES_BYTES_H_
