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

#ifndef FIDOAC_PRIMITIVES_SHA256_H_
#define FIDOAC_PRIMITIVES_SHA256_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "fidoac/primitives/bytes.h"

namespace fidoac {

// Two hash profiles share one SHA-256 code path. kDefault is FIPS 180-4
// SHA-256. kTest keeps padding and the message schedule but runs only the
// first 16 rounds of the compression function, so that proofs over the hash
// stay cheap in CI. Fewer than 16 rounds would leave message words unread.
enum class HashProfile { kDefault, kTest };

inline constexpr int kFullRounds = 64;
inline constexpr int kTestRounds = 16;

int RoundsFor(HashProfile profile);
std::string_view ProfileName(HashProfile profile);
// Accepts "default" and "test"; throws Error(kInvalidArgument) otherwise.
HashProfile ParseProfile(std::string_view name);

namespace sha256 {

inline constexpr std::array<uint32_t, 64> kRoundConstants = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline constexpr std::array<uint32_t, 8> kInitialState = {
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

using State = std::array<uint32_t, 8>;

void Compress(State& state, const uint8_t block[64], int rounds);

// Message padded to a multiple of 64 bytes (0x80, zeros, 64-bit bit length).
Bytes Pad(ByteSpan message);

}  // namespace sha256

Digest32 Sha256(ByteSpan data, int rounds = kFullRounds);

}  // namespace fidoac

#endif  // FIDOAC_PRIMITIVES_SHA256_H_
