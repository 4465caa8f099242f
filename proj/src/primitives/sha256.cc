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

#include "fidoac/primitives/sha256.h"

#include <bit>

#include "fidoac/primitives/error.h"

namespace fidoac {

int RoundsFor(HashProfile profile) {
  return profile == HashProfile::kTest ? kTestRounds : kFullRounds;
}

std::string_view ProfileName(HashProfile profile) {
  return profile == HashProfile::kTest ? "test" : "default";
}

HashProfile ParseProfile(std::string_view name) {
  if (name == "default") return HashProfile::kDefault;
  if (name == "test") return HashProfile::kTest;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown hash profile '" + std::string(name) + "'");
}

namespace sha256 {

void Compress(State& state, const uint8_t block[64], int rounds) {
  std::array<uint32_t, 64> w;
  for (int t = 0; t < 16; ++t) {
    w[t] = (uint32_t{block[4 * t]} << 24) | (uint32_t{block[4 * t + 1]} << 16) |
           (uint32_t{block[4 * t + 2]} << 8) | uint32_t{block[4 * t + 3]};
  }
  for (int t = 16; t < 64; ++t) {
    uint32_t s0 = std::rotr(w[t - 15], 7) ^ std::rotr(w[t - 15], 18) ^
                  (w[t - 15] >> 3);
    uint32_t s1 = std::rotr(w[t - 2], 17) ^ std::rotr(w[t - 2], 19) ^
                  (w[t - 2] >> 10);
    w[t] = w[t - 16] + s0 + w[t - 7] + s1;
  }

  uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
  uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
  for (int t = 0; t < rounds; ++t) {
    uint32_t big_s1 = std::rotr(e, 6) ^ std::rotr(e, 11) ^ std::rotr(e, 25);
    uint32_t ch = (e & f) ^ (~e & g);
    uint32_t t1 = h + big_s1 + ch + kRoundConstants[t] + w[t];
    uint32_t big_s0 = std::rotr(a, 2) ^ std::rotr(a, 13) ^ std::rotr(a, 22);
    uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    uint32_t t2 = big_s0 + maj;
    h = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
  state[4] += e;
  state[5] += f;
  state[6] += g;
  state[7] += h;
}

Bytes Pad(ByteSpan message) {
  Bytes out(message.begin(), message.end());
  uint64_t bit_len = uint64_t{message.size()} * 8;
  out.push_back(0x80);
  while (out.size() % 64 != 56) out.push_back(0);
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(bit_len >> (8 * i)));
  return out;
}

}  // namespace sha256

Digest32 Sha256(ByteSpan data, int rounds) {
  if (rounds < 1 || rounds > kFullRounds) {
    throw Error(ErrorCode::kInvalidArgument, "round count out of range");
  }
  sha256::State state = sha256::kInitialState;
  Bytes padded = sha256::Pad(data);
  for (size_t off = 0; off < padded.size(); off += 64) {
    sha256::Compress(state, padded.data() + off, rounds);
  }
  Digest32 out;
  for (int i = 0; i < 8; ++i) {
    out.bytes[4 * i] = static_cast<uint8_t>(state[i] >> 24);
    out.bytes[4 * i + 1] = static_cast<uint8_t>(state[i] >> 16);
    out.bytes[4 * i + 2] = static_cast<uint8_t>(state[i] >> 8);
    out.bytes[4 * i + 3] = static_cast<uint8_t>(state[i]);
  }
  return out;
}

}  // namespace fidoac
