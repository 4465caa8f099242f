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

#include "fidoac/nizk/sha256_gadget.h"

#include "fidoac/primitives/error.h"
#include "fidoac/primitives/sha256.h"

namespace fidoac::nizk::gadget {

Word ConstantWord(const CircuitBuilder& b, uint32_t v) {
  Word w;
  for (int i = 0; i < 32; ++i) w[i] = b.Constant((v >> i) & 1);
  return w;
}

Word Xor(CircuitBuilder& b, const Word& x, const Word& y) {
  Word out;
  for (int i = 0; i < 32; ++i) out[i] = b.Xor(x[i], y[i]);
  return out;
}

Word RotateRight(const Word& x, int n) {
  Word out;
  for (int i = 0; i < 32; ++i) out[i] = x[(i + n) % 32];
  return out;
}

Word ShiftRight(const CircuitBuilder& b, const Word& x, int n) {
  Word out;
  for (int i = 0; i < 32; ++i) out[i] = i + n < 32 ? x[i + n] : b.Zero();
  return out;
}

Word Add(CircuitBuilder& b, const Word& x, const Word& y) {
  Word out;
  Bit carry = b.Zero();
  for (int i = 0; i < 32; ++i) {
    Bit xy = b.Xor(x[i], y[i]);
    out[i] = b.Xor(xy, carry);
    if (i < 31) {
      // maj(x, y, c) = x ^ ((x ^ y) & (x ^ c))
      carry = b.Xor(x[i], b.And(xy, b.Xor(x[i], carry)));
    }
  }
  return out;
}

namespace {

Word Xor3(CircuitBuilder& b, const Word& x, const Word& y, const Word& z) {
  return Xor(b, Xor(b, x, y), z);
}

// ch(e, f, g) = g ^ (e & (f ^ g))
Word Choose(CircuitBuilder& b, const Word& e, const Word& f, const Word& g) {
  Word out;
  for (int i = 0; i < 32; ++i) out[i] = b.Xor(g[i], b.And(e[i], b.Xor(f[i], g[i])));
  return out;
}

// maj(a, b, c) = a ^ ((a ^ b) & (a ^ c))
Word Majority(CircuitBuilder& b, const Word& x, const Word& y, const Word& z) {
  Word out;
  for (int i = 0; i < 32; ++i) {
    out[i] = b.Xor(x[i], b.And(b.Xor(x[i], y[i]), b.Xor(x[i], z[i])));
  }
  return out;
}

}  // namespace

State Compress(CircuitBuilder& b, const State& state,
               const std::array<Word, 16>& block, int rounds) {
  std::array<Word, 64> w;
  for (int t = 0; t < 16; ++t) w[t] = block[t];
  for (int t = 16; t < 64; ++t) {
    Word s0 = Xor3(b, RotateRight(w[t - 15], 7), RotateRight(w[t - 15], 18),
                   ShiftRight(b, w[t - 15], 3));
    Word s1 = Xor3(b, RotateRight(w[t - 2], 17), RotateRight(w[t - 2], 19),
                   ShiftRight(b, w[t - 2], 10));
    w[t] = Add(b, Add(b, w[t - 16], s0), Add(b, w[t - 7], s1));
  }

  State v = state;
  for (int t = 0; t < rounds; ++t) {
    auto& [a, bb, c, d, e, f, g, h] = v;
    Word big_s1 = Xor3(b, RotateRight(e, 6), RotateRight(e, 11), RotateRight(e, 25));
    Word t1 = Add(b, h, big_s1);
    t1 = Add(b, t1, Choose(b, e, f, g));
    t1 = Add(b, t1, ConstantWord(b, sha256::kRoundConstants[t]));
    t1 = Add(b, t1, w[t]);
    Word big_s0 = Xor3(b, RotateRight(a, 2), RotateRight(a, 13), RotateRight(a, 22));
    Word t2 = Add(b, big_s0, Majority(b, a, bb, c));
    h = g;
    g = f;
    f = e;
    e = Add(b, d, t1);
    d = c;
    c = bb;
    bb = a;
    a = Add(b, t1, t2);
  }
  State out;
  for (int i = 0; i < 8; ++i) out[i] = Add(b, state[i], v[i]);
  return out;
}

std::vector<Bit> Sha256(CircuitBuilder& b, const std::vector<Bit>& message, int rounds) {
  if (message.size() % 8 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "message must be whole bytes");
  }
  std::vector<Bit> bits = message;
  uint64_t bit_len = message.size();
  bits.push_back(b.One());
  while (bits.size() % 512 != 448) bits.push_back(b.Zero());
  for (int i = 63; i >= 0; --i) bits.push_back(b.Constant((bit_len >> i) & 1));

  State state;
  for (int i = 0; i < 8; ++i) state[i] = ConstantWord(b, sha256::kInitialState[i]);
  for (size_t off = 0; off < bits.size(); off += 512) {
    std::array<Word, 16> block;
    for (int t = 0; t < 16; ++t) {
      // Big-endian words: the first message bit is bit 31.
      for (int i = 0; i < 32; ++i) block[t][31 - i] = bits[off + 32 * t + i];
    }
    state = Compress(b, state, block, rounds);
  }
  std::vector<Bit> digest;
  digest.reserve(256);
  for (int t = 0; t < 8; ++t) {
    for (int i = 31; i >= 0; --i) digest.push_back(state[t][i]);
  }
  return digest;
}

}  // namespace fidoac::nizk::gadget
