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

#ifndef FIDOAC_NIZK_SHA256_GADGET_H_
#define FIDOAC_NIZK_SHA256_GADGET_H_

#include <array>
#include <cstdint>
#include <vector>

#include "fidoac/nizk/circuit.h"

namespace fidoac::nizk::gadget {

// Bit i has weight 2^i.
using Word = std::array<Bit, 32>;

Word ConstantWord(const CircuitBuilder& b, uint32_t v);
Word Xor(CircuitBuilder& b, const Word& x, const Word& y);
Word RotateRight(const Word& x, int n);
Word ShiftRight(const CircuitBuilder& b, const Word& x, int n);
// Ripple-carry addition mod 2^32; 31 AND gates.
Word Add(CircuitBuilder& b, const Word& x, const Word& y);

using State = std::array<Word, 8>;

// One compression with `rounds` rounds; the full 64-word schedule is built
// and left for dead-gate elimination to trim.
State Compress(CircuitBuilder& b, const State& state,
               const std::array<Word, 16>& block, int rounds);

// Hash of a byte-aligned message given as bits, most significant bit of each
// byte first. Returns the 256 digest bits in the same order.
std::vector<Bit> Sha256(CircuitBuilder& b, const std::vector<Bit>& message, int rounds);

}  // namespace fidoac::nizk::gadget

#endif  // FIDOAC_NIZK_SHA256_GADGET_H_
