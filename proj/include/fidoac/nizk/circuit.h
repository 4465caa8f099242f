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

// Boolean circuits over XOR/AND gates, and a builder that folds constants,
// shares identical gates and drops gates the output does not depend on.

#ifndef FIDOAC_NIZK_CIRCUIT_H_
#define FIDOAC_NIZK_CIRCUIT_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fidoac/primitives/bytes.h"

namespace fidoac::nizk {

enum class GateOp : uint8_t { kXor = 0, kAnd = 1 };

struct Gate {
  GateOp op;
  uint32_t a;
  uint32_t b;
};

// Wire layout: 0 is the constant one, then public inputs, then witness
// inputs, then one wire per gate in order.
struct Circuit {
  uint32_t num_public = 0;
  uint32_t num_witness = 0;
  std::vector<Gate> gates;
  // Always the last gate, and always an AND.
  uint32_t output = 0;
  size_t num_and = 0;

  uint32_t public_wire(uint32_t i) const { return 1 + i; }
  uint32_t witness_wire(uint32_t i) const { return 1 + num_public + i; }
  uint32_t first_gate_wire() const { return 1 + num_public + num_witness; }
  uint32_t num_wires() const {
    return first_gate_wire() + static_cast<uint32_t>(gates.size());
  }

  // Plain evaluation.
  bool Evaluate(const std::vector<bool>& public_inputs,
                const std::vector<bool>& witness) const;
  Bytes Encode() const;
  Digest32 Digest() const;
};

// A value under construction: a wire, or one of the two constants.
struct Bit {
  static constexpr int64_t kZeroId = -1;
  int64_t id = kZeroId;

  bool is_zero() const { return id == kZeroId; }
  bool is_one() const { return id == 0; }
  bool is_constant() const { return id <= 0; }
  bool operator==(const Bit&) const = default;
};

class CircuitBuilder {
 public:
  CircuitBuilder(uint32_t num_public, uint32_t num_witness);

  Bit Zero() const { return Bit{Bit::kZeroId}; }
  Bit One() const { return Bit{0}; }
  Bit Constant(bool v) const { return v ? One() : Zero(); }
  Bit Public(uint32_t i) const;
  Bit Witness(uint32_t i) const;

  Bit Xor(Bit a, Bit b);
  Bit And(Bit a, Bit b);
  Bit Not(Bit a) { return Xor(a, One()); }
  Bit Or(Bit a, Bit b) { return Not(And(Not(a), Not(b))); }
  Bit Xnor(Bit a, Bit b) { return Not(Xor(a, b)); }

  size_t gates_emitted() const { return gates_.size(); }

  // Drops dead gates and renumbers. If `output` is not an AND gate, appends
  // AND(output, 1) so that the output is carried by an AND. A constant zero
  // output becomes AND(1 ^ 1, 1).
  Circuit Finish(Bit output) const;

 private:
  Bit Emit(GateOp op, Bit a, Bit b);

  uint32_t num_public_;
  uint32_t num_witness_;
  std::vector<Gate> gates_;
  std::unordered_map<uint64_t, uint32_t> memo_[2];
};

}  // namespace fidoac::nizk

#endif  // FIDOAC_NIZK_CIRCUIT_H_
