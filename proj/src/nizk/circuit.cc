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

#include "fidoac/nizk/circuit.h"

#include <utility>

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::nizk {

bool Circuit::Evaluate(const std::vector<bool>& public_inputs,
                       const std::vector<bool>& witness) const {
  if (public_inputs.size() != num_public || witness.size() != num_witness) {
    throw Error(ErrorCode::kInvalidArgument, "input size does not match circuit");
  }
  std::vector<uint8_t> w(num_wires());
  w[0] = 1;
  for (uint32_t i = 0; i < num_public; ++i) w[public_wire(i)] = public_inputs[i];
  for (uint32_t i = 0; i < num_witness; ++i) w[witness_wire(i)] = witness[i];
  uint32_t out = first_gate_wire();
  for (const Gate& g : gates) {
    w[out++] = g.op == GateOp::kXor ? (w[g.a] ^ w[g.b]) : (w[g.a] & w[g.b]);
  }
  return w[output] != 0;
}

Bytes Circuit::Encode() const {
  Bytes gate_bytes;
  gate_bytes.reserve(gates.size() * 9);
  for (const Gate& g : gates) {
    gate_bytes.push_back(static_cast<uint8_t>(g.op));
    for (uint32_t v : {g.a, g.b}) {
      for (int s = 24; s >= 0; s -= 8) gate_bytes.push_back(static_cast<uint8_t>(v >> s));
    }
  }
  CanonicalWriter w;
  w.U32(num_public).U32(num_witness).U32(output).Field(gate_bytes);
  return w.Take();
}

Digest32 Circuit::Digest() const { return primitives::Hash(Encode()); }

CircuitBuilder::CircuitBuilder(uint32_t num_public, uint32_t num_witness)
    : num_public_(num_public), num_witness_(num_witness) {}

Bit CircuitBuilder::Public(uint32_t i) const {
  if (i >= num_public_) throw Error(ErrorCode::kInvalidArgument, "public index");
  return Bit{1 + static_cast<int64_t>(i)};
}

Bit CircuitBuilder::Witness(uint32_t i) const {
  if (i >= num_witness_) throw Error(ErrorCode::kInvalidArgument, "witness index");
  return Bit{1 + static_cast<int64_t>(num_public_) + i};
}

Bit CircuitBuilder::Emit(GateOp op, Bit a, Bit b) {
  if (a.id > b.id) std::swap(a, b);
  uint64_t key = (static_cast<uint64_t>(a.id) << 32) | static_cast<uint64_t>(b.id);
  auto& memo = memo_[static_cast<int>(op)];
  if (auto it = memo.find(key); it != memo.end()) return Bit{it->second};
  uint32_t wire = 1 + num_public_ + num_witness_ + static_cast<uint32_t>(gates_.size());
  gates_.push_back({op, static_cast<uint32_t>(a.id), static_cast<uint32_t>(b.id)});
  memo.emplace(key, wire);
  return Bit{wire};
}

Bit CircuitBuilder::Xor(Bit a, Bit b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a == b) return Zero();
  if (a.is_one() && b.is_one()) return Zero();
  // NOT(NOT(x)) = x.
  if (b.is_one() && a.id > 0) {
    uint32_t first = 1 + num_public_ + num_witness_;
    if (a.id >= first) {
      const Gate& g = gates_[a.id - first];
      if (g.op == GateOp::kXor && g.a == 0) return Bit{g.b};
    }
  }
  if (a.is_one() && b.id > 0) return Xor(b, a);
  return Emit(GateOp::kXor, a, b);
}

Bit CircuitBuilder::And(Bit a, Bit b) {
  if (a.is_zero() || b.is_zero()) return Zero();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a == b) return a;
  return Emit(GateOp::kAnd, a, b);
}

Circuit CircuitBuilder::Finish(Bit output) const {
  const uint32_t first = 1 + num_public_ + num_witness_;
  std::vector<Gate> gates = gates_;
  uint32_t out;
  if (output.is_zero()) {
    // Unsatisfiable relation; materialise 0 = 1 ^ 1 as a wire.
    gates.push_back({GateOp::kXor, 0, 0});
    out = first + static_cast<uint32_t>(gates.size()) - 1;
  } else {
    out = static_cast<uint32_t>(output.id);
  }
  if (out < first || gates[out - first].op != GateOp::kAnd) {
    gates.push_back({GateOp::kAnd, 0, out});
    out = first + static_cast<uint32_t>(gates.size()) - 1;
  }

  // Everything the output depends on comes earlier in gate order, so one
  // backward sweep finds the live set.
  std::vector<bool> live(gates.size(), false);
  live[out - first] = true;
  for (size_t i = gates.size(); i-- > 0;) {
    if (!live[i]) continue;
    for (uint32_t in : {gates[i].a, gates[i].b}) {
      if (in >= first) live[in - first] = true;
    }
  }

  Circuit c;
  c.num_public = num_public_;
  c.num_witness = num_witness_;
  std::vector<uint32_t> remap(gates.size(), 0);
  auto map_wire = [&](uint32_t w) { return w < first ? w : remap[w - first]; };
  for (size_t i = 0; i < gates.size(); ++i) {
    if (!live[i]) continue;
    Gate g{gates[i].op, map_wire(gates[i].a), map_wire(gates[i].b)};
    remap[i] = first + static_cast<uint32_t>(c.gates.size());
    c.gates.push_back(g);
    if (g.op == GateOp::kAnd) ++c.num_and;
  }
  c.output = map_wire(out);
  return c;
}

}  // namespace fidoac::nizk
