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

#include "fidoac/nizk/relation.h"

#include <map>
#include <mutex>
#include <string>

#include "fidoac/nizk/sha256_gadget.h"
#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::nizk {
namespace {

void PushBits(std::vector<bool>& out, ByteSpan bytes) {
  for (uint8_t byte : bytes) {
    for (int i = 7; i >= 0; --i) out.push_back((byte >> i) & 1);
  }
}

// x <= k for a variable bit string x against a constant of the same width,
// both most significant bit first. One AND per bit.
Bit LessOrEqualConstant(CircuitBuilder& b, const std::vector<Bit>& x,
                        const std::vector<bool>& k) {
  Bit le = b.One();
  for (size_t i = x.size(); i-- > 0;) {
    // k_i = 1: x_i = 0 decides true, else defer.  k_i = 0: x_i = 1 decides
    // false, else defer.
    le = k[i] ? b.Not(b.And(x[i], b.Not(le))) : b.And(b.Not(x[i]), le);
  }
  return le;
}

std::vector<bool> AsciiBits(std::string_view s) {
  std::vector<bool> out;
  PushBits(out, AsBytes(s));
  return out;
}

// Whether "<century><birth>" <= latest, where latest is eight ASCII digits.
Bit CenturyLessOrEqual(CircuitBuilder& b, std::string_view century,
                       const std::vector<Bit>& birth, const std::string& latest) {
  std::string_view head = std::string_view(latest).substr(0, 2);
  if (century < head) return b.One();
  if (century > head) return b.Zero();
  return LessOrEqualConstant(b, birth, AsciiBits(std::string_view(latest).substr(2)));
}

Bit AgeOver(CircuitBuilder& b, const Policy& policy) {
  auto witness_byte_bits = [&](size_t offset, size_t len) {
    std::vector<Bit> bits;
    for (size_t i = 8 * offset; i < 8 * (offset + len); ++i) {
      bits.push_back(b.Witness(static_cast<uint32_t>(i)));
    }
    return bits;
  };
  std::vector<Bit> birth =
      witness_byte_bits(eid::layout::kBirthDateOffset, eid::layout::kDateLength);
  std::vector<Bit> yy(birth.begin(), birth.begin() + 16);

  char ref_yy[8];
  std::snprintf(ref_yy, sizeof(ref_yy), "%02d", policy.ref_date.year % 100);
  Bit twenty_first = LessOrEqualConstant(b, yy, AsciiBits(std::string_view(ref_yy, 2)));

  std::string latest = LatestBirthDigits(policy);
  Bit le20 = CenturyLessOrEqual(b, "20", birth, latest);
  Bit le19 = CenturyLessOrEqual(b, "19", birth, latest);
  // twenty_first ? le20 : le19
  return b.Xor(le19, b.And(twenty_first, b.Xor(le20, le19)));
}

}  // namespace

Bytes Statement::Encode() const {
  CanonicalWriter w;
  w.Field(m).Field(policy.Encode()).Field(ProfileName(profile));
  return w.Take();
}

Digest32 SaltedDigest(const Digest32& dg1_hash, const Nonce& nonce, HashProfile profile) {
  return primitives::Hash(Concat({dg1_hash.span(), nonce}), profile);
}

Digest32 SaltedDigest(const eid::DataGroup1& dg1, const Nonce& nonce,
                      HashProfile profile) {
  return SaltedDigest(primitives::Hash(dg1.bytes(), profile), nonce, profile);
}

bool RelationHolds(const Statement& stmt, const Witness& wit) {
  return SaltedDigest(wit.dg1, wit.nonce, stmt.profile) == stmt.m &&
         Satisfies(stmt.policy, wit.dg1);
}

std::vector<bool> PublicInputs(const Statement& stmt) {
  std::vector<bool> out;
  PushBits(out, stmt.m.span());
  return out;
}

std::vector<bool> WitnessInputs(const Witness& wit) {
  std::vector<bool> out;
  PushBits(out, wit.dg1.bytes());
  PushBits(out, wit.nonce);
  return out;
}

Circuit BuildCircuit(const Policy& policy, HashProfile profile) {
  if (policy.kind == PolicyKind::kAgeOver &&
      (policy.years < 0 || policy.years > kMaxAgeYears)) {
    throw Error(ErrorCode::kUnsupportedPolicy,
                "age threshold must be within [0, " + std::to_string(kMaxAgeYears) + "]");
  }
  const int rounds = RoundsFor(profile);
  CircuitBuilder b(kPublicBits, kWitnessBits);

  std::vector<Bit> dg1;
  for (uint32_t i = 0; i < 8 * eid::layout::kSize; ++i) dg1.push_back(b.Witness(i));
  std::vector<Bit> inner = gadget::Sha256(b, dg1, rounds);
  for (uint32_t i = 0; i < 8 * kNonceSize; ++i) {
    inner.push_back(b.Witness(8 * eid::layout::kSize + i));
  }
  std::vector<Bit> digest = gadget::Sha256(b, inner, rounds);

  // Balanced AND tree over the equality bits.
  std::vector<Bit> layer;
  for (uint32_t i = 0; i < kPublicBits; ++i) layer.push_back(b.Xnor(digest[i], b.Public(i)));
  if (policy.kind == PolicyKind::kAgeOver) layer.push_back(AgeOver(b, policy));
  while (layer.size() > 1) {
    std::vector<Bit> next;
    for (size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(b.And(layer[i], layer[i + 1]));
    if (layer.size() % 2) next.push_back(layer.back());
    layer = std::move(next);
  }
  return b.Finish(layer[0]);
}

constexpr size_t kCircuitCacheLimit = 32;

std::shared_ptr<const CompiledCircuit> CachedCircuit(const Policy& policy,
                                                     HashProfile profile) {
  static std::mutex mu;
  static std::map<std::pair<Bytes, HashProfile>, std::shared_ptr<const CompiledCircuit>>
      cache;
  auto key = std::make_pair(policy.Encode(), profile);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto compiled = std::make_shared<CompiledCircuit>();
  compiled->circuit = BuildCircuit(policy, profile);
  compiled->digest = compiled->circuit.Digest();
  uint32_t wire = compiled->circuit.first_gate_wire();
  for (const Gate& g : compiled->circuit.gates) {
    if (g.op == GateOp::kAnd) compiled->and_wires.push_back(wire);
    ++wire;
  }
  std::shared_ptr<const CompiledCircuit> circuit = std::move(compiled);
  std::lock_guard<std::mutex> lock(mu);
  // Policies arrive from the network; bound the memory they can pin.
  if (cache.size() >= kCircuitCacheLimit) cache.clear();
  return cache.emplace(key, circuit).first->second;
}

}  // namespace fidoac::nizk
