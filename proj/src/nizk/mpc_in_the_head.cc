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

#include "fidoac/nizk/mpc_in_the_head.h"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <future>
#include <span>
#include <vector>

#include "fidoac/nizk/bitslice.h"
#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::nizk {
namespace {

static_assert(std::endian::native == std::endian::little,
              "tape and view packing assume a little-endian host");

constexpr size_t kSeedSize = 16;
constexpr size_t kLanes = 64;
constexpr uint32_t kMaxTau = 4096;

using Seed = std::array<uint8_t, kSeedSize>;
using Scalar = std::array<uint8_t, crypto_core_ristretto255_SCALARBYTES>;
using Point = std::array<uint8_t, crypto_core_ristretto255_BYTES>;

size_t Words(size_t bits) { return (bits + 63) / 64; }

// ---------------------------------------------------------------------------
// Group and hashing helpers.

Scalar HashToScalar(std::string_view domain, ByteSpan data) {
  std::array<uint8_t, crypto_hash_sha512_BYTES> h;
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  crypto_hash_sha512_update(&st, reinterpret_cast<const uint8_t*>(domain.data()),
                            domain.size());
  crypto_hash_sha512_update(&st, data.data(), data.size());
  crypto_hash_sha512_final(&st, h.data());
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.data(), h.data());
  return s;
}

Scalar RandomScalar() {
  Scalar s;
  crypto_core_ristretto255_scalar_random(s.data());
  return s;
}

bool IsCanonicalScalar(ByteSpan s) {
  if (s.size() != crypto_core_ristretto255_SCALARBYTES) return false;
  std::array<uint8_t, crypto_core_ristretto255_NONREDUCEDSCALARBYTES> wide{};
  std::copy(s.begin(), s.end(), wide.begin());
  Scalar reduced;
  crypto_core_ristretto255_scalar_reduce(reduced.data(), wide.data());
  return std::equal(reduced.begin(), reduced.end(), s.begin());
}

bool Commit(const Scalar& msg, const Scalar& rho, const Point& h, Point& out) {
  Point a, b;
  return crypto_scalarmult_ristretto255_base(a.data(), msg.data()) == 0 &&
         crypto_scalarmult_ristretto255(b.data(), rho.data(), h.data()) == 0 &&
         crypto_core_ristretto255_add(out.data(), a.data(), b.data()) == 0;
}

Scalar ViewMessage(const Seed& seed, ByteSpan x2, ByteSpan view) {
  return HashToScalar("fidoac/nizk/view", Canonical({seed, x2, view}));
}

template <size_t N>
std::array<uint8_t, N> ToArray(ByteSpan s) {
  std::array<uint8_t, N> out;
  std::copy(s.begin(), s.end(), out.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Tapes and bit slicing. Lane k of a sliced word holds repetition k.

std::vector<uint64_t> ExpandTape(const Seed& seed, size_t words) {
  Digest32 key = primitives::Hash(Concat({AsBytes("fidoac/nizk/tape"), seed}));
  std::array<uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  std::vector<uint64_t> out(words);
  crypto_stream_chacha20_ietf(reinterpret_cast<uint8_t*>(out.data()), words * 8,
                              nonce.data(), key.bytes.data());
  return out;
}

// per_lane[k] has `words` words (or is empty, meaning zero). Returns
// 64 * words sliced words.
std::vector<uint64_t> Slice(const std::vector<std::vector<uint64_t>>& per_lane,
                            size_t words) {
  std::vector<uint64_t> out(words * 64);
  uint64_t block[64];
  for (size_t w = 0; w < words; ++w) {
    for (size_t k = 0; k < 64; ++k) {
      block[k] = k < per_lane.size() && !per_lane[k].empty() ? per_lane[k][w] : 0;
    }
    Transpose64(block);
    std::copy(block, block + 64, out.begin() + 64 * w);
  }
  return out;
}

// Inverse of Slice for the first `lanes` lanes; `sliced` has 64 * words
// entries. Returns the packed little-endian bytes of each lane, cut to
// `bytes` bytes.
std::vector<Bytes> Unslice(const std::vector<uint64_t>& sliced, size_t words,
                           size_t lanes, size_t bytes) {
  std::vector<Bytes> out(lanes, Bytes(words * 8));
  uint64_t block[64];
  for (size_t w = 0; w < words; ++w) {
    std::copy(sliced.begin() + 64 * w, sliced.begin() + 64 * (w + 1), block);
    Transpose64(block);
    for (size_t k = 0; k < lanes; ++k) {
      std::memcpy(out[k].data() + 8 * w, &block[k], 8);
    }
  }
  for (auto& b : out) b.resize(bytes);
  return out;
}

std::vector<uint64_t> BytesToWords(ByteSpan bytes, size_t words) {
  std::vector<uint64_t> out(words, 0);
  std::memcpy(out.data(), bytes.data(), std::min(bytes.size(), words * 8));
  return out;
}

uint64_t LaneMask(size_t lanes) {
  return lanes == 64 ? ~uint64_t{0} : (uint64_t{1} << lanes) - 1;
}

// ---------------------------------------------------------------------------
// Three-party evaluation (prover side).

struct ProverLane {
  std::array<Seed, 3> seed;
  std::array<Scalar, 3> rho;
  Bytes x2;
  std::array<Bytes, 3> view;
  std::array<uint8_t, 3> y{};
  std::array<Point, 3> commitment;
  int cheat_party = -1;
};

void ProveBatch(const CompiledCircuit& cc, const std::vector<bool>& pub,
                const std::vector<bool>& wit, const Point& h,
                std::span<ProverLane> lanes) {
  const Circuit& c = cc.circuit;
  const size_t n_in = c.num_witness;
  const size_t n_and = c.num_and;
  const size_t tape_words = Words(n_in + n_and);
  const uint64_t all = LaneMask(lanes.size());

  std::array<std::vector<uint64_t>, 3> tape;
  for (int p = 0; p < 3; ++p) {
    std::vector<std::vector<uint64_t>> per_lane;
    for (auto& l : lanes) per_lane.push_back(ExpandTape(l.seed[p], tape_words));
    tape[p] = Slice(per_lane, tape_words);
  }

  // Shares of wire w for party p live at w[3 * wire + p].
  std::vector<uint64_t> w(3 * size_t{c.num_wires()}, 0);
  w[0] = all;
  for (uint32_t i = 0; i < c.num_public; ++i) w[3 * c.public_wire(i)] = pub[i] ? all : 0;
  for (uint32_t i = 0; i < c.num_witness; ++i) {
    uint64_t* s = &w[3 * c.witness_wire(i)];
    s[0] = tape[0][i];
    s[1] = tape[1][i];
    s[2] = (wit[i] ? all : 0) ^ tape[0][i] ^ tape[1][i];
  }
  size_t out = c.first_gate_wire();
  size_t and_idx = 0;
  for (const Gate& g : c.gates) {
    const uint64_t* a = &w[3 * g.a];
    const uint64_t* b = &w[3 * g.b];
    uint64_t* z = &w[3 * out];
    if (g.op == GateOp::kXor) {
      z[0] = a[0] ^ b[0];
      z[1] = a[1] ^ b[1];
      z[2] = a[2] ^ b[2];
    } else {
      size_t t = n_in + and_idx++;
      uint64_t r0 = tape[0][t], r1 = tape[1][t], r2 = tape[2][t];
      z[0] = (a[0] & b[0]) ^ (a[1] & b[0]) ^ (a[0] & b[1]) ^ r0 ^ r1;
      z[1] = (a[1] & b[1]) ^ (a[2] & b[1]) ^ (a[1] & b[2]) ^ r1 ^ r2;
      z[2] = (a[2] & b[2]) ^ (a[0] & b[2]) ^ (a[2] & b[0]) ^ r2 ^ r0;
    }
    ++out;
  }
  for (size_t k = 0; k < lanes.size(); ++k) {
    if (lanes[k].cheat_party >= 0) {
      w[3 * c.output + lanes[k].cheat_party] ^= uint64_t{1} << k;
    }
  }

  const size_t and_words = Words(n_and);
  const size_t view_bytes = (n_and + 7) / 8;
  for (int p = 0; p < 3; ++p) {
    std::vector<uint64_t> gathered(and_words * 64, 0);
    for (size_t i = 0; i < n_and; ++i) gathered[i] = w[3 * cc.and_wires[i] + p];
    auto views = Unslice(gathered, and_words, lanes.size(), view_bytes);
    for (size_t k = 0; k < lanes.size(); ++k) {
      lanes[k].view[p] = std::move(views[k]);
      lanes[k].y[p] = (w[3 * c.output + p] >> k) & 1;
    }
  }
  const size_t in_words = Words(n_in);
  std::vector<uint64_t> x2(in_words * 64, 0);
  for (size_t i = 0; i < n_in; ++i) x2[i] = w[3 * c.witness_wire(static_cast<uint32_t>(i)) + 2];
  auto x2_lanes = Unslice(x2, in_words, lanes.size(), (n_in + 7) / 8);

  for (size_t k = 0; k < lanes.size(); ++k) {
    ProverLane& l = lanes[k];
    l.x2 = std::move(x2_lanes[k]);
    for (int p = 0; p < 3; ++p) {
      Scalar msg = ViewMessage(l.seed[p], p == 2 ? ByteSpan(l.x2) : ByteSpan(), l.view[p]);
      if (!Commit(msg, l.rho[p], h, l.commitment[p])) {
        throw Error(ErrorCode::kInvalidArgument, "degenerate commitment");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Two-view recomputation (verifier and simulator side). Party a = e is
// recomputed; party b = e + 1 supplies its view.

struct VerifierLane {
  int e = 0;
  Seed seed_a{}, seed_b{};
  Bytes x2;      // empty when e = 0
  Bytes view_b;
  Bytes view_a;  // output
  uint8_t y_a = 0, y_b = 0;  // output
};

void RecomputeBatch(const CompiledCircuit& cc, const std::vector<bool>& pub,
                    std::span<VerifierLane> lanes) {
  const Circuit& c = cc.circuit;
  const size_t n_in = c.num_witness;
  const size_t n_and = c.num_and;
  const size_t tape_words = Words(n_in + n_and);
  const size_t in_words = Words(n_in);
  const size_t and_words = Words(n_and);

  std::vector<std::vector<uint64_t>> ta, tb, x2, vb;
  uint64_t a_is_p0 = 0, b_is_p0 = 0, a_is_p2 = 0, b_is_p2 = 0;
  for (size_t k = 0; k < lanes.size(); ++k) {
    const VerifierLane& l = lanes[k];
    ta.push_back(ExpandTape(l.seed_a, tape_words));
    tb.push_back(ExpandTape(l.seed_b, tape_words));
    x2.push_back(BytesToWords(l.x2, in_words));
    vb.push_back(BytesToWords(l.view_b, and_words));
    uint64_t bit = uint64_t{1} << k;
    if (l.e == 0) a_is_p0 |= bit;
    if (l.e == 2) b_is_p0 |= bit;
    if (l.e == 2) a_is_p2 |= bit;
    if (l.e == 1) b_is_p2 |= bit;
  }
  std::vector<uint64_t> tape_a = Slice(ta, tape_words);
  std::vector<uint64_t> tape_b = Slice(tb, tape_words);
  std::vector<uint64_t> x2s = Slice(x2, in_words);
  std::vector<uint64_t> view_b = Slice(vb, and_words);

  std::vector<uint64_t> w(2 * size_t{c.num_wires()}, 0);
  w[0] = a_is_p0;
  w[1] = b_is_p0;
  for (uint32_t i = 0; i < c.num_public; ++i) {
    if (pub[i]) {
      w[2 * c.public_wire(i)] = a_is_p0;
      w[2 * c.public_wire(i) + 1] = b_is_p0;
    }
  }
  for (uint32_t i = 0; i < c.num_witness; ++i) {
    uint64_t* s = &w[2 * c.witness_wire(i)];
    s[0] = (tape_a[i] & ~a_is_p2) | (x2s[i] & a_is_p2);
    s[1] = (tape_b[i] & ~b_is_p2) | (x2s[i] & b_is_p2);
  }
  size_t out = c.first_gate_wire();
  size_t and_idx = 0;
  for (const Gate& g : c.gates) {
    const uint64_t* a = &w[2 * g.a];
    const uint64_t* b = &w[2 * g.b];
    uint64_t* z = &w[2 * out];
    if (g.op == GateOp::kXor) {
      z[0] = a[0] ^ b[0];
      z[1] = a[1] ^ b[1];
    } else {
      size_t t = n_in + and_idx;
      z[0] = (a[0] & b[0]) ^ (a[1] & b[0]) ^ (a[0] & b[1]) ^ tape_a[t] ^ tape_b[t];
      z[1] = view_b[and_idx];
      ++and_idx;
    }
    ++out;
  }

  std::vector<uint64_t> gathered(and_words * 64, 0);
  for (size_t i = 0; i < n_and; ++i) gathered[i] = w[2 * cc.and_wires[i]];
  auto views = Unslice(gathered, and_words, lanes.size(), (n_and + 7) / 8);
  for (size_t k = 0; k < lanes.size(); ++k) {
    lanes[k].view_a = std::move(views[k]);
    lanes[k].y_a = (w[2 * c.output] >> k) & 1;
    lanes[k].y_b = (w[2 * c.output + 1] >> k) & 1;
  }
}

// Runs fn(begin, end) over 64-lane batches, in parallel.
template <typename Fn>
void ForEachBatch(size_t n, Fn fn) {
  std::vector<std::future<void>> jobs;
  for (size_t begin = 0; begin < n; begin += kLanes) {
    size_t end = std::min(n, begin + kLanes);
    jobs.push_back(std::async(std::launch::async, [=] { fn(begin, end); }));
  }
  for (auto& j : jobs) j.get();
}

// ---------------------------------------------------------------------------
// Fiat-Shamir.

struct RepetitionPublic {
  std::array<Point, 3> commitment;
  std::array<uint8_t, 3> y;
};

Digest32 ChallengeDigest(const Crs& crs, const Statement& stmt,
                         const std::vector<RepetitionPublic>& reps) {
  Bytes body;
  body.reserve(reps.size() * (3 * 32 + 3));
  for (const auto& r : reps) {
    for (const Point& c : r.commitment) body.insert(body.end(), c.begin(), c.end());
    body.insert(body.end(), r.y.begin(), r.y.end());
  }
  CanonicalWriter w;
  w.Field(crs.Digest()).Field(stmt.Encode()).Field(body);
  return primitives::Hash(w.bytes());
}

std::vector<int> ChallengeTrits(const Digest32& digest, uint32_t tau) {
  std::vector<int> out;
  for (uint32_t ctr = 0; out.size() < tau; ++ctr) {
    CanonicalWriter w;
    w.Field(digest).U32(ctr);
    Digest32 block = primitives::Hash(w.bytes());
    for (uint8_t byte : block.bytes) {
      for (int i = 0; i < 4 && out.size() < tau; ++i) {
        int v = (byte >> (2 * i)) & 3;
        if (v < 3) out.push_back(v);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof layout: tau, challenge digest, then per repetition
//   C[e+2], seed[e], seed[e+1], rho[e], rho[e+1], x2 (empty if e = 0), view[e+1].

struct OpenedRepetition {
  Point hidden_commitment;
  Seed seed_a, seed_b;
  Scalar rho_a, rho_b;
  Bytes x2;
  Bytes view_b;
};

Proof WriteProof(uint32_t tau, const Digest32& digest,
                 const std::vector<OpenedRepetition>& reps) {
  CanonicalWriter w;
  w.U32(tau).Field(digest);
  for (const auto& r : reps) {
    w.Field(r.hidden_commitment)
        .Field(r.seed_a)
        .Field(r.seed_b)
        .Field(r.rho_a)
        .Field(r.rho_b)
        .Field(r.x2)
        .Field(r.view_b);
  }
  return Proof{w.Take()};
}

std::shared_ptr<const CompiledCircuit> CircuitFor(const Crs& crs, const Statement& stmt) {
  if (!(crs.policy == stmt.policy) || crs.profile != stmt.profile) {
    throw Error(ErrorCode::kInvalidArgument, "statement does not match the CRS");
  }
  auto cc = CachedCircuit(stmt.policy, stmt.profile);
  if (cc->digest != crs.circuit_digest) {
    throw Error(ErrorCode::kInvalidArgument, "CRS circuit digest mismatch");
  }
  if (crs.tau == 0 || crs.tau > kMaxTau) {
    throw Error(ErrorCode::kInvalidArgument, "repetition count out of range");
  }
  return cc;
}

Proof ProveImpl(const Crs& crs, const Statement& stmt, const Witness& wit, bool cheat) {
  primitives::EnsureSodium();
  auto cc = CircuitFor(crs, stmt);
  const std::vector<bool> pub = PublicInputs(stmt);
  const std::vector<bool> wbits = WitnessInputs(wit);
  const Point h = crs.h;

  std::vector<ProverLane> lanes(crs.tau);
  for (auto& l : lanes) {
    for (int p = 0; p < 3; ++p) {
      l.seed[p] = primitives::RandomArray<kSeedSize>();
      l.rho[p] = RandomScalar();
    }
    if (cheat) l.cheat_party = static_cast<int>(randombytes_uniform(3));
  }
  ForEachBatch(lanes.size(), [&](size_t begin, size_t end) {
    ProveBatch(*cc, pub, wbits, h, std::span(lanes).subspan(begin, end - begin));
  });

  std::vector<RepetitionPublic> pubs;
  for (const auto& l : lanes) pubs.push_back({l.commitment, l.y});
  Digest32 digest = ChallengeDigest(crs, stmt, pubs);
  std::vector<int> es = ChallengeTrits(digest, crs.tau);

  std::vector<OpenedRepetition> reps;
  for (size_t r = 0; r < lanes.size(); ++r) {
    const ProverLane& l = lanes[r];
    int e = es[r], e1 = (e + 1) % 3, e2 = (e + 2) % 3;
    reps.push_back({l.commitment[e2], l.seed[e], l.seed[e1], l.rho[e], l.rho[e1],
                    e == 0 ? Bytes() : l.x2, l.view[e1]});
  }
  return WriteProof(crs.tau, digest, reps);
}

}  // namespace

uint32_t DefaultTau(HashProfile profile) {
  return profile == HashProfile::kTest ? kTestProfileTau : kDefaultProfileTau;
}

Bytes Crs::Encode() const {
  CanonicalWriter w;
  w.Field(policy.ToJson())
      .Field(ProfileName(profile))
      .U32(tau)
      .Field(circuit_digest)
      .Field(h)
      .Field(seed)
      .U32(static_cast<uint32_t>(mode));
  return w.Take();
}

Crs Crs::Decode(ByteSpan data) {
  CanonicalReader r(data);
  Crs crs;
  try {
    crs.policy = ParsePolicy(r.FieldString());
    crs.profile = ParseProfile(r.FieldString());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, e.what());
  }
  crs.tau = r.U32();
  crs.circuit_digest.bytes = ToArray<32>(r.FixedField(32));
  crs.h = ToArray<32>(r.FixedField(32));
  crs.seed = r.FieldBytes();
  uint32_t mode = r.U32();
  if (mode > 1) throw Error(ErrorCode::kMalformed, "unknown CRS mode");
  crs.mode = static_cast<CrsMode>(mode);
  r.ExpectEnd();
  return crs;
}

Digest32 Crs::Digest() const { return primitives::Hash(Encode()); }

Crs ZkSetup(const Policy& policy, HashProfile profile, uint32_t tau, ByteSpan seed) {
  primitives::EnsureSodium();
  if (tau == 0 || tau > kMaxTau) {
    throw Error(ErrorCode::kInvalidArgument, "repetition count must be in [1, 4096]");
  }
  Crs crs;
  crs.policy = policy;
  crs.profile = profile;
  crs.tau = tau;
  crs.circuit_digest = CachedCircuit(policy, profile)->digest;
  crs.seed.assign(seed.begin(), seed.end());
  crs.mode = CrsMode::kTransparent;

  std::array<uint8_t, crypto_hash_sha512_BYTES> wide;
  Bytes input = Canonical({AsBytes("fidoac/nizk/pedersen-h"), AsBytes(policy.ToJson()),
                           AsBytes(ProfileName(profile)), crs.circuit_digest.span(), seed});
  crypto_hash_sha512(wide.data(), input.data(), input.size());
  crypto_core_ristretto255_from_hash(crs.h.data(), wide.data());
  return crs;
}

SimulationSetup ZkSetupWithTrapdoor(const Policy& policy, HashProfile profile,
                                    uint32_t tau) {
  SimulationSetup out;
  out.crs = ZkSetup(policy, profile, tau);
  out.crs.mode = CrsMode::kSimulation;
  Scalar td;
  do {
    td = RandomScalar();
  } while (crypto_scalarmult_ristretto255_base(out.crs.h.data(), td.data()) != 0);
  out.trapdoor.scalar = td;
  return out;
}

Proof ZkProve(const Crs& crs, const Statement& stmt, const Witness& wit) {
  if (!RelationHolds(stmt, wit)) {
    throw Error(ErrorCode::kNotAWitness, "witness does not satisfy the relation");
  }
  return ProveImpl(crs, stmt, wit, /*cheat=*/false);
}

bool ZkVerify(const Crs& crs, const Statement& stmt, const Proof& proof) {
  try {
    primitives::EnsureSodium();
    auto cc = CircuitFor(crs, stmt);
    if (crypto_core_ristretto255_is_valid_point(crs.h.data()) != 1) return false;
    const size_t x2_bytes = (cc->circuit.num_witness + 7) / 8;
    const size_t view_bytes = (cc->circuit.num_and + 7) / 8;

    CanonicalReader r(proof.bytes);
    if (r.U32() != crs.tau) return false;
    Digest32 digest;
    digest.bytes = ToArray<32>(r.FixedField(32));
    std::vector<int> es = ChallengeTrits(digest, crs.tau);

    std::vector<VerifierLane> lanes(crs.tau);
    std::vector<OpenedRepetition> opened(crs.tau);
    for (uint32_t i = 0; i < crs.tau; ++i) {
      OpenedRepetition& o = opened[i];
      o.hidden_commitment = ToArray<32>(r.FixedField(32));
      o.seed_a = ToArray<kSeedSize>(r.FixedField(kSeedSize));
      o.seed_b = ToArray<kSeedSize>(r.FixedField(kSeedSize));
      ByteSpan rho_a = r.FixedField(32), rho_b = r.FixedField(32);
      if (!IsCanonicalScalar(rho_a) || !IsCanonicalScalar(rho_b)) return false;
      o.rho_a = ToArray<32>(rho_a);
      o.rho_b = ToArray<32>(rho_b);
      o.x2 = r.FieldBytes();
      if (o.x2.size() != (es[i] == 0 ? 0 : x2_bytes)) return false;
      o.view_b = r.FieldBytes();
      if (o.view_b.size() != view_bytes) return false;
      if (crypto_core_ristretto255_is_valid_point(o.hidden_commitment.data()) != 1) {
        return false;
      }
      lanes[i] = {es[i], o.seed_a, o.seed_b, o.x2, o.view_b, {}, 0, 0};
    }
    r.ExpectEnd();

    const std::vector<bool> pub = PublicInputs(stmt);
    std::vector<RepetitionPublic> reps(crs.tau);
    std::vector<char> ok(crs.tau, 1);
    ForEachBatch(lanes.size(), [&](size_t begin, size_t end) {
      RecomputeBatch(*cc, pub, std::span(lanes).subspan(begin, end - begin));
      for (size_t i = begin; i < end; ++i) {
        const VerifierLane& l = lanes[i];
        const OpenedRepetition& o = opened[i];
        int e = l.e, e1 = (e + 1) % 3, e2 = (e + 2) % 3;
        RepetitionPublic& rp = reps[i];
        Scalar msg_a = ViewMessage(o.seed_a, e == 2 ? ByteSpan(o.x2) : ByteSpan(), l.view_a);
        Scalar msg_b = ViewMessage(o.seed_b, e1 == 2 ? ByteSpan(o.x2) : ByteSpan(), o.view_b);
        if (!Commit(msg_a, o.rho_a, crs.h, rp.commitment[e]) ||
            !Commit(msg_b, o.rho_b, crs.h, rp.commitment[e1])) {
          ok[i] = 0;
          continue;
        }
        rp.commitment[e2] = o.hidden_commitment;
        rp.y[e] = l.y_a;
        rp.y[e1] = l.y_b;
        rp.y[e2] = 1 ^ l.y_a ^ l.y_b;
      }
    });
    if (std::find(ok.begin(), ok.end(), 0) != ok.end()) return false;
    return ChallengeDigest(crs, stmt, reps) == digest;
  } catch (...) {
    return false;
  }
}

Proof ZkSimulate(const Crs& crs, const Statement& stmt,
                 const std::optional<Trapdoor>& trapdoor) {
  primitives::EnsureSodium();
  if (!trapdoor || crs.mode != CrsMode::kSimulation) {
    throw Error(ErrorCode::kNoTrapdoor, "CRS was not set up for simulation");
  }
  Point h_check;
  if (crypto_scalarmult_ristretto255_base(h_check.data(), trapdoor->scalar.data()) != 0 ||
      h_check != crs.h) {
    throw Error(ErrorCode::kNoTrapdoor, "trapdoor does not match the CRS");
  }
  auto cc = CircuitFor(crs, stmt);
  const size_t n_in = cc->circuit.num_witness;
  const size_t n_and = cc->circuit.num_and;

  // Commit to nothing in particular: C = u * G, opened later through the
  // trapdoor. Outputs are any sharing of 1.
  std::vector<std::array<Scalar, 3>> u(crs.tau);
  std::vector<RepetitionPublic> reps(crs.tau);
  for (uint32_t i = 0; i < crs.tau; ++i) {
    for (int p = 0; p < 3; ++p) {
      Point c;
      do {
        u[i][p] = RandomScalar();
      } while (crypto_scalarmult_ristretto255_base(c.data(), u[i][p].data()) != 0);
      reps[i].commitment[p] = c;
    }
    uint8_t bits = primitives::RandomBytes(1)[0];
    reps[i].y = {static_cast<uint8_t>(bits & 1), static_cast<uint8_t>((bits >> 1) & 1), 0};
    reps[i].y[2] = 1 ^ reps[i].y[0] ^ reps[i].y[1];
  }
  Digest32 digest = ChallengeDigest(crs, stmt, reps);
  std::vector<int> es = ChallengeTrits(digest, crs.tau);

  std::vector<VerifierLane> lanes(crs.tau);
  for (uint32_t i = 0; i < crs.tau; ++i) {
    VerifierLane& l = lanes[i];
    l.e = es[i];
    int e1 = (l.e + 1) % 3;
    l.seed_a = primitives::RandomArray<kSeedSize>();
    l.seed_b = primitives::RandomArray<kSeedSize>();
    if (l.e != 0) {
      l.x2 = primitives::RandomBytes((n_in + 7) / 8);
      if (n_in % 8) l.x2.back() &= static_cast<uint8_t>((1u << (n_in % 8)) - 1);
    }
    l.view_b = primitives::RandomBytes((n_and + 7) / 8);
    if (n_and % 8) l.view_b.back() &= static_cast<uint8_t>((1u << (n_and % 8)) - 1);
    // The last AND carries the output share.
    size_t last = n_and - 1;
    l.view_b[last / 8] = static_cast<uint8_t>(
        (l.view_b[last / 8] & ~(1u << (last % 8))) | (reps[i].y[e1] << (last % 8)));
  }

  const std::vector<bool> pub = PublicInputs(stmt);
  ForEachBatch(lanes.size(), [&](size_t begin, size_t end) {
    auto batch = std::span(lanes).subspan(begin, end - begin);
    // Party e's output share is a fair coin in its seed; redraw until it
    // matches the committed one.
    for (;;) {
      RecomputeBatch(*cc, pub, batch);
      bool done = true;
      for (size_t k = 0; k < batch.size(); ++k) {
        if (batch[k].y_a != reps[begin + k].y[batch[k].e]) {
          batch[k].seed_a = primitives::RandomArray<kSeedSize>();
          done = false;
        }
      }
      if (done) break;
    }
  });

  Scalar td_inv;
  crypto_core_ristretto255_scalar_invert(td_inv.data(), trapdoor->scalar.data());
  auto equivocate = [&](const Scalar& u_p, const Scalar& msg) {
    Scalar diff, rho;
    crypto_core_ristretto255_scalar_sub(diff.data(), u_p.data(), msg.data());
    crypto_core_ristretto255_scalar_mul(rho.data(), diff.data(), td_inv.data());
    return rho;
  };

  std::vector<OpenedRepetition> opened;
  for (uint32_t i = 0; i < crs.tau; ++i) {
    const VerifierLane& l = lanes[i];
    int e = l.e, e1 = (e + 1) % 3, e2 = (e + 2) % 3;
    Scalar msg_a = ViewMessage(l.seed_a, e == 2 ? ByteSpan(l.x2) : ByteSpan(), l.view_a);
    Scalar msg_b = ViewMessage(l.seed_b, e1 == 2 ? ByteSpan(l.x2) : ByteSpan(), l.view_b);
    opened.push_back({reps[i].commitment[e2], l.seed_a, l.seed_b,
                      equivocate(u[i][e], msg_a), equivocate(u[i][e1], msg_b), l.x2,
                      l.view_b});
  }
  return WriteProof(crs.tau, digest, opened);
}

namespace testing {

Proof CheatingProve(const Crs& crs, const Statement& stmt, const Witness& wit) {
  return ProveImpl(crs, stmt, wit, /*cheat=*/true);
}

}  // namespace testing

}  // namespace fidoac::nizk
