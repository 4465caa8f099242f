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

#include "golden.h"

#include <random>

#include "fidoac/fido/messages.h"

namespace fidoac::cli {
namespace {

Bytes Draw(std::mt19937_64& rng, size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<uint8_t>(rng());
  return out;
}

}  // namespace

nlohmann::json BindVectors(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  static constexpr size_t kProofSizes[] = {0, 1, 31, 32, 33, 255, 256, 1024, 4099};
  nlohmann::json vectors = nlohmann::json::array();
  for (int i = 0; i < count; ++i) {
    size_t rs_len = i == count - 1 ? 4096 : fido::kRsSize;
    client::AttributeProof p;
    p.att_m = Draw(rng, 64);
    if (i % 4 != 3) p.sigma_m = Draw(rng, 64);
    p.pi_zkp.bytes = Draw(rng, kProofSizes[i % std::size(kProofSizes)]);
    Bytes rs = Draw(rng, rs_len);
    vectors.push_back({{"id", i},
                       {"rs", Base64UrlEncode(rs)},
                       {"proof", nlohmann::json::parse(p.ToJson())},
                       {"proof_canonical", Base64UrlEncode(p.Encode())},
                       {"bound_challenge", Base64UrlEncode(fido::BindChallenge(rs, p))}});
  }
  return {{"seed", seed}, {"vectors", vectors}};
}

}  // namespace fidoac::cli
