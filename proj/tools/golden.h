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

// Deterministic bind_challenge vectors shared with the browser-side shim.

#ifndef FIDOAC_TOOLS_GOLDEN_H_
#define FIDOAC_TOOLS_GOLDEN_H_

#include <cstdint>

#include "json.hpp"

namespace fidoac::cli {

inline constexpr int kDefaultGoldenCount = 20;
inline constexpr uint64_t kDefaultGoldenSeed = 20240401;

// {"vectors": [{"id", "rs", "proof": {att_m, sigma_m, pi_zkp},
//               "proof_canonical", "bound_challenge"}, ...]}, binary fields
// base64url. The last vector carries a 4096-byte challenge.
nlohmann::json BindVectors(int count = kDefaultGoldenCount,
                           uint64_t seed = kDefaultGoldenSeed);

}  // namespace fidoac::cli

#endif  // FIDOAC_TOOLS_GOLDEN_H_
