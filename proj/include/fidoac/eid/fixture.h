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

// Plain key=value text files for chips, keys, and service configuration.

#ifndef FIDOAC_EID_FIXTURE_H_
#define FIDOAC_EID_FIXTURE_H_

#include <map>
#include <string>
#include <string_view>

#include "fidoac/eid/chip.h"
#include "fidoac/primitives/primitives.h"

namespace fidoac::eid {

using KeyValues = std::map<std::string, std::string>;

// One "key=value" per line; blank lines and lines starting with '#' are
// skipped. Throws Error(kMalformed) on a line without '='.
KeyValues ParseKeyValues(std::string_view text);
std::string FormatKeyValues(const KeyValues& kv);
KeyValues ReadKeyValueFile(const std::string& path);
void WriteKeyValueFile(const std::string& path, const KeyValues& kv);

// Throws Error(kMalformed) if `key` is absent.
const std::string& RequireKey(const KeyValues& kv, const std::string& key);

// The fixture carries the chip secret, so it stands in for the physical
// document and must be handled like one.
std::string SaveChipFixture(const Chip& chip);
Chip LoadChipFixture(std::string_view text);

std::string SaveKeyPair(const primitives::KeyPair& key);
primitives::KeyPair LoadKeyPair(std::string_view text);

}  // namespace fidoac::eid

#endif  // FIDOAC_EID_FIXTURE_H_
