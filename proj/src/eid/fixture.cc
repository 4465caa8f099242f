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

#include "fidoac/eid/fixture.h"

#include <fstream>
#include <sstream>

#include "fidoac/primitives/error.h"

namespace fidoac::eid {
namespace {

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

KeyValues ParseKeyValues(std::string_view text) {
  KeyValues kv;
  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = Trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kMalformed,
                  "line " + std::to_string(line_no) + " has no '='");
    }
    kv[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
  }
  return kv;
}

std::string FormatKeyValues(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

KeyValues ReadKeyValueFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseKeyValues(ss.str());
}

void WriteKeyValueFile(const std::string& path, const KeyValues& kv) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << FormatKeyValues(kv);
}

const std::string& RequireKey(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorCode::kMalformed, "missing key '" + key + "'");
  return it->second;
}

std::string SaveChipFixture(const Chip& chip) {
  const Attributes& a = chip.attributes_;
  KeyValues kv{
      {"name", a.name},
      {"birth_date", a.birth_date},
      {"expiry_date", a.expiry_date},
      {"nationality", a.nationality},
      {"sex", a.sex},
      {"document_number", a.document_number},
      {"personal_number", a.personal_number},
      {"profile", std::string(ProfileName(chip.profile_))},
      {"ask", HexEncode(chip.ask_)},
      {"pk_eid", HexEncode(chip.public_.pk_eid)},
      {"pi_pa", HexEncode(chip.public_.pi_pa)},
  };
  return FormatKeyValues(kv);
}

Chip LoadChipFixture(std::string_view text) {
  KeyValues kv = ParseKeyValues(text);
  Attributes a;
  a.name = RequireKey(kv, "name");
  a.birth_date = RequireKey(kv, "birth_date");
  a.expiry_date = RequireKey(kv, "expiry_date");
  a.nationality = RequireKey(kv, "nationality");
  a.sex = RequireKey(kv, "sex");
  a.document_number = RequireKey(kv, "document_number");
  a.personal_number = RequireKey(kv, "personal_number");
  return Chip::FromParts(a, HexDecode(RequireKey(kv, "ask")),
                         HexDecode(RequireKey(kv, "pk_eid")),
                         HexDecode(RequireKey(kv, "pi_pa")),
                         ParseProfile(RequireKey(kv, "profile")));
}

std::string SaveKeyPair(const primitives::KeyPair& key) {
  return FormatKeyValues({{"sk", HexEncode(key.sk)}, {"pk", HexEncode(key.pk)}});
}

primitives::KeyPair LoadKeyPair(std::string_view text) {
  KeyValues kv = ParseKeyValues(text);
  return {HexDecode(RequireKey(kv, "sk")), HexDecode(RequireKey(kv, "pk"))};
}

}  // namespace fidoac::eid
