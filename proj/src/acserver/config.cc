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

#include "fidoac/acserver/config.h"

#include <charconv>
#include <cstdlib>

#include "fidoac/eid/fixture.h"
#include "fidoac/primitives/error.h"

namespace fidoac::acserver {
namespace {

int ParsePositive(const std::string& s, const char* what, int max) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v <= 0 || v > max) {
    throw Error(ErrorCode::kMalformed, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

Config FromKeyValues(const eid::KeyValues& kv) {
  Config c;
  try {
    c.trust.tee_root_pk = HexDecode(eid::RequireKey(kv, "tee_root_pk"));
    c.trust.package_name = eid::RequireKey(kv, "package_name");
    Bytes fp = HexDecode(eid::RequireKey(kv, "package_cert_fp"));
    if (fp.size() != 32) throw Error(ErrorCode::kMalformed, "package_cert_fp must be 32 bytes");
    std::copy(fp.begin(), fp.end(), c.trust.package_cert_fp.bytes.begin());
    if (kv.contains("mediator_pk")) c.trust.pk_m = HexDecode(kv.at("mediator_pk"));
    c.trust.profile = kv.contains("profile") ? ParseProfile(kv.at("profile"))
                                             : HashProfile::kDefault;
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, e.what());
  }
  c.trust.tau = kv.contains("tau") ? ParsePositive(kv.at("tau"), "tau", 4096)
                                   : nizk::DefaultTau(c.trust.profile);
  if (kv.contains("port")) c.port = ParsePositive(kv.at("port"), "port", 65535);
  return c;
}

}  // namespace

Config Config::Parse(std::string_view text) {
  return FromKeyValues(eid::ParseKeyValues(text));
}

Config Config::Load(const std::string& path) {
  return FromKeyValues(eid::ReadKeyValueFile(path));
}

std::string Config::Format() const {
  eid::KeyValues kv{{"tee_root_pk", HexEncode(trust.tee_root_pk)},
                    {"package_name", trust.package_name},
                    {"package_cert_fp", HexEncode(trust.package_cert_fp.span())},
                    {"profile", std::string(ProfileName(trust.profile))},
                    {"tau", std::to_string(trust.tau)},
                    {"port", std::to_string(port)}};
  if (!trust.pk_m.empty()) kv["mediator_pk"] = HexEncode(trust.pk_m);
  return eid::FormatKeyValues(kv);
}

int ResolvePort(int flag_port, const Config& config) {
  if (flag_port > 0) return flag_port;
  if (const char* env = std::getenv(std::string(kPortEnv).c_str())) {
    int v = std::atoi(env);
    if (v > 0 && v < 65536) return v;
  }
  return config.port;
}

}  // namespace fidoac::acserver
