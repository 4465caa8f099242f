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

#ifndef FIDOAC_ACSERVER_CONFIG_H_
#define FIDOAC_ACSERVER_CONFIG_H_

#include <string>

#include "fidoac/fido/check_ac.h"

namespace fidoac::acserver {

inline constexpr int kDefaultPort = 8780;
inline constexpr std::string_view kPortEnv = "FIDOAC_ACSERVER_PORT";

// key=value file:
//   tee_root_pk=<hex>        required
//   package_name=<string>    required
//   package_cert_fp=<hex>    required, 32 bytes
//   mediator_pk=<hex>        optional pin
//   profile=test|default     optional, default "default"
//   tau=<n>                  optional, default for the profile
//   port=<n>                 optional
struct Config {
  fido::AcTrust trust;
  int port = kDefaultPort;

  // Throws Error(kMalformed).
  static Config Parse(std::string_view text);
  static Config Load(const std::string& path);
  std::string Format() const;
};

// Port precedence: explicit flag (> 0), environment, config.
int ResolvePort(int flag_port, const Config& config);

}  // namespace fidoac::acserver

#endif  // FIDOAC_ACSERVER_CONFIG_H_
