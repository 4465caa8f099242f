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

#ifndef FIDOAC_TOOLS_CLI_H_
#define FIDOAC_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace fidoac::cli {

// Exit codes shared by every subcommand that runs a flow.
inline constexpr int kExitAccepted = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAttestationRefused = 2;
inline constexpr int kExitProofFailure = 3;
inline constexpr int kExitFidoFailure = 4;

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fidoac::cli

#endif  // FIDOAC_TOOLS_CLI_H_
