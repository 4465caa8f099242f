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

#ifndef FIDOAC_PRIMITIVES_ERROR_H_
#define FIDOAC_PRIMITIVES_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fidoac {

enum class ErrorCode {
  kMalformed,
  kBadPoint,
  kAuthFail,
  kBadAttributes,
  kAccessDenied,
  kChannelClosed,
  kCaReject,
  kUnsupportedPolicy,
  kBadPolicy,
  kNotAWitness,
  kNoTrapdoor,
  kInvalidArgument,
  kStateReplay,
  kNoSource,
  kNotAttested,
  kNoCredential,
  kWrongToken,
  kAlreadySetup,
  kOracleAbort,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure that the protocol surfaces to a caller is an Error carrying
// one of the codes above. Verification predicates never throw; they return
// false instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fidoac

#endif  // FIDOAC_PRIMITIVES_ERROR_H_
