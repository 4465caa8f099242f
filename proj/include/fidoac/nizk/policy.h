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

#ifndef FIDOAC_NIZK_POLICY_H_
#define FIDOAC_NIZK_POLICY_H_

#include <string>
#include <string_view>

#include "fidoac/eid/mrz.h"
#include "fidoac/primitives/bytes.h"

namespace fidoac::nizk {

enum class PolicyKind { kNone, kAgeOver };

inline constexpr int kMaxAgeYears = 150;

struct Policy {
  PolicyKind kind = PolicyKind::kNone;
  int years = 0;
  eid::Date ref_date;  // unused for kNone

  static Policy None() { return {}; }
  static Policy AgeOver(int years, const eid::Date& ref_date) {
    return {PolicyKind::kAgeOver, years, ref_date};
  }

  // {"kind":"age_over","years":18,"ref_date":"20230101"} or {"kind":"none"}
  std::string ToJson() const;
  // canonical(kind, years, ref_date); what statements and CRSs bind to.
  Bytes Encode() const;
  bool operator==(const Policy&) const = default;
};

// Shared by the client and the server-side extension reader. Throws
// Error(kBadPolicy) on malformed input and Error(kUnsupportedPolicy) on an
// unknown kind.
Policy ParsePolicy(std::string_view json);
Policy ParsePolicy(ByteSpan json);

// Latest birth date (YYYYMMDD as an integer) that satisfies age_over. Not
// always a calendar date: Feb 29 is kept as-is, which orders correctly.
int LatestBirth(const Policy& policy);

// The same value as eight ASCII digits. Throws Error(kUnsupportedPolicy) if
// it falls before year 0.
std::string LatestBirthDigits(const Policy& policy);

// The record's birth date as eight ASCII digits, with the century chosen by
// the pivot rule against `ref_date`. Works on the raw bytes, like the circuit.
std::string PivotedBirthDigits(const eid::DataGroup1& dg1, const eid::Date& ref_date);

// Evaluates the policy on the holder's record in the clear, with the same
// byte-wise comparison the circuit performs.
bool Satisfies(const Policy& policy, const eid::DataGroup1& dg1);

}  // namespace fidoac::nizk

#endif  // FIDOAC_NIZK_POLICY_H_
