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

#include "fidoac/nizk/policy.h"

#include <cstdio>

#include "json.hpp"

#include "fidoac/primitives/canonical.h"
#include "fidoac/primitives/error.h"

namespace fidoac::nizk {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kBadPolicy, what);
}

}  // namespace

std::string Policy::ToJson() const {
  json j;
  if (kind == PolicyKind::kNone) {
    j["kind"] = "none";
  } else {
    j["kind"] = "age_over";
    j["years"] = years;
    j["ref_date"] = ref_date.ToYyyymmdd();
  }
  return j.dump();
}

Bytes Policy::Encode() const {
  CanonicalWriter w;
  if (kind == PolicyKind::kNone) {
    w.Field(std::string_view("none"));
  } else {
    w.Field(std::string_view("age_over"))
        .U32(static_cast<uint32_t>(years))
        .Field(ref_date.ToYyyymmdd());
  }
  return w.Take();
}

Policy ParsePolicy(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) Bad("policy is not a JSON object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) Bad("policy has no kind");

  const std::string& k = kind->get_ref<const std::string&>();
  if (k == "none") {
    if (j.size() != 1) Bad("unexpected fields for kind none");
    return Policy::None();
  }
  if (k != "age_over") {
    throw Error(ErrorCode::kUnsupportedPolicy, "unsupported policy kind '" + k + "'");
  }
  auto years = j.find("years");
  auto ref = j.find("ref_date");
  if (years == j.end() || !years->is_number_integer()) Bad("years must be an integer");
  if (ref == j.end() || !ref->is_string()) Bad("ref_date must be a string");
  if (j.size() != 3) Bad("unexpected fields for kind age_over");
  int64_t y = years->get<int64_t>();
  if (y < 0 || y > 10000) Bad("years out of range");
  eid::Date d;
  try {
    d = eid::ParseYyyymmdd(ref->get_ref<const std::string&>());
  } catch (const Error& e) {
    Bad(std::string("ref_date: ") + e.what());
  }
  if (d.year < 1000) Bad("ref_date before year 1000");
  return Policy::AgeOver(static_cast<int>(y), d);
}

Policy ParsePolicy(ByteSpan json_bytes) {
  return ParsePolicy(std::string_view(reinterpret_cast<const char*>(json_bytes.data()),
                                      json_bytes.size()));
}

int LatestBirth(const Policy& policy) {
  return (policy.ref_date.year - policy.years) * 10000 + policy.ref_date.month * 100 +
         policy.ref_date.day;
}

std::string LatestBirthDigits(const Policy& policy) {
  int latest = LatestBirth(policy);
  if (latest < 0) throw Error(ErrorCode::kUnsupportedPolicy, "latest birth before year 0");
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08d", latest);
  return buf;
}

std::string PivotedBirthDigits(const eid::DataGroup1& dg1, const eid::Date& ref_date) {
  std::string_view birth =
      dg1.text().substr(eid::layout::kBirthDateOffset, eid::layout::kDateLength);
  char ref_yy[3];
  std::snprintf(ref_yy, sizeof(ref_yy), "%02d", ref_date.year % 100);
  std::string century = birth.substr(0, 2) <= std::string_view(ref_yy, 2) ? "20" : "19";
  return century + std::string(birth);
}

bool Satisfies(const Policy& policy, const eid::DataGroup1& dg1) {
  if (policy.kind == PolicyKind::kNone) return true;
  if (LatestBirth(policy) < 0) return false;
  return PivotedBirthDigits(dg1, policy.ref_date) <= LatestBirthDigits(policy);
}

}  // namespace fidoac::nizk
