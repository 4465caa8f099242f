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

#ifndef FIDOAC_EID_MRZ_H_
#define FIDOAC_EID_MRZ_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "fidoac/primitives/bytes.h"

namespace fidoac::eid {

// Calendar date. The MRZ stores YYMMDD; the century comes from the pivot rule.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
  // "YYYYMMDD"
  std::string ToYyyymmdd() const;
  int ToInt() const { return year * 10000 + month * 100 + day; }
};

bool IsValidDate(const Date& d);
// Parses "YYYYMMDD". Throws Error(kInvalidArgument) on bad input.
Date ParseYyyymmdd(std::string_view s);
// Current UTC date.
Date Today();

// Two-digit year -> full year: 20YY if YY <= reference's two-digit year,
// otherwise 19YY.
int PivotYear(int yy, const Date& reference);
// Parses "YYMMDD" with the pivot rule. Throws Error(kBadAttributes).
Date ParseMrzDate(std::string_view yymmdd, const Date& reference);

// Personal data plus document numbers as they appear in DG1.
struct Attributes {
  std::string name;
  std::string birth_date;   // YYMMDD
  std::string expiry_date;  // YYMMDD
  std::string nationality;  // 3 letters
  std::string sex;          // 1 char
  std::string document_number;  // 9 alphanumerics
  std::string personal_number;  // 14 alphanumerics

  bool operator==(const Attributes&) const = default;
};

// TD3-style layout of the two 44-character MRZ lines, as absolute offsets in
// the 88-byte DG1 record.
namespace layout {
inline constexpr size_t kSize = 88;
inline constexpr size_t kLineLength = 44;
inline constexpr size_t kIssuingStateOffset = 2;
inline constexpr size_t kNameOffset = 5;
inline constexpr size_t kNameLength = 39;
inline constexpr size_t kDocumentNumberOffset = 44;
inline constexpr size_t kDocumentNumberLength = 9;
inline constexpr size_t kNationalityOffset = 54;
inline constexpr size_t kBirthDateOffset = 57;
inline constexpr size_t kDateLength = 6;
inline constexpr size_t kSexOffset = 64;
inline constexpr size_t kExpiryDateOffset = 65;
inline constexpr size_t kPersonalNumberOffset = 72;
inline constexpr size_t kPersonalNumberLength = 14;
}  // namespace layout

struct DataGroup1 {
  std::array<uint8_t, layout::kSize> mrz{};

  ByteSpan bytes() const { return mrz; }
  std::string_view text() const {
    return {reinterpret_cast<const char*>(mrz.data()), mrz.size()};
  }
  bool operator==(const DataGroup1&) const = default;
};

// ICAO 9303 check digit (weights 7, 3, 1) over [A-Z0-9<].
char CheckDigit(std::string_view field);

// MRZ rendering of a name: upper case, spaces become '<'. Throws
// Error(kBadAttributes) if the name has other characters or is too long.
std::string MrzName(std::string_view name);

// Throws Error(kBadAttributes) if any field is malformed. Dates are checked
// under the pivot rule relative to `reference`.
void ValidateAttributes(const Attributes& att, const Date& reference);

// Builds the 88-byte record. Attributes must already be valid.
DataGroup1 BuildDataGroup1(const Attributes& att);

// Reads the attributes back out of a record (name keeps its '<' filler
// stripped and separators turned back into spaces).
Attributes ParseDataGroup1(const DataGroup1& dg1);

}  // namespace fidoac::eid

#endif  // FIDOAC_EID_MRZ_H_
