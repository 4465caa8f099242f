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

#include "fidoac/eid/mrz.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "fidoac/primitives/error.h"

namespace fidoac::eid {
namespace {

bool AllDigits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool IsMrzChar(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '<';
}

bool AllMrzChars(std::string_view s) {
  return std::all_of(s.begin(), s.end(), IsMrzChar);
}

int TwoDigits(std::string_view s, size_t pos) {
  return (s[pos] - '0') * 10 + (s[pos + 1] - '0');
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kBadAttributes, what);
}

void Put(DataGroup1& dg1, size_t offset, std::string_view s) {
  std::copy(s.begin(), s.end(), dg1.mrz.begin() + offset);
}

std::string Field(const DataGroup1& dg1, size_t offset, size_t len) {
  return std::string(dg1.text().substr(offset, len));
}

}  // namespace

std::string Date::ToYyyymmdd() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d%02d%02d", year, month, day);
  return buf;
}

bool IsValidDate(const Date& d) {
  if (d.year < 1 || d.year > 9999 || d.month < 1 || d.month > 12 || d.day < 1) {
    return false;
  }
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
  int max_day = kDays[d.month - 1] + (d.month == 2 && leap ? 1 : 0);
  return d.day <= max_day;
}

Date ParseYyyymmdd(std::string_view s) {
  if (s.size() != 8 || !AllDigits(s)) {
    throw Error(ErrorCode::kInvalidArgument, "date must be YYYYMMDD");
  }
  Date d{TwoDigits(s, 0) * 100 + TwoDigits(s, 2), TwoDigits(s, 4), TwoDigits(s, 6)};
  if (!IsValidDate(d)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid calendar date");
  }
  return d;
}

Date Today() {
  auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  std::chrono::year_month_day ymd{now};
  return Date{static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month())),
              static_cast<int>(unsigned(ymd.day()))};
}

int PivotYear(int yy, const Date& reference) {
  int ref_yy = reference.year % 100;
  return yy <= ref_yy ? 2000 + yy : 1900 + yy;
}

Date ParseMrzDate(std::string_view yymmdd, const Date& reference) {
  Require(yymmdd.size() == 6 && AllDigits(yymmdd), "date must be 6 digits");
  Date d{PivotYear(TwoDigits(yymmdd, 0), reference), TwoDigits(yymmdd, 2),
         TwoDigits(yymmdd, 4)};
  Require(IsValidDate(d), "invalid date '" + std::string(yymmdd) + "'");
  return d;
}

char CheckDigit(std::string_view field) {
  static constexpr int kWeights[] = {7, 3, 1};
  int sum = 0;
  for (size_t i = 0; i < field.size(); ++i) {
    char c = field[i];
    int v = 0;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'A' && c <= 'Z') v = c - 'A' + 10;
    sum += v * kWeights[i % 3];
  }
  return static_cast<char>('0' + sum % 10);
}

std::string MrzName(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c == ' ') c = '<';
    Require((c >= 'A' && c <= 'Z') || c == '<', "name has non-MRZ characters");
    out.push_back(c);
  }
  Require(!out.empty(), "name is empty");
  Require(out.size() <= layout::kNameLength, "name longer than 39 characters");
  return out;
}

void ValidateAttributes(const Attributes& att, const Date& reference) {
  MrzName(att.name);
  ParseMrzDate(att.birth_date, reference);
  ParseMrzDate(att.expiry_date, reference);
  Require(att.nationality.size() == 3 && AllMrzChars(att.nationality),
          "nationality must be 3 characters of [A-Z<]");
  Require(att.sex.size() == 1 && AllMrzChars(att.sex), "sex must be 1 character");
  Require(att.document_number.size() == layout::kDocumentNumberLength &&
              AllMrzChars(att.document_number),
          "document number must be 9 characters");
  Require(att.personal_number.size() == layout::kPersonalNumberLength &&
              AllMrzChars(att.personal_number),
          "personal number must be 14 characters");
}

DataGroup1 BuildDataGroup1(const Attributes& att) {
  DataGroup1 dg1;
  dg1.mrz.fill('<');
  Put(dg1, 0, "P<");
  Put(dg1, layout::kIssuingStateOffset, att.nationality);
  Put(dg1, layout::kNameOffset, MrzName(att.name));

  std::string doc = att.document_number + CheckDigit(att.document_number);
  std::string birth = att.birth_date + CheckDigit(att.birth_date);
  std::string expiry = att.expiry_date + CheckDigit(att.expiry_date);
  std::string personal = att.personal_number + CheckDigit(att.personal_number);
  char composite = CheckDigit(doc + birth + expiry + personal);

  Put(dg1, layout::kDocumentNumberOffset, doc);
  Put(dg1, layout::kNationalityOffset, att.nationality);
  Put(dg1, layout::kBirthDateOffset, birth);
  Put(dg1, layout::kSexOffset, att.sex);
  Put(dg1, layout::kExpiryDateOffset, expiry);
  Put(dg1, layout::kPersonalNumberOffset, personal);
  dg1.mrz[layout::kSize - 1] = static_cast<uint8_t>(composite);
  return dg1;
}

Attributes ParseDataGroup1(const DataGroup1& dg1) {
  Attributes att;
  std::string name = Field(dg1, layout::kNameOffset, layout::kNameLength);
  while (!name.empty() && name.back() == '<') name.pop_back();
  std::replace(name.begin(), name.end(), '<', ' ');
  att.name = name;
  att.birth_date = Field(dg1, layout::kBirthDateOffset, layout::kDateLength);
  att.expiry_date = Field(dg1, layout::kExpiryDateOffset, layout::kDateLength);
  att.nationality = Field(dg1, layout::kNationalityOffset, 3);
  att.sex = Field(dg1, layout::kSexOffset, 1);
  att.document_number =
      Field(dg1, layout::kDocumentNumberOffset, layout::kDocumentNumberLength);
  att.personal_number =
      Field(dg1, layout::kPersonalNumberOffset, layout::kPersonalNumberLength);
  return att;
}

}  // namespace fidoac::eid
