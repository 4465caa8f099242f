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

#include "fidoac/primitives/canonical.h"

#include "fidoac/primitives/error.h"

namespace fidoac {
namespace {

void PutU32(Bytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

}  // namespace

CanonicalWriter& CanonicalWriter::Field(ByteSpan field) {
  PutU32(out_, static_cast<uint32_t>(field.size()));
  out_.insert(out_.end(), field.begin(), field.end());
  return *this;
}

CanonicalWriter& CanonicalWriter::U32(uint32_t value) {
  PutU32(out_, 4);
  PutU32(out_, value);
  return *this;
}

ByteSpan CanonicalReader::Field() {
  if (data_.size() - pos_ < 4) {
    throw Error(ErrorCode::kMalformed, "truncated length prefix");
  }
  uint32_t len = (uint32_t{data_[pos_]} << 24) |
                 (uint32_t{data_[pos_ + 1]} << 16) |
                 (uint32_t{data_[pos_ + 2]} << 8) | uint32_t{data_[pos_ + 3]};
  pos_ += 4;
  if (data_.size() - pos_ < len) {
    throw Error(ErrorCode::kMalformed, "truncated field");
  }
  ByteSpan f = data_.subspan(pos_, len);
  pos_ += len;
  return f;
}

std::string CanonicalReader::FieldString() {
  auto f = Field();
  return std::string(f.begin(), f.end());
}

uint32_t CanonicalReader::U32() {
  auto f = FixedField(4);
  return (uint32_t{f[0]} << 24) | (uint32_t{f[1]} << 16) |
         (uint32_t{f[2]} << 8) | uint32_t{f[3]};
}

ByteSpan CanonicalReader::FixedField(size_t expected) {
  auto f = Field();
  if (f.size() != expected) {
    throw Error(ErrorCode::kMalformed, "unexpected field length");
  }
  return f;
}

void CanonicalReader::ExpectEnd() const {
  if (!AtEnd()) throw Error(ErrorCode::kMalformed, "trailing bytes");
}

Bytes Canonical(std::initializer_list<ByteSpan> fields) {
  CanonicalWriter w;
  for (const auto& f : fields) w.Field(f);
  return w.Take();
}

}  // namespace fidoac
