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

#ifndef FIDOAC_PRIMITIVES_CANONICAL_H_
#define FIDOAC_PRIMITIVES_CANONICAL_H_

#include <cstdint>
#include <string_view>

#include "fidoac/primitives/bytes.h"

namespace fidoac {

// Canonical encoding used for everything that is hashed or signed: each field
// is a 4-byte big-endian length followed by the field bytes, fields in
// declared order.
class CanonicalWriter {
 public:
  CanonicalWriter& Field(ByteSpan field);
  CanonicalWriter& Field(std::string_view field) { return Field(AsBytes(field)); }
  CanonicalWriter& Field(const Digest32& d) { return Field(d.span()); }
  // Unsigned integers are encoded as a 4-byte big-endian field body.
  CanonicalWriter& U32(uint32_t value);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Reads fields written by CanonicalWriter. Every accessor throws
// Error(kMalformed) on truncation or trailing garbage.
class CanonicalReader {
 public:
  explicit CanonicalReader(ByteSpan data) : data_(data) {}

  ByteSpan Field();
  Bytes FieldBytes() {
    auto f = Field();
    return Bytes(f.begin(), f.end());
  }
  std::string FieldString();
  uint32_t U32();
  // Field whose length must equal `expected`.
  ByteSpan FixedField(size_t expected);

  bool AtEnd() const { return pos_ == data_.size(); }
  void ExpectEnd() const;

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

Bytes Canonical(std::initializer_list<ByteSpan> fields);

}  // namespace fidoac

#endif  // FIDOAC_PRIMITIVES_CANONICAL_H_
