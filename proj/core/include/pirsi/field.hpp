// Copyright 2026 The pirsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "pirsi/errors.hpp"

namespace pirsi {

// One symbol of F_q. Carries its modulus so elements of different fields
// cannot be mixed. Only the additive group is exercised by the protocol;
// extension fields are a documented non-goal.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, std::uint32_t modulus)
      : value_(value), q_(modulus) {
    if (q_ < 2) {
      throw RangeError("field element: modulus must be >= 2");
    }
    if (value_ >= q_) {
      throw RangeError("field element: value " + std::to_string(value_) +
                       " not reduced mod " + std::to_string(q_));
    }
  }

  static FieldElement zero(std::uint32_t modulus) {
    return FieldElement(0, modulus);
  }

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return q_; }

  bool operator==(const FieldElement&) const = default;

 private:
  std::uint32_t value_;
  std::uint32_t q_;
};

inline void require_same_field(FieldElement x, FieldElement y) {
  if (x.modulus() != y.modulus()) {
    throw FieldMismatch("field elements from F_" +
                        std::to_string(x.modulus()) + " and F_" +
                        std::to_string(y.modulus()) + " cannot be combined");
  }
}

inline FieldElement field_add(FieldElement x, FieldElement y) {
  require_same_field(x, y);
  const std::uint64_t s =
      static_cast<std::uint64_t>(x.value()) + y.value();
  return FieldElement(static_cast<std::uint32_t>(s % x.modulus()),
                      x.modulus());
}

inline FieldElement field_sub(FieldElement x, FieldElement y) {
  require_same_field(x, y);
  const std::uint64_t s =
      static_cast<std::uint64_t>(x.value()) + x.modulus() - y.value();
  return FieldElement(static_cast<std::uint32_t>(s % x.modulus()),
                      x.modulus());
}

inline FieldElement operator+(FieldElement x, FieldElement y) {
  return field_add(x, y);
}

inline FieldElement operator-(FieldElement x, FieldElement y) {
  return field_sub(x, y);
}

}  // namespace pirsi
