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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pirsi/field.hpp"

namespace pirsi {

// A per-server query: component i selects which sub-packet of message i
// enters the answer sum (0 = message absent, j != 0 = sub-packet j).
class QueryVector {
 public:
  explicit QueryVector(std::vector<std::uint32_t> comps);
  static QueryVector zero(unsigned length);

  unsigned length() const { return static_cast<unsigned>(comps_.size()); }
  std::uint32_t at(unsigned message) const;  // 1-based
  bool is_zero() const;

  std::vector<unsigned> support() const;  // 1-based indices, ascending
  unsigned support_size() const;

  const std::vector<std::uint32_t>& comps() const { return comps_; }

  // Component-wise union of two vectors with disjoint supports.
  QueryVector merged_with(const QueryVector& other) const;
  // Copy with one component set; the slot must currently be zero.
  QueryVector with_component(unsigned message, std::uint32_t value) const;

  std::string to_string() const;  // "[0,2,1]"

  auto operator<=>(const QueryVector&) const = default;

 private:
  std::vector<std::uint32_t> comps_;
};

// A server's reply: either one field symbol or nothing at all. The null
// reply is a distinct state, never an in-band zero symbol (0 is a legal
// sum value).
class Answer {
 public:
  static Answer null() { return Answer(); }
  static Answer of(FieldElement payload) { return Answer(payload); }

  bool is_null() const { return !payload_.has_value(); }
  FieldElement payload() const;  // throws when null

  bool operator==(const Answer&) const = default;

 private:
  Answer() = default;
  explicit Answer(FieldElement payload) : payload_(payload) {}

  std::optional<FieldElement> payload_;
};

// Everything exchanged in one retrieval, in as-sent (permuted) order.
struct Transcript {
  std::vector<QueryVector> queries;
  std::vector<Answer> answers;
  unsigned downloaded_symbols = 0;  // number of non-null answers

  bool operator==(const Transcript&) const = default;
};

Transcript make_transcript(std::vector<QueryVector> queries,
                           std::vector<Answer> answers);

}  // namespace pirsi
