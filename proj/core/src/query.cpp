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

#include "pirsi/query.hpp"

#include <algorithm>

#include "pirsi/errors.hpp"

namespace pirsi {

QueryVector::QueryVector(std::vector<std::uint32_t> comps)
    : comps_(std::move(comps)) {
  if (comps_.empty()) {
    throw RangeError("query vector: length must be positive");
  }
}

QueryVector QueryVector::zero(unsigned length) {
  return QueryVector(std::vector<std::uint32_t>(length, 0));
}

std::uint32_t QueryVector::at(unsigned message) const {
  if (message < 1 || message > comps_.size()) {
    throw IndexError("query vector: component " + std::to_string(message) +
                     " outside [1," + std::to_string(comps_.size()) + "]");
  }
  return comps_[message - 1];
}

bool QueryVector::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](std::uint32_t c) { return c == 0; });
}

std::vector<unsigned> QueryVector::support() const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < comps_.size(); ++i) {
    if (comps_[i] != 0) {
      out.push_back(i + 1);
    }
  }
  return out;
}

unsigned QueryVector::support_size() const {
  return static_cast<unsigned>(
      std::count_if(comps_.begin(), comps_.end(),
                    [](std::uint32_t c) { return c != 0; }));
}

QueryVector QueryVector::merged_with(const QueryVector& other) const {
  if (other.comps_.size() != comps_.size()) {
    throw RangeError("query vector: cannot merge vectors of unequal length");
  }
  std::vector<std::uint32_t> merged(comps_);
  for (unsigned i = 0; i < comps_.size(); ++i) {
    if (other.comps_[i] != 0) {
      if (merged[i] != 0) {
        throw RangeError("query vector: merge supports collide at message " +
                         std::to_string(i + 1));
      }
      merged[i] = other.comps_[i];
    }
  }
  return QueryVector(std::move(merged));
}

QueryVector QueryVector::with_component(unsigned message,
                                        std::uint32_t value) const {
  if (at(message) != 0) {
    throw RangeError("query vector: component " + std::to_string(message) +
                     " already occupied");
  }
  std::vector<std::uint32_t> comps(comps_);
  comps[message - 1] = value;
  return QueryVector(std::move(comps));
}

std::string QueryVector::to_string() const {
  std::string out = "[";
  for (unsigned i = 0; i < comps_.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(comps_[i]);
  }
  out += "]";
  return out;
}

FieldElement Answer::payload() const {
  if (!payload_.has_value()) {
    throw TranscriptMismatch("answer: null answer carries no payload");
  }
  return *payload_;
}

Transcript make_transcript(std::vector<QueryVector> queries,
                           std::vector<Answer> answers) {
  if (queries.size() != answers.size()) {
    throw TranscriptMismatch("transcript: query/answer count mismatch");
  }
  Transcript t;
  t.queries = std::move(queries);
  t.answers = std::move(answers);
  t.downloaded_symbols = static_cast<unsigned>(
      std::count_if(t.answers.begin(), t.answers.end(),
                    [](const Answer& a) { return !a.is_null(); }));
  return t;
}

}  // namespace pirsi
