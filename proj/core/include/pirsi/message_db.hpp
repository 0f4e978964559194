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
#include <map>
#include <vector>

#include "pirsi/field.hpp"
#include "pirsi/params.hpp"
#include "pirsi/rng.hpp"

namespace pirsi {

// The replicated store: K messages of L symbols each, entry (i, j) holding
// sub-packet j of message i. Indices are 1-based.
class MessageDB {
 public:
  MessageDB(const Params& params, std::vector<std::uint32_t> symbols);

  unsigned messages() const { return k_; }
  unsigned subpackets() const { return l_; }
  std::uint32_t field_order() const { return q_; }

  std::uint32_t symbol(unsigned message, unsigned subpacket) const;
  FieldElement at(unsigned message, unsigned subpacket) const;
  std::vector<std::uint32_t> row(unsigned message) const;

  bool operator==(const MessageDB&) const = default;

 private:
  unsigned k_, l_;
  std::uint32_t q_;
  std::vector<std::uint32_t> symbols_;  // row-major, K*L
};

// K*L symbols drawn i.i.d. uniform over F_q from the given generator.
MessageDB random_db(const Params& params, Rng& rng);
MessageDB random_db(const Params& params, std::uint64_t seed);

// The M rows of the database a user already knows. Built either from
// explicit rows or by restricting a full database to S (harness side).
class SideInformation {
 public:
  SideInformation(const Params& params,
                  std::map<unsigned, std::vector<std::uint32_t>> rows);
  static SideInformation from_db(const DemandSideInfo& ds,
                                 const MessageDB& db);

  bool has_row(unsigned message) const { return rows_.count(message) != 0; }
  std::uint32_t symbol(unsigned message, unsigned subpacket) const;
  std::uint32_t field_order() const { return q_; }

 private:
  SideInformation() = default;

  unsigned l_ = 0;
  std::uint32_t q_ = 0;
  std::map<unsigned, std::vector<std::uint32_t>> rows_;
};

}  // namespace pirsi
