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

#include "pirsi/message_db.hpp"

#include <string>

#include "pirsi/errors.hpp"

namespace pirsi {

MessageDB::MessageDB(const Params& params, std::vector<std::uint32_t> symbols)
    : k_(params.messages()),
      l_(params.subpackets()),
      q_(params.field_order()),
      symbols_(std::move(symbols)) {
  if (symbols_.size() != static_cast<std::size_t>(k_) * l_) {
    throw RangeError("message db: expected " + std::to_string(k_ * l_) +
                     " symbols, got " + std::to_string(symbols_.size()));
  }
  for (std::uint32_t s : symbols_) {
    if (s >= q_) {
      throw RangeError("message db: symbol " + std::to_string(s) +
                       " not reduced mod " + std::to_string(q_));
    }
  }
}

std::uint32_t MessageDB::symbol(unsigned message, unsigned subpacket) const {
  if (message < 1 || message > k_ || subpacket < 1 || subpacket > l_) {
    throw IndexError("message db: index (" + std::to_string(message) + "," +
                     std::to_string(subpacket) + ") outside " +
                     std::to_string(k_) + "x" + std::to_string(l_));
  }
  return symbols_[static_cast<std::size_t>(message - 1) * l_ +
                  (subpacket - 1)];
}

FieldElement MessageDB::at(unsigned message, unsigned subpacket) const {
  return FieldElement(symbol(message, subpacket), q_);
}

std::vector<std::uint32_t> MessageDB::row(unsigned message) const {
  std::vector<std::uint32_t> out(l_);
  for (unsigned j = 1; j <= l_; ++j) {
    out[j - 1] = symbol(message, j);
  }
  return out;
}

MessageDB random_db(const Params& params, Rng& rng) {
  std::vector<std::uint32_t> symbols(
      static_cast<std::size_t>(params.messages()) * params.subpackets());
  for (auto& s : symbols) {
    s = static_cast<std::uint32_t>(rng.below(params.field_order()));
  }
  return MessageDB(params, std::move(symbols));
}

MessageDB random_db(const Params& params, std::uint64_t seed) {
  Rng rng(seed);
  return random_db(params, rng);
}

SideInformation::SideInformation(
    const Params& params, std::map<unsigned, std::vector<std::uint32_t>> rows)
    : l_(params.subpackets()), q_(params.field_order()), rows_(std::move(rows)) {
  if (rows_.size() != params.side_info_count()) {
    throw RangeError("side information: expected M=" +
                     std::to_string(params.side_info_count()) + " rows");
  }
  for (const auto& [message, row] : rows_) {
    if (message < 1 || message > params.messages()) {
      throw RangeError("side information: message index out of range");
    }
    if (row.size() != l_) {
      throw RangeError("side information: row length must be L");
    }
    for (std::uint32_t s : row) {
      if (s >= q_) {
        throw RangeError("side information: symbol not reduced mod q");
      }
    }
  }
}

SideInformation SideInformation::from_db(const DemandSideInfo& ds,
                                         const MessageDB& db) {
  SideInformation out;
  out.l_ = db.subpackets();
  out.q_ = db.field_order();
  for (unsigned message : ds.side_info()) {
    out.rows_[message] = db.row(message);
  }
  return out;
}

std::uint32_t SideInformation::symbol(unsigned message,
                                      unsigned subpacket) const {
  auto it = rows_.find(message);
  if (it == rows_.end()) {
    throw IndexError("side information: no row for message " +
                     std::to_string(message));
  }
  if (subpacket < 1 || subpacket > l_) {
    throw IndexError("side information: sub-packet index out of range");
  }
  return it->second[subpacket - 1];
}

}  // namespace pirsi
