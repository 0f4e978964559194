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

#include "pirsi/params.hpp"

#include <algorithm>
#include <string>

#include "pirsi/errors.hpp"

namespace pirsi {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Params Params::validate(unsigned servers, unsigned messages,
                        unsigned side_info_count, unsigned subpackets,
                        unsigned field_order) {
  if (servers <= 1) {
    throw RangeError("params: need N > 1 servers, got " +
                     std::to_string(servers));
  }
  if (messages <= 1) {
    throw RangeError("params: need K > 1 messages, got " +
                     std::to_string(messages));
  }
  if (side_info_count < 1 || side_info_count > messages - 1) {
    throw RangeError("params: need 1 <= M <= K-1, got M=" +
                     std::to_string(side_info_count));
  }
  if (subpackets < 1 || subpackets > servers - 1) {
    throw RangeError("params: need 1 <= L <= N-1, got L=" +
                     std::to_string(subpackets));
  }
  if (field_order < 2) {
    throw RangeError("params: need q >= 2, got q=" +
                     std::to_string(field_order));
  }
  if (!is_prime(field_order)) {
    throw NonPrimeFieldError("params: q=" + std::to_string(field_order) +
                             " is not prime");
  }
  const unsigned g = (messages + side_info_count) / (side_info_count + 1);
  // ceil(K/(M+1)) always lands in [1, K] with 0 <= g(M+1)-K <= M.
  if (g < 1 || g * (side_info_count + 1) < messages ||
      g * (side_info_count + 1) - messages > side_info_count) {
    throw RangeError("params: internal group-count invariant violated");
  }
  return Params(servers, messages, side_info_count, subpackets, field_order,
                g);
}

void Params::require_full_subpacketization() const {
  if (l_ != n_ - 1) {
    throw SubpacketizationMismatch(
        "operation requires L = N-1, got L=" + std::to_string(l_) + " with N=" +
        std::to_string(n_));
  }
}

Params validate_params(unsigned servers, unsigned messages,
                       unsigned side_info_count, unsigned subpackets,
                       unsigned field_order) {
  return Params::validate(servers, messages, side_info_count, subpackets,
                          field_order);
}

DemandSideInfo::DemandSideInfo(const Params& params, unsigned demand,
                               std::vector<unsigned> side_info)
    : demand_(demand), side_info_(std::move(side_info)) {
  if (demand_ < 1 || demand_ > params.messages()) {
    throw RangeError("demand index out of range: " + std::to_string(demand_));
  }
  std::sort(side_info_.begin(), side_info_.end());
  if (std::adjacent_find(side_info_.begin(), side_info_.end()) !=
      side_info_.end()) {
    throw RangeError("side information indices must be distinct");
  }
  if (side_info_.size() != params.side_info_count()) {
    throw RangeError("side information set must have exactly M=" +
                     std::to_string(params.side_info_count()) + " indices");
  }
  for (unsigned idx : side_info_) {
    if (idx < 1 || idx > params.messages()) {
      throw RangeError("side information index out of range: " +
                       std::to_string(idx));
    }
    if (idx == demand_) {
      throw RangeError("demand may not appear in the side information set");
    }
  }
}

bool DemandSideInfo::in_side_info(unsigned message) const {
  return std::binary_search(side_info_.begin(), side_info_.end(), message);
}

std::vector<unsigned> DemandSideInfo::interference(
    const Params& params) const {
  std::vector<unsigned> out;
  out.reserve(params.messages() - side_info_.size() - 1);
  for (unsigned i = 1; i <= params.messages(); ++i) {
    if (i != demand_ && !in_side_info(i)) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace pirsi
