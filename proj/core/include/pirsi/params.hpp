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

#include <vector>

namespace pirsi {

// Validated protocol parameters: N replicated servers, K messages of L
// sub-packets each over the prime field F_q, and M side information
// messages known to the user in advance.
//
// Admissible ranges: N > 1, K > 1, 1 <= M <= K-1, 1 <= L <= N-1, q prime.
// The main scheme requires L = N-1 exactly; smaller L goes through the
// two-step retrieval path. Message and sub-packet indices are 1-based
// throughout the public API.
class Params {
 public:
  static Params validate(unsigned servers, unsigned messages,
                         unsigned side_info_count, unsigned subpackets,
                         unsigned field_order);

  unsigned servers() const { return n_; }           // N
  unsigned messages() const { return k_; }          // K
  unsigned side_info_count() const { return m_; }   // M
  unsigned subpackets() const { return l_; }        // L
  unsigned field_order() const { return q_; }       // q
  unsigned groups() const { return g_; }            // ceil(K / (M+1))

  bool divisible() const { return k_ % (m_ + 1) == 0; }

  // Throws SubpacketizationMismatch unless L = N-1.
  void require_full_subpacketization() const;

  bool operator==(const Params&) const = default;

 private:
  Params(unsigned n, unsigned k, unsigned m, unsigned l, unsigned q,
         unsigned g)
      : n_(n), k_(k), m_(m), l_(l), q_(q), g_(g) {}

  unsigned n_, k_, m_, l_, q_, g_;
};

Params validate_params(unsigned servers, unsigned messages,
                       unsigned side_info_count, unsigned subpackets,
                       unsigned field_order);

bool is_prime(unsigned n);

// The demand index W and the side information index set S. |S| = M and
// W is never in S; indices are 1-based message numbers.
class DemandSideInfo {
 public:
  DemandSideInfo(const Params& params, unsigned demand,
                 std::vector<unsigned> side_info);

  unsigned demand() const { return demand_; }
  const std::vector<unsigned>& side_info() const { return side_info_; }
  bool in_side_info(unsigned message) const;

  // Messages that are neither demand nor side information, ascending.
  std::vector<unsigned> interference(const Params& params) const;

  bool operator==(const DemandSideInfo&) const = default;

 private:
  unsigned demand_;
  std::vector<unsigned> side_info_;  // sorted ascending
};

}  // namespace pirsi
