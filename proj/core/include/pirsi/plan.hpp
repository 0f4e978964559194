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

#include "pirsi/params.hpp"
#include "pirsi/query.hpp"

namespace pirsi {

// Which shape of client randomness produced a plan. Below the top
// randomness index the interference part a covers a strict subset of the
// interference messages and the side information enters through a single
// vector b; at the top index a covers every interference message and the
// side information splits into b1 (inside v_1) and b2 (outside v_1).
enum class PlanBranch {
  kPartialInterference,  // I != g-1: components a, b
  kFullInterference,     // I == g-1: components a, b1, b2
};

// The full client randomness for one retrieval: the randomness index I,
// the drawn component vectors, the resulting ordered vectors v_1..v_N, and
// the server permutation. Immutable once built; every structural invariant
// is checked at construction.
//
// Component vectors that do not belong to the branch (b when I = g-1,
// b1/b2 otherwise) are stored as all-zero markers so the type stays closed.
class QueryPlan {
 public:
  static QueryPlan partial_interference(const Params& params,
                                        const DemandSideInfo& ds,
                                        unsigned randomness_index,
                                        QueryVector a, QueryVector b,
                                        std::vector<unsigned> pi);
  static QueryPlan full_interference(const Params& params,
                                     const DemandSideInfo& ds, QueryVector a,
                                     QueryVector b1, QueryVector b2,
                                     std::vector<unsigned> pi);

  const Params& params() const { return params_; }
  const DemandSideInfo& demand_side_info() const { return ds_; }

  unsigned randomness_index() const { return index_; }  // I in [0, g-1]
  PlanBranch branch() const { return branch_; }

  const QueryVector& a() const { return a_; }
  const QueryVector& b() const { return b_; }
  const QueryVector& b1() const { return b1_; }
  const QueryVector& b2() const { return b2_; }

  // v_1..v_N in construction order (not the order sent).
  const std::vector<QueryVector>& vectors() const { return vectors_; }

  // pi(1)..pi(N), a bijection on [N]; server n receives vectors()[pi(n)-1].
  const std::vector<unsigned>& permutation() const { return pi_; }

  // The side information component consumed during recovery: b below the
  // top index, b2 at it.
  const QueryVector& recovery_side_component() const;

  bool operator==(const QueryPlan&) const = default;

 private:
  QueryPlan(const Params& params, const DemandSideInfo& ds, unsigned index,
            PlanBranch branch, QueryVector a, QueryVector b, QueryVector b1,
            QueryVector b2, std::vector<unsigned> pi);

  void build_vectors();
  void check_invariants() const;

  Params params_;
  DemandSideInfo ds_;
  unsigned index_;
  PlanBranch branch_;
  QueryVector a_, b_, b1_, b2_;
  std::vector<QueryVector> vectors_;
  std::vector<unsigned> pi_;
};

}  // namespace pirsi
