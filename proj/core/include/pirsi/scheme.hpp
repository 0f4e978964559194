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

#include "pirsi/message_db.hpp"
#include "pirsi/params.hpp"
#include "pirsi/plan.hpp"
#include "pirsi/query.hpp"
#include "pirsi/rng.hpp"

namespace pirsi::scheme {

// Draws the randomness index I in [0, g-1] with exact probabilities
// P_0..P_{g-1}, using integer thresholds over a common denominator.
unsigned sample_randomness_index(const Params& params, Rng& rng);

// Builds the full client randomness for one retrieval. Requires L = N-1.
// Support choices are uniform over the admissible supports, nonzero entries
// uniform over [1, N-1], the permutation uniform over all N! orderings, and
// all draws independent.
QueryPlan generate_plan(const Params& params, const DemandSideInfo& ds,
                        Rng& rng);

// The vectors in wire order: element n is vectors()[pi(n)-1].
std::vector<QueryVector> queries_as_sent(const QueryPlan& plan);

// Null when the query is all-zero, otherwise the sum of the selected
// sub-packets, one per supported message.
Answer server_answer(const MessageDB& db, const QueryVector& query);

// Recovers all L sub-packets of the demand message from the as-sent
// answers: de-permutes them back to Y_1..Y_N, subtracts the known side
// information sum, and reads off X_{W,j} = Y_{j+1} - Y_1 - side_sum.
std::vector<FieldElement> recover_demand(const QueryPlan& plan,
                                         const std::vector<Answer>& answers,
                                         const SideInformation& side);

// Two-step retrieval for 1 <= L < N-1: run the main scheme over the first
// L+1 servers; the rest receive a no-query marker and stay silent.
struct TwoStepPlan {
  std::vector<unsigned> chosen_servers;  // 1-based ids, ascending, size L+1
  Params inner;                          // N' = L+1, same K, M, L, q
  QueryPlan plan;
};

TwoStepPlan two_step_retrieve(const Params& params, const DemandSideInfo& ds,
                              Rng& rng);

}  // namespace pirsi::scheme
