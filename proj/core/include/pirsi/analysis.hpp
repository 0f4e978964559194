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
#include "pirsi/rat.hpp"

namespace pirsi::analysis {

// The distribution of the randomness index I. With g = ceil(K/(M+1)):
//
//   r_0 = 1,  r_k = r_{k-1} * (K/(M+1) - k) / k
//   P_0 = (1 + sum_{k=1}^{g-1} r_k (N-1)^k)^{-1}
//   P_k = P_0 * (N-1)^k * r_k
//
// All entries are exact; the P_k sum to 1 and are strictly positive.
struct SchemeDistribution {
  unsigned groups = 0;     // g
  std::vector<Rat> r;      // r[k] for k in [0, g-1], r[0] = 1
  std::vector<Rat> p;      // P_k for k in [0, g-1]
};

SchemeDistribution compute_distribution(const Params& params);

// Download rate of the main scheme at L = N-1: (N-1) / (N - P_0).
Rat rate_R(const Params& params);

// Baseline super-message rate: (N^g - N^{g-1}) / (N^g - 1).
Rat rate_Rstar(const Params& params);

// Rate of the two-step scheme for 1 <= L < N-1: rate_R with N replaced by
// L+1. Throws RangeError when L = N-1 (use rate_R directly).
Rat rate_RL(const Params& params);

enum class RateRelation { kEqual, kStrictlyGreater };

struct RateComparison {
  Rat r;
  Rat rstar;
  RateRelation relation;
};

// R vs R*: equal exactly when (M+1) divides K, strictly greater otherwise.
RateComparison compare_rates(const Params& params);

// Headline rate summary for the main scheme (B = N-1 demand symbols).
struct RateReport {
  Rat r;
  Rat rstar;
  bool divisible = false;
  Rat expected_download_symbols;  // N - P_0
  unsigned demand_symbols = 0;    // B in symbols (the main scheme's L = N-1)
};

RateReport rate_report(const Params& params);

// Support-size class of a query vector: 0, k(M+1) for k in [g-1], or K.
// Any other size cannot be emitted by the scheme.
struct SupportClass {
  enum class Tag { kNull, kPartial, kFull };
  Tag tag = Tag::kNull;
  unsigned k = 0;  // set for kPartial

  bool operator==(const SupportClass&) const = default;
};

SupportClass classify_support(const Params& params, const QueryVector& v);

// P(Q_n = v | W = demand), marginalized over S uniform on the M-subsets of
// [K] \ {demand}, by exact case analysis on the support class of v and on
// whether the demand lies in the support. Throws ClassificationError for
// vectors the scheme can never emit.
Rat closed_form_query_prob(const Params& params, const QueryVector& v,
                           unsigned demand);

// Checks that the P_k make the per-class conditional query probabilities
// independent of the demand: the in-support expression must equal the
// out-of-support expression for every k in [g-2], and the boundary
// expression at k = g-1. Recomputed from raw binomial factors, not from
// the simplified recurrence. Vacuously true when g = 1.
bool verify_pk_conditions(const Params& params);
bool verify_pk_conditions(const Params& params, const SchemeDistribution& d);

}  // namespace pirsi::analysis
