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
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pirsi/params.hpp"
#include "pirsi/plan.hpp"
#include "pirsi/query.hpp"
#include "pirsi/rat.hpp"

// Brute-force verifier: materializes every realization of the randomized
// query algorithm together with its exact probability and derives query
// distributions, privacy verdicts, recoverability and expected download by
// direct accumulation. Shares nothing with the closed-form expressions in
// pirsi::analysis beyond the scheme's own index distribution P_k.
namespace pirsi::oracle {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Scheme mutations used as falsifiability controls.
enum class SchemeVariant {
  kStandard,
  // Side information entries (b, b1, b2) pinned to 1 instead of uniform.
  kFixedSideEntries,
};

enum class PermutationHandling {
  // Fold the uniform permutation analytically: each constructed vector
  // reaches a given server with probability 1/N.
  kAnalytic,
  // Expand all N! permutations explicitly (self-check mode).
  kExpand,
};

struct EnumerationOptions {
  PermutationHandling permutations = PermutationHandling::kAnalytic;
  SchemeVariant variant = SchemeVariant::kStandard;
  std::uint64_t budget = kDefaultBudget;
};

struct Realization {
  QueryPlan plan;
  Rat probability;
};

// The sample space of one (W, S) instance. Enumeration order is
// deterministic: index ascending, supports in colex order, entries in
// odometer order, permutations lexicographic. Probabilities over the full
// stream sum to exactly 1 in either permutation mode.
class RealizationSpace {
 public:
  RealizationSpace(const Params& params, const DemandSideInfo& ds,
                   EnumerationOptions options);

  const Params& params() const { return params_; }
  const DemandSideInfo& demand_side_info() const { return ds_; }

  // Exact number of items the stream yields (before any budget check).
  std::uint64_t count() const { return count_; }

  // Visits every realization; throws BudgetExceeded up front when count()
  // passes the configured cap.
  void for_each(const std::function<void(const Realization&)>& visit) const;

  std::vector<Realization> materialize() const;

 private:
  Params params_;
  DemandSideInfo ds_;
  EnumerationOptions options_;
  std::uint64_t count_;
};

RealizationSpace enumerate_realizations(const Params& params,
                                        const DemandSideInfo& ds,
                                        EnumerationOptions options = {});

// Exact distribution of the query received by one server under a fixed
// (W, S). In analytic mode the distribution is server-independent by
// construction and `server` is ignored; in expand mode it is accumulated
// for that server only.
std::map<QueryVector, Rat> brute_force_query_distribution(
    const Params& params, const DemandSideInfo& ds, unsigned server,
    EnumerationOptions options = {});

struct PrivacyCounterexample {
  QueryVector query;
  unsigned demand_a = 0, demand_b = 0;
  Rat mass_a, mass_b;
};

struct ClosedFormMismatch {
  QueryVector query;
  unsigned demand = 0;
  Rat oracle_mass, closed_form;
};

struct PrivacyReport {
  // Per query vector: its conditional probability for every demand W*.
  std::map<QueryVector, std::vector<Rat>> table;
  bool verdict = false;  // every row constant
  std::optional<PrivacyCounterexample> counterexample;
  bool closed_form_match = false;  // table equals analysis closed form
  std::optional<ClosedFormMismatch> closed_form_mismatch;

  bool ok() const { return verdict && closed_form_match; }
};

// Marginalizes the per-(W, S) query distributions over S uniform given W
// and checks that every row of the resulting table is constant across the
// demand; also cross-checks each entry against the closed form.
PrivacyReport verify_privacy(const Params& params,
                             EnumerationOptions options = {});

// For every (W, S) instance and every realization: checks symbolically
// that Y_{j+1} - Y_1 - side_sum isolates exactly sub-packet (W, j), then
// replays the realization against a seeded random database and compares
// the recovered row with the stored one.
bool verify_recoverability(const Params& params, std::uint64_t replay_seed = 0,
                           EnumerationOptions options = {});

// Expected number of downloaded symbols per retrieval, accumulated as
// sum(probability x non-null answers) over the realization stream.
Rat expected_download_exact(const Params& params,
                            EnumerationOptions options = {});

}  // namespace pirsi::oracle
