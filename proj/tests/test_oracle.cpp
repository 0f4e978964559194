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

#include "pirsi/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"
#include "pirsi/scheme.hpp"

using namespace pirsi;
using namespace pirsi::oracle;

TEST_CASE("realization space of the worked example") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  const DemandSideInfo ds(p, 1, {2});
  const RealizationSpace space = enumerate_realizations(p, ds);
  CHECK(space.count() == 6);

  const auto items = space.materialize();
  REQUIRE(items.size() == 6);

  using Row = std::pair<std::vector<QueryVector>, Rat>;
  const std::vector<Row> expected = {
      {{QueryVector({0, 0, 0}), QueryVector({1, 1, 0}), QueryVector({2, 1, 0})},
       Rat(1, 4)},
      {{QueryVector({0, 0, 0}), QueryVector({1, 2, 0}), QueryVector({2, 2, 0})},
       Rat(1, 4)},
      {{QueryVector({0, 1, 1}), QueryVector({1, 1, 1}), QueryVector({2, 1, 1})},
       Rat(1, 8)},
      {{QueryVector({0, 2, 1}), QueryVector({1, 2, 1}), QueryVector({2, 2, 1})},
       Rat(1, 8)},
      {{QueryVector({0, 1, 2}), QueryVector({1, 1, 2}), QueryVector({2, 1, 2})},
       Rat(1, 8)},
      {{QueryVector({0, 2, 2}), QueryVector({1, 2, 2}), QueryVector({2, 2, 2})},
       Rat(1, 8)},
  };
  for (unsigned i = 0; i < expected.size(); ++i) {
    CHECK(items[i].plan.vectors() == expected[i].first);
    CHECK(items[i].probability == expected[i].second);
  }

  Rat mass(0);
  for (const auto& item : items) mass += item.probability;
  CHECK(mass == Rat(1));
}

TEST_CASE("expanded permutations at the smallest instance") {
  const Params p = validate_params(2, 2, 1, 1, 2);
  const DemandSideInfo ds(p, 1, {2});
  EnumerationOptions options;
  options.permutations = PermutationHandling::kExpand;
  const RealizationSpace space = enumerate_realizations(p, ds, options);
  CHECK(space.count() == 2);
  const auto items = space.materialize();
  REQUIRE(items.size() == 2);
  CHECK(items[0].probability == Rat(1, 2));
  CHECK(items[1].probability == Rat(1, 2));
  CHECK(items[0].plan.permutation() == std::vector<unsigned>{1, 2});
  CHECK(items[1].plan.permutation() == std::vector<unsigned>{2, 1});
}

TEST_CASE("probability mass is one across modes and cells") {
  for (unsigned n = 2; n <= 3; ++n) {
    for (unsigned k = 2; k <= 5; ++k) {
      for (unsigned m = 1; m <= k - 1; ++m) {
        const Params p = validate_params(n, k, m, n - 1, 2);
        std::vector<unsigned> side(m);
        std::iota(side.begin(), side.end(), 2u);
        const DemandSideInfo ds(p, 1, side);
        for (const auto mode :
             {PermutationHandling::kAnalytic, PermutationHandling::kExpand}) {
          EnumerationOptions options;
          options.permutations = mode;
          Rat mass(0);
          std::uint64_t seen = 0;
          const RealizationSpace space = enumerate_realizations(p, ds, options);
          space.for_each([&](const Realization& r) {
            mass += r.probability;
            ++seen;
          });
          CHECK(mass == Rat(1));
          CHECK(seen == space.count());
        }
      }
    }
  }
}

TEST_CASE("enumerated plans satisfy the support size law") {
  // N <= 3, K <= 5, M <= 2, exhaustive over all plans.
  for (unsigned n = 2; n <= 3; ++n) {
    for (unsigned k = 2; k <= 5; ++k) {
      for (unsigned m = 1; m <= std::min(2u, k - 1); ++m) {
        const Params p = validate_params(n, k, m, n - 1, 2);
        std::vector<unsigned> side(m);
        std::iota(side.begin(), side.end(), 2u);
        const DemandSideInfo ds(p, 1, side);
        enumerate_realizations(p, ds).for_each([&](const Realization& r) {
          for (const QueryVector& v : r.plan.vectors()) {
            CHECK_NOTHROW(analysis::classify_support(p, v));
          }
        });
      }
    }
  }
}

TEST_CASE("query distribution of the worked example") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  const DemandSideInfo ds(p, 1, {2});
  const auto dist = brute_force_query_distribution(p, ds, 1);

  CHECK(dist.at(QueryVector({0, 2, 1})) == Rat(1, 24));
  CHECK(dist.at(QueryVector({0, 0, 0})) == Rat(1, 6));
  CHECK(dist.at(QueryVector({1, 1, 0})) == Rat(1, 12));

  Rat mass(0);
  for (const auto& [v, m] : dist) mass += m;
  CHECK(mass == Rat(1));
}

TEST_CASE("query distribution at the smallest instance") {
  const Params p = validate_params(2, 2, 1, 1, 2);
  const DemandSideInfo ds(p, 1, {2});
  const auto dist = brute_force_query_distribution(p, ds, 1);
  REQUIRE(dist.size() == 2);
  CHECK(dist.at(QueryVector({0, 0})) == Rat(1, 2));
  CHECK(dist.at(QueryVector({1, 1})) == Rat(1, 2));
}

TEST_CASE("query distribution is server independent under expansion") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  const DemandSideInfo ds(p, 2, {1});
  EnumerationOptions options;
  options.permutations = PermutationHandling::kExpand;
  const auto first = brute_force_query_distribution(p, ds, 1, options);
  for (unsigned server = 2; server <= 3; ++server) {
    CHECK(brute_force_query_distribution(p, ds, server, options) == first);
  }
  // And the expanded distribution agrees with the analytic fold.
  CHECK(brute_force_query_distribution(p, ds, 1) == first);
}

TEST_CASE("privacy verdict for the worked example") {
  const PrivacyReport report = verify_privacy(validate_params(3, 3, 1, 2, 2));
  CHECK(report.verdict);
  CHECK(report.closed_form_match);
  CHECK_FALSE(report.counterexample.has_value());
  const auto& row = report.table.at(QueryVector({0, 2, 1}));
  for (const Rat& mass : row) {
    CHECK(mass == Rat(1, 24));
  }
}

TEST_CASE("privacy verdict across cells") {
  for (const Params& p :
       {validate_params(3, 4, 1, 2, 2), validate_params(2, 5, 1, 1, 2),
        validate_params(4, 4, 1, 3, 2)}) {
    const PrivacyReport report = verify_privacy(p);
    CHECK(report.verdict);
    CHECK(report.closed_form_match);
  }
}

TEST_CASE("fixed side entries break privacy detectably") {
  EnumerationOptions options;
  options.variant = SchemeVariant::kFixedSideEntries;
  const PrivacyReport report =
      verify_privacy(validate_params(3, 3, 1, 2, 2), options);
  CHECK_FALSE(report.verdict);
  REQUIRE(report.counterexample.has_value());
  const auto& cx = *report.counterexample;
  CHECK(cx.mass_a != cx.mass_b);
  // The mutated stream still has total mass one per (W, S).
  const DemandSideInfo ds(validate_params(3, 3, 1, 2, 2), 1, {2});
  Rat mass(0);
  enumerate_realizations(validate_params(3, 3, 1, 2, 2), ds, options)
      .for_each([&](const Realization& r) { mass += r.probability; });
  CHECK(mass == Rat(1));
}

TEST_CASE("recoverability verdicts") {
  CHECK(verify_recoverability(validate_params(3, 3, 1, 2, 2)));
  CHECK(verify_recoverability(validate_params(2, 5, 1, 1, 3)));
}

TEST_CASE("a corrupted answer corrupts recovery") {
  const Params p = validate_params(3, 3, 1, 2, 3);
  const DemandSideInfo ds(p, 1, {2});
  const MessageDB db = random_db(p, 8u);
  const SideInformation side = SideInformation::from_db(ds, db);
  const auto items = enumerate_realizations(p, ds).materialize();
  REQUIRE_FALSE(items.empty());
  const QueryPlan& plan = items[2].plan;
  std::vector<Answer> answers;
  for (const QueryVector& q : scheme::queries_as_sent(plan)) {
    answers.push_back(scheme::server_answer(db, q));
  }
  REQUIRE_FALSE(answers[1].is_null());
  const FieldElement bumped =
      answers[1].payload() + FieldElement(1, p.field_order());
  answers[1] = Answer::of(bumped);
  const auto recovered = scheme::recover_demand(plan, answers, side);
  bool all_match = true;
  const auto expected = db.row(1);
  for (unsigned j = 0; j < expected.size(); ++j) {
    if (recovered[j].value() != expected[j]) all_match = false;
  }
  CHECK_FALSE(all_match);
}

TEST_CASE("expected download matches N - P0") {
  CHECK(expected_download_exact(validate_params(3, 3, 1, 2, 2)) == Rat(5, 2));
  CHECK(expected_download_exact(validate_params(2, 5, 1, 1, 2)) ==
        Rat(38, 23));
  // M = K-1: exactly one null per retrieval, always.
  CHECK(expected_download_exact(validate_params(4, 3, 2, 3, 2)) == Rat(3));
}

TEST_CASE("expected download equals N - P0 across a sweep") {
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned k = 2; k <= 5; ++k) {
      for (unsigned m = 1; m <= k - 1; ++m) {
        const Params p = validate_params(n, k, m, n - 1, 2);
        const auto d = analysis::compute_distribution(p);
        CHECK(expected_download_exact(p) ==
              Rat(static_cast<long>(n)) - d.p[0]);
      }
    }
  }
}

TEST_CASE("budget cap triggers") {
  const Params p = validate_params(3, 4, 1, 2, 2);
  const DemandSideInfo ds(p, 1, {2});
  EnumerationOptions options;
  options.budget = 3;
  const RealizationSpace space = enumerate_realizations(p, ds, options);
  CHECK(space.count() > 3);
  CHECK_THROWS_AS(space.for_each([](const Realization&) {}), BudgetExceeded);
  CHECK_THROWS_AS(verify_privacy(p, options), BudgetExceeded);
  CHECK_THROWS_AS(verify_recoverability(p, 0, options), BudgetExceeded);
}
