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

#include "pirsi/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"

namespace pirsi::scheme {

namespace {

// Uniform r-subset of pool, ascending (partial Fisher-Yates).
std::vector<unsigned> sample_subset(std::vector<unsigned> pool, unsigned r,
                                    Rng& rng) {
  for (unsigned i = 0; i < r; ++i) {
    const auto j =
        i + static_cast<unsigned>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(r);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Vector with the given 1-based support and fresh uniform entries in
// [1, N-1].
QueryVector random_vector_on(const Params& params,
                             const std::vector<unsigned>& support, Rng& rng) {
  std::vector<std::uint32_t> comps(params.messages(), 0);
  for (unsigned message : support) {
    comps[message - 1] =
        1 + static_cast<std::uint32_t>(rng.below(params.servers() - 1));
  }
  return QueryVector(std::move(comps));
}

std::vector<unsigned> random_permutation(unsigned n, Rng& rng) {
  std::vector<unsigned> pi(n);
  std::iota(pi.begin(), pi.end(), 1u);
  for (unsigned i = 0; i + 1 < n; ++i) {
    const auto j = i + static_cast<unsigned>(rng.below(n - i));
    std::swap(pi[i], pi[j]);
  }
  return pi;
}

}  // namespace

unsigned sample_randomness_index(const Params& params, Rng& rng) {
  const auto dist = analysis::compute_distribution(params);
  if (dist.groups == 1) {
    return 0;
  }
  mpz_class common_den = 1;
  for (const Rat& p : dist.p) {
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(),
            p.den().get_mpz_t());
  }
  const mpz_class draw = rng.below(common_den);
  mpz_class threshold = 0;
  for (unsigned k = 0; k < dist.groups; ++k) {
    threshold += dist.p[k].num() * (common_den / dist.p[k].den());
    if (draw < threshold) {
      return k;
    }
  }
  // Unreachable: the thresholds sum to the common denominator.
  throw RangeError("sample_randomness_index: thresholds did not cover draw");
}

QueryPlan generate_plan(const Params& params, const DemandSideInfo& ds,
                        Rng& rng) {
  params.require_full_subpacketization();
  const unsigned g = params.groups();
  const unsigned block = params.side_info_count() + 1;
  const unsigned index = sample_randomness_index(params, rng);
  const auto interference = ds.interference(params);

  if (index != g - 1) {
    const auto a_support = sample_subset(interference, index * block, rng);
    QueryVector a = random_vector_on(params, a_support, rng);
    QueryVector b = random_vector_on(params, ds.side_info(), rng);
    return QueryPlan::partial_interference(
        params, ds, index, std::move(a), std::move(b),
        random_permutation(params.servers(), rng));
  }

  const unsigned surplus = g * block - params.messages();
  QueryVector a = random_vector_on(params, interference, rng);
  const auto b1_support = sample_subset(ds.side_info(), surplus, rng);
  QueryVector b1 = random_vector_on(params, b1_support, rng);
  std::vector<unsigned> b2_support;
  for (unsigned s : ds.side_info()) {
    if (!std::binary_search(b1_support.begin(), b1_support.end(), s)) {
      b2_support.push_back(s);
    }
  }
  QueryVector b2 = random_vector_on(params, b2_support, rng);
  return QueryPlan::full_interference(
      params, ds, std::move(a), std::move(b1), std::move(b2),
      random_permutation(params.servers(), rng));
}

std::vector<QueryVector> queries_as_sent(const QueryPlan& plan) {
  std::vector<QueryVector> sent;
  sent.reserve(plan.permutation().size());
  for (unsigned target : plan.permutation()) {
    sent.push_back(plan.vectors()[target - 1]);
  }
  return sent;
}

Answer server_answer(const MessageDB& db, const QueryVector& query) {
  if (query.length() != db.messages()) {
    throw IndexError("server_answer: query length must be K");
  }
  if (query.is_zero()) {
    return Answer::null();
  }
  FieldElement sum = FieldElement::zero(db.field_order());
  for (unsigned message : query.support()) {
    const std::uint32_t subpacket = query.at(message);
    if (subpacket > db.subpackets()) {
      throw IndexError("server_answer: sub-packet index " +
                       std::to_string(subpacket) + " exceeds L=" +
                       std::to_string(db.subpackets()));
    }
    sum = sum + db.at(message, subpacket);
  }
  return Answer::of(sum);
}

std::vector<FieldElement> recover_demand(const QueryPlan& plan,
                                         const std::vector<Answer>& answers,
                                         const SideInformation& side) {
  const Params& params = plan.params();
  const unsigned n = params.servers();
  if (answers.size() != n) {
    throw TranscriptMismatch("recover_demand: expected " + std::to_string(n) +
                             " answers, got " +
                             std::to_string(answers.size()));
  }
  const std::uint32_t q = params.field_order();

  // Server s answered vector v_{pi(s)}; de-permute to construction order.
  std::vector<FieldElement> y(n, FieldElement::zero(q));
  for (unsigned server = 1; server <= n; ++server) {
    const unsigned slot = plan.permutation()[server - 1];
    const Answer& answer = answers[server - 1];
    if (answer.is_null() != plan.vectors()[slot - 1].is_zero()) {
      throw TranscriptMismatch(
          "recover_demand: null answer does not match an all-zero query");
    }
    if (!answer.is_null()) {
      if (answer.payload().modulus() != q) {
        throw FieldMismatch("recover_demand: answer from a different field");
      }
      y[slot - 1] = answer.payload();
    }
  }

  // The side information sum is shared by every Y_{j+1}.
  const QueryVector& side_component = plan.recovery_side_component();
  FieldElement side_sum = FieldElement::zero(q);
  for (unsigned message : side_component.support()) {
    side_sum = side_sum + FieldElement(
        side.symbol(message, side_component.at(message)), q);
  }

  std::vector<FieldElement> demand_row;
  demand_row.reserve(params.subpackets());
  for (unsigned j = 1; j <= params.subpackets(); ++j) {
    demand_row.push_back(y[j] - y[0] - side_sum);
  }
  return demand_row;
}

TwoStepPlan two_step_retrieve(const Params& params, const DemandSideInfo& ds,
                              Rng& rng) {
  if (params.subpackets() == params.servers() - 1) {
    throw RangeError(
        "two_step_retrieve applies only when L < N-1; use generate_plan");
  }
  const Params inner = Params::validate(
      params.subpackets() + 1, params.messages(), params.side_info_count(),
      params.subpackets(), params.field_order());
  std::vector<unsigned> chosen(params.subpackets() + 1);
  std::iota(chosen.begin(), chosen.end(), 1u);
  return TwoStepPlan{std::move(chosen), inner, generate_plan(inner, ds, rng)};
}

}  // namespace pirsi::scheme
