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

#include <algorithm>
#include <numeric>
#include <string>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"
#include "pirsi/message_db.hpp"
#include "pirsi/scheme.hpp"

namespace pirsi::oracle {

namespace {

// r-subsets of [0, pool_size), colexicographic.
void for_each_subset_colex(
    unsigned pool_size, unsigned r,
    const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> idx(r);
  std::iota(idx.begin(), idx.end(), 0u);
  for (;;) {
    visit(idx);
    unsigned i = 0;
    while (i < r) {
      const unsigned limit = (i + 1 < r) ? idx[i + 1] : pool_size;
      if (idx[i] + 1 < limit) break;
      ++i;
    }
    if (i == r) return;
    ++idx[i];
    for (unsigned j = 0; j < i; ++j) idx[j] = j;
  }
}

std::vector<std::vector<unsigned>> subsets_of(
    const std::vector<unsigned>& pool, unsigned r) {
  std::vector<std::vector<unsigned>> out;
  for_each_subset_colex(
      static_cast<unsigned>(pool.size()), r,
      [&](const std::vector<unsigned>& idx) {
        std::vector<unsigned> subset;
        subset.reserve(r);
        for (unsigned i : idx) subset.push_back(pool[i]);
        out.push_back(std::move(subset));
      });
  return out;
}

// Entry assignments over `positions` slots, each in [1, fan], odometer
// order with the last slot fastest. The fixed variant pins every slot to 1.
void for_each_entry_assignment(
    unsigned positions, unsigned fan, bool fixed,
    const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::vector<std::uint32_t> entries(positions, 1);
  if (fixed || positions == 0) {
    visit(entries);
    return;
  }
  for (;;) {
    visit(entries);
    unsigned i = positions;
    for (;;) {
      if (i == 0) return;
      --i;
      if (entries[i] < fan) {
        ++entries[i];
        std::fill(entries.begin() + i + 1, entries.end(), 1u);
        break;
      }
    }
  }
}

QueryVector vector_on(unsigned length, const std::vector<unsigned>& support,
                      const std::vector<std::uint32_t>& entries) {
  std::vector<std::uint32_t> comps(length, 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    comps[support[i] - 1] = entries[i];
  }
  return QueryVector(std::move(comps));
}

mpz_class factorial(unsigned n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

struct BranchChoice {
  unsigned index;
  QueryVector a;
  QueryVector side_first;   // b below the top index, b1 at it
  QueryVector side_second;  // all-zero below the top index, b2 at it
  Rat probability;          // P_I times the uniform choice factors
};

// Every (I, a, b / b1, b2) choice with its exact probability; the
// permutation is layered on top by the caller. Order: index ascending,
// supports colex, entries odometer (earlier draws are slower wheels).
void enumerate_choices(const Params& params, const DemandSideInfo& ds,
                       SchemeVariant variant,
                       const std::function<void(BranchChoice&&)>& visit) {
  const auto dist = analysis::compute_distribution(params);
  const unsigned k = params.messages();
  const unsigned m = params.side_info_count();
  const unsigned g = params.groups();
  const unsigned block = m + 1;
  const unsigned fan = params.servers() - 1;
  const bool fixed_side = variant == SchemeVariant::kFixedSideEntries;
  const auto interference = ds.interference(params);

  for (unsigned index = 0; index < g; ++index) {
    if (index != g - 1) {
      const auto supports = subsets_of(interference, index * block);
      mpz_class states = static_cast<unsigned long>(supports.size());
      states *= ipow(fan, index * block);
      states *= fixed_side ? 1 : ipow(fan, m);
      const Rat item_prob = dist.p[index] / Rat(states);
      for (const auto& a_support : supports) {
        for_each_entry_assignment(
            index * block, fan, false,
            [&](const std::vector<std::uint32_t>& a_entries) {
              QueryVector a = vector_on(k, a_support, a_entries);
              for_each_entry_assignment(
                  m, fan, fixed_side,
                  [&](const std::vector<std::uint32_t>& b_entries) {
                    visit(BranchChoice{
                        index, a, vector_on(k, ds.side_info(), b_entries),
                        QueryVector::zero(k), item_prob});
                  });
            });
      }
    } else {
      const unsigned surplus = g * block - k;
      const auto b1_supports = subsets_of(ds.side_info(), surplus);
      mpz_class states = ipow(fan, k - m - 1);
      states *= static_cast<unsigned long>(b1_supports.size());
      states *= fixed_side ? 1 : ipow(fan, m);
      const Rat item_prob = dist.p[index] / Rat(states);
      for_each_entry_assignment(
          k - m - 1, fan, false,
          [&](const std::vector<std::uint32_t>& a_entries) {
            QueryVector a = vector_on(k, interference, a_entries);
            for (const auto& b1_support : b1_supports) {
              std::vector<unsigned> b2_support;
              for (unsigned s : ds.side_info()) {
                if (!std::binary_search(b1_support.begin(), b1_support.end(),
                                        s)) {
                  b2_support.push_back(s);
                }
              }
              for_each_entry_assignment(
                  surplus, fan, fixed_side,
                  [&](const std::vector<std::uint32_t>& b1_entries) {
                    QueryVector b1 = vector_on(k, b1_support, b1_entries);
                    for_each_entry_assignment(
                        m - surplus, fan, fixed_side,
                        [&](const std::vector<std::uint32_t>& b2_entries) {
                          visit(BranchChoice{
                              index, a, b1,
                              vector_on(k, b2_support, b2_entries),
                              item_prob});
                        });
                  });
            }
          });
    }
  }
}

QueryPlan plan_from_choice(const Params& params, const DemandSideInfo& ds,
                           const BranchChoice& choice,
                           std::vector<unsigned> pi) {
  if (choice.index != params.groups() - 1) {
    return QueryPlan::partial_interference(params, ds, choice.index, choice.a,
                                           choice.side_first, std::move(pi));
  }
  return QueryPlan::full_interference(params, ds, choice.a, choice.side_first,
                                      choice.side_second, std::move(pi));
}

mpz_class choice_count(const Params& params, SchemeVariant variant) {
  const unsigned m = params.side_info_count();
  const unsigned g = params.groups();
  const unsigned block = m + 1;
  const unsigned fan = params.servers() - 1;
  const unsigned interference_size = params.messages() - m - 1;
  const bool fixed_side = variant == SchemeVariant::kFixedSideEntries;

  mpz_class total = 0;
  for (unsigned index = 0; index < g; ++index) {
    mpz_class branch;
    if (index != g - 1) {
      branch = binomial(interference_size, index * block);
      branch *= ipow(fan, index * block);
      branch *= fixed_side ? 1 : ipow(fan, m);
    } else {
      const unsigned surplus = g * block - params.messages();
      branch = ipow(fan, interference_size);
      branch *= binomial(m, surplus);
      branch *= fixed_side ? 1 : ipow(fan, m);
    }
    total += branch;
  }
  return total;
}

// Checks that Y_{j+1} - Y_1 - side_sum has coefficient +1 on sub-packet
// (W, j) and 0 everywhere else, over the K*L sub-packet space. Database
// independent.
bool symbolic_unit_check(const QueryPlan& plan) {
  const Params& params = plan.params();
  const unsigned l = params.subpackets();
  const unsigned w = plan.demand_side_info().demand();
  const auto accumulate = [&](std::vector<int>& coeff, const QueryVector& v,
                              int sign) {
    for (unsigned message : v.support()) {
      coeff[(message - 1) * l + (v.at(message) - 1)] += sign;
    }
  };
  for (unsigned j = 1; j <= l; ++j) {
    std::vector<int> coeff(params.messages() * l, 0);
    accumulate(coeff, plan.vectors()[j], +1);
    accumulate(coeff, plan.vectors()[0], -1);
    accumulate(coeff, plan.recovery_side_component(), -1);
    for (unsigned slot = 0; slot < coeff.size(); ++slot) {
      const int expected = (slot == (w - 1) * l + (j - 1)) ? 1 : 0;
      if (coeff[slot] != expected) {
        return false;
      }
    }
  }
  return true;
}

// All (W, S) instances, demand ascending then side info sets in colex.
std::vector<DemandSideInfo> all_instances(const Params& params) {
  std::vector<DemandSideInfo> out;
  for (unsigned w = 1; w <= params.messages(); ++w) {
    std::vector<unsigned> others;
    for (unsigned i = 1; i <= params.messages(); ++i) {
      if (i != w) others.push_back(i);
    }
    for (const auto& s : subsets_of(others, params.side_info_count())) {
      out.emplace_back(params, w, s);
    }
  }
  return out;
}

}  // namespace

RealizationSpace::RealizationSpace(const Params& params,
                                   const DemandSideInfo& ds,
                                   EnumerationOptions options)
    : params_(params), ds_(ds), options_(options), count_(0) {
  params_.require_full_subpacketization();
  mpz_class total = choice_count(params_, options_.variant);
  if (options_.permutations == PermutationHandling::kExpand) {
    total *= factorial(params_.servers());
  }
  if (!total.fits_ulong_p()) {
    throw BudgetExceeded("realization space size does not fit in 64 bits");
  }
  count_ = total.get_ui();
}

void RealizationSpace::for_each(
    const std::function<void(const Realization&)>& visit) const {
  if (count_ > options_.budget) {
    throw BudgetExceeded("realization space has " + std::to_string(count_) +
                         " items, budget is " +
                         std::to_string(options_.budget));
  }
  const unsigned n = params_.servers();
  std::vector<unsigned> identity(n);
  std::iota(identity.begin(), identity.end(), 1u);
  const Rat permutation_weight =
      options_.permutations == PermutationHandling::kExpand
          ? Rat(1) / Rat(factorial(n))
          : Rat(1);

  enumerate_choices(
      params_, ds_, options_.variant, [&](BranchChoice&& choice) {
        if (options_.permutations == PermutationHandling::kAnalytic) {
          visit(Realization{plan_from_choice(params_, ds_, choice, identity),
                            choice.probability});
          return;
        }
        std::vector<unsigned> pi = identity;
        do {
          visit(Realization{plan_from_choice(params_, ds_, choice, pi),
                            choice.probability * permutation_weight});
        } while (std::next_permutation(pi.begin(), pi.end()));
      });
}

std::vector<Realization> RealizationSpace::materialize() const {
  std::vector<Realization> out;
  out.reserve(count_);
  for_each([&](const Realization& r) { out.push_back(r); });
  return out;
}

RealizationSpace enumerate_realizations(const Params& params,
                                        const DemandSideInfo& ds,
                                        EnumerationOptions options) {
  return RealizationSpace(params, ds, options);
}

std::map<QueryVector, Rat> brute_force_query_distribution(
    const Params& params, const DemandSideInfo& ds, unsigned server,
    EnumerationOptions options) {
  if (server < 1 || server > params.servers()) {
    throw RangeError("brute_force_query_distribution: bad server index");
  }
  RealizationSpace space(params, ds, options);
  std::map<QueryVector, Rat> out;
  const Rat slot_weight(1, static_cast<long>(params.servers()));
  space.for_each([&](const Realization& real) {
    if (options.permutations == PermutationHandling::kAnalytic) {
      // Uniform permutation: every constructed vector lands on this server
      // with probability 1/N.
      for (const QueryVector& v : real.plan.vectors()) {
        auto [it, inserted] = out.try_emplace(v, Rat(0));
        it->second += real.probability * slot_weight;
      }
    } else {
      const unsigned slot = real.plan.permutation()[server - 1];
      const QueryVector& v = real.plan.vectors()[slot - 1];
      auto [it, inserted] = out.try_emplace(v, Rat(0));
      it->second += real.probability;
    }
  });
  return out;
}

PrivacyReport verify_privacy(const Params& params,
                             EnumerationOptions options) {
  const unsigned k = params.messages();
  const auto instances = all_instances(params);

  mpz_class total_items = 0;
  for (const auto& ds : instances) {
    total_items += RealizationSpace(params, ds, options).count();
  }
  if (total_items > options.budget) {
    throw BudgetExceeded("privacy verification needs " +
                         total_items.get_str() + " items, budget is " +
                         std::to_string(options.budget));
  }

  PrivacyReport report;
  for (const auto& ds : instances) {
    const auto dist = brute_force_query_distribution(params, ds, 1, options);
    for (const auto& [v, mass] : dist) {
      auto [it, inserted] =
          report.table.try_emplace(v, std::vector<Rat>(k, Rat(0)));
      it->second[ds.demand() - 1] += mass;
    }
  }
  // Each demand's row accumulated over side info sets with uniform weight.
  const Rat s_weight =
      Rat(1) / Rat(binomial(static_cast<long>(k) - 1,
                            static_cast<long>(params.side_info_count())));
  for (auto& [v, row] : report.table) {
    for (Rat& mass : row) {
      mass *= s_weight;
    }
  }

  report.verdict = true;
  for (const auto& [v, row] : report.table) {
    for (unsigned w = 1; w < k; ++w) {
      if (row[w] != row[0]) {
        report.verdict = false;
        if (!report.counterexample) {
          report.counterexample =
              PrivacyCounterexample{v, 1, w + 1, row[0], row[w]};
        }
      }
    }
  }

  report.closed_form_match = true;
  for (const auto& [v, row] : report.table) {
    for (unsigned w = 1; w <= k; ++w) {
      const Rat closed = analysis::closed_form_query_prob(params, v, w);
      if (closed != row[w - 1]) {
        report.closed_form_match = false;
        if (!report.closed_form_mismatch) {
          report.closed_form_mismatch =
              ClosedFormMismatch{v, w, row[w - 1], closed};
        }
        break;
      }
    }
  }
  return report;
}

bool verify_recoverability(const Params& params, std::uint64_t replay_seed,
                           EnumerationOptions options) {
  const auto instances = all_instances(params);

  mpz_class total_items = 0;
  for (const auto& ds : instances) {
    total_items += RealizationSpace(params, ds, options).count();
  }
  if (total_items > options.budget) {
    throw BudgetExceeded("recoverability verification needs " +
                         total_items.get_str() + " items, budget is " +
                         std::to_string(options.budget));
  }

  Rng seeder(replay_seed);
  bool all_ok = true;
  for (const auto& ds : instances) {
    Rng db_rng = seeder.split();
    const MessageDB db = random_db(params, db_rng);
    const SideInformation side = SideInformation::from_db(ds, db);
    const auto expected = db.row(ds.demand());

    RealizationSpace space(params, ds, options);
    space.for_each([&](const Realization& real) {
      if (!symbolic_unit_check(real.plan)) {
        all_ok = false;
        return;
      }
      const auto sent = scheme::queries_as_sent(real.plan);
      std::vector<Answer> answers;
      answers.reserve(sent.size());
      for (const QueryVector& q : sent) {
        answers.push_back(scheme::server_answer(db, q));
      }
      const auto recovered = scheme::recover_demand(real.plan, answers, side);
      for (unsigned j = 0; j < recovered.size(); ++j) {
        if (recovered[j].value() != expected[j]) {
          all_ok = false;
          return;
        }
      }
    });
  }
  return all_ok;
}

Rat expected_download_exact(const Params& params,
                            EnumerationOptions options) {
  // The download count is permutation and demand invariant; any instance
  // serves. Use the canonical one: W = 1, S = {2..M+1}.
  std::vector<unsigned> side(params.side_info_count());
  std::iota(side.begin(), side.end(), 2u);
  const DemandSideInfo ds(params, 1, side);

  RealizationSpace space(params, ds, options);
  Rat total(0);
  space.for_each([&](const Realization& real) {
    unsigned non_null = 0;
    for (const QueryVector& v : real.plan.vectors()) {
      if (!v.is_zero()) ++non_null;
    }
    total += real.probability * Rat(static_cast<long>(non_null));
  });
  return total;
}

}  // namespace pirsi::oracle
