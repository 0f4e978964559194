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

#include "pirsi/plan.hpp"

#include <algorithm>
#include <string>

#include "pirsi/errors.hpp"

namespace pirsi {

namespace {

void check_component_vector(const Params& params, const QueryVector& v,
                            const char* name) {
  if (v.length() != params.messages()) {
    throw RangeError(std::string("plan: component ") + name +
                     " has wrong length");
  }
  for (std::uint32_t c : v.comps()) {
    if (c >= params.servers()) {
      throw RangeError(std::string("plan: component ") + name +
                       " has an entry outside [0, N-1]");
    }
  }
}

bool support_equals(const QueryVector& v, const std::vector<unsigned>& set) {
  return v.support() == set;
}

bool support_subset_of(const QueryVector& v, const std::vector<unsigned>& set) {
  const auto supp = v.support();
  return std::includes(set.begin(), set.end(), supp.begin(), supp.end());
}

}  // namespace

QueryPlan QueryPlan::partial_interference(const Params& params,
                                          const DemandSideInfo& ds,
                                          unsigned randomness_index,
                                          QueryVector a, QueryVector b,
                                          std::vector<unsigned> pi) {
  params.require_full_subpacketization();
  if (randomness_index + 1 >= params.groups()) {
    throw RangeError("plan: partial-interference branch needs I < g-1");
  }
  check_component_vector(params, a, "a");
  check_component_vector(params, b, "b");
  const auto interference = ds.interference(params);
  if (!support_subset_of(a, interference)) {
    throw RangeError("plan: supp(a) must avoid the demand and side info");
  }
  if (a.support_size() !=
      randomness_index * (params.side_info_count() + 1)) {
    throw RangeError("plan: supp(a) must have size I(M+1)");
  }
  if (!support_equals(b, ds.side_info())) {
    throw RangeError("plan: supp(b) must equal the side information set");
  }
  return QueryPlan(params, ds, randomness_index,
                   PlanBranch::kPartialInterference, std::move(a),
                   std::move(b), QueryVector::zero(params.messages()),
                   QueryVector::zero(params.messages()), std::move(pi));
}

QueryPlan QueryPlan::full_interference(const Params& params,
                                       const DemandSideInfo& ds, QueryVector a,
                                       QueryVector b1, QueryVector b2,
                                       std::vector<unsigned> pi) {
  params.require_full_subpacketization();
  check_component_vector(params, a, "a");
  check_component_vector(params, b1, "b1");
  check_component_vector(params, b2, "b2");
  const auto interference = ds.interference(params);
  if (!support_equals(a, interference)) {
    throw RangeError(
        "plan: supp(a) must cover every interference message at I = g-1");
  }
  const unsigned surplus =
      params.groups() * (params.side_info_count() + 1) - params.messages();
  if (!support_subset_of(b1, ds.side_info()) ||
      b1.support_size() != surplus) {
    throw RangeError("plan: supp(b1) must be a (g(M+1)-K)-subset of S");
  }
  std::vector<unsigned> rest;
  for (unsigned s : ds.side_info()) {
    if (b1.at(s) == 0) rest.push_back(s);
  }
  if (!support_equals(b2, rest)) {
    throw RangeError("plan: supp(b2) must equal S minus supp(b1)");
  }
  return QueryPlan(params, ds, params.groups() - 1,
                   PlanBranch::kFullInterference, std::move(a),
                   QueryVector::zero(params.messages()), std::move(b1),
                   std::move(b2), std::move(pi));
}

QueryPlan::QueryPlan(const Params& params, const DemandSideInfo& ds,
                     unsigned index, PlanBranch branch, QueryVector a,
                     QueryVector b, QueryVector b1, QueryVector b2,
                     std::vector<unsigned> pi)
    : params_(params),
      ds_(ds),
      index_(index),
      branch_(branch),
      a_(std::move(a)),
      b_(std::move(b)),
      b1_(std::move(b1)),
      b2_(std::move(b2)),
      pi_(std::move(pi)) {
  if (pi_.size() != params_.servers()) {
    throw RangeError("plan: permutation must have N entries");
  }
  std::vector<bool> seen(params_.servers(), false);
  for (unsigned p : pi_) {
    if (p < 1 || p > params_.servers() || seen[p - 1]) {
      throw RangeError("plan: permutation is not a bijection on [N]");
    }
    seen[p - 1] = true;
  }
  build_vectors();
  check_invariants();
}

void QueryPlan::build_vectors() {
  // v_1 carries no demand sub-packet; v_{n+1} adds sub-packet n of the
  // demand on top of the shared components.
  const unsigned w = ds_.demand();
  QueryVector base_first =
      branch_ == PlanBranch::kPartialInterference ? a_ : a_.merged_with(b1_);
  QueryVector base_rest = branch_ == PlanBranch::kPartialInterference
                              ? a_.merged_with(b_)
                              : a_.merged_with(b1_).merged_with(b2_);
  vectors_.clear();
  vectors_.reserve(params_.servers());
  vectors_.push_back(base_first);
  for (unsigned n = 1; n + 1 <= params_.servers(); ++n) {
    vectors_.push_back(base_rest.with_component(w, n));
  }
}

void QueryPlan::check_invariants() const {
  const unsigned w = ds_.demand();
  if (vectors_[0].at(w) != 0) {
    throw RangeError("plan: v_1 must not touch the demand message");
  }
  for (unsigned n = 1; n < params_.servers(); ++n) {
    if (vectors_[n].at(w) != n) {
      throw RangeError("plan: v_{n+1} must select demand sub-packet n");
    }
  }
}

const QueryVector& QueryPlan::recovery_side_component() const {
  return branch_ == PlanBranch::kPartialInterference ? b_ : b2_;
}

}  // namespace pirsi
