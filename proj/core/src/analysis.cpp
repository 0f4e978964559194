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

#include "pirsi/analysis.hpp"

#include <algorithm>
#include <string>

#include "pirsi/errors.hpp"

namespace pirsi::analysis {

namespace {

// Conditional probability of one query vector with support size k(M+1)
// when the demand lies inside the support: the index must come out as k-1,
// the interference part of the vector must be hit exactly, the side
// information entries must match, and v_{j+1} must land on this server.
Rat demand_in_support_prob(const Params& params, const std::vector<Rat>& p,
                           unsigned k) {
  const long n = params.servers();
  const long kk = params.messages();
  const long m = params.side_info_count();
  const long size = static_cast<long>(k) * (m + 1);
  const Rat numerator = Rat(mpz_class(binomial(size - 1, m))) * p[k - 1];
  mpz_class denom = binomial(kk - 1, m);
  denom *= binomial(kk - m - 1, (static_cast<long>(k) - 1) * (m + 1));
  denom *= ipow(n - 1, static_cast<unsigned>((k - 1) * (m + 1) + m));
  denom *= n;
  return numerator / Rat(denom);
}

// Demand outside the support, below the top class: the vector must equal
// the drawn interference part exactly and be the one sent as v_1.
Rat demand_outside_support_prob(const Params& params,
                                const std::vector<Rat>& p, unsigned k) {
  const long n = params.servers();
  const long kk = params.messages();
  const long m = params.side_info_count();
  const long size = static_cast<long>(k) * (m + 1);
  const Rat numerator = Rat(mpz_class(binomial(kk - 1 - size, m))) * p[k];
  mpz_class denom = binomial(kk - 1, m);
  denom *= binomial(kk - m - 1, size);
  denom *= ipow(n - 1, static_cast<unsigned>(size));
  denom *= n;
  return numerator / Rat(denom);
}

// Demand outside the support at the top class k = g-1: the vector is
// v_1 = a + b1, so the admissible side information sets overlap the
// support in exactly g(M+1)-K positions.
Rat demand_outside_support_top_prob(const Params& params,
                                    const std::vector<Rat>& p) {
  const long n = params.servers();
  const long kk = params.messages();
  const long m = params.side_info_count();
  const long g = params.groups();
  const long surplus = g * (m + 1) - kk;
  const Rat numerator =
      Rat(mpz_class(binomial((g - 1) * (m + 1), surplus))) * p[g - 1];
  mpz_class denom = binomial(kk - 1, m);
  denom *= ipow(n - 1, static_cast<unsigned>(kk - m - 1));
  denom *= binomial(m, surplus);
  denom *= ipow(n - 1, static_cast<unsigned>(surplus));
  denom *= n;
  return numerator / Rat(denom);
}

}  // namespace

SchemeDistribution compute_distribution(const Params& params) {
  const unsigned g = params.groups();
  const Rat groups_exact(params.messages(), params.side_info_count() + 1);

  SchemeDistribution d;
  d.groups = g;
  d.r.assign(g, Rat(1));
  for (unsigned k = 1; k < g; ++k) {
    d.r[k] = d.r[k - 1] * (groups_exact - Rat(static_cast<long>(k))) /
             Rat(static_cast<long>(k));
  }

  Rat total(1);
  const long fan = static_cast<long>(params.servers()) - 1;
  for (unsigned k = 1; k < g; ++k) {
    total += d.r[k] * Rat::pow(Rat(fan), k);
  }
  d.p.assign(g, Rat(0));
  d.p[0] = total.reciprocal();
  for (unsigned k = 1; k < g; ++k) {
    d.p[k] = d.p[0] * Rat::pow(Rat(fan), k) * d.r[k];
  }
  return d;
}

Rat rate_R(const Params& params) {
  const auto d = compute_distribution(params);
  const long n = params.servers();
  return Rat(n - 1) / (Rat(n) - d.p[0]);
}

Rat rate_Rstar(const Params& params) {
  const mpz_class n = params.servers();
  const unsigned g = params.groups();
  const mpz_class n_g = ipow(n, g);
  const mpz_class n_g1 = ipow(n, g - 1);
  return Rat(mpz_class(n_g - n_g1)) / Rat(mpz_class(n_g - 1));
}

Rat rate_RL(const Params& params) {
  if (params.subpackets() + 1 >= params.servers()) {
    throw RangeError("rate_RL applies only when L < N-1; use rate_R");
  }
  const Params inner = Params::validate(
      params.subpackets() + 1, params.messages(), params.side_info_count(),
      params.subpackets(), params.field_order());
  return rate_R(inner);
}

RateComparison compare_rates(const Params& params) {
  RateComparison c{rate_R(params), rate_Rstar(params),
                   params.divisible() ? RateRelation::kEqual
                                      : RateRelation::kStrictlyGreater};
  return c;
}

RateReport rate_report(const Params& params) {
  const auto d = compute_distribution(params);
  RateReport report;
  report.r = rate_R(params);
  report.rstar = rate_Rstar(params);
  report.divisible = params.divisible();
  report.expected_download_symbols =
      Rat(static_cast<long>(params.servers())) - d.p[0];
  report.demand_symbols = params.servers() - 1;
  return report;
}

SupportClass classify_support(const Params& params, const QueryVector& v) {
  if (v.length() != params.messages()) {
    throw RangeError("classify_support: vector length must be K");
  }
  for (std::uint32_t c : v.comps()) {
    if (c >= params.servers()) {
      throw RangeError("classify_support: entry outside [0, N-1]");
    }
  }
  const unsigned size = v.support_size();
  if (size == 0) {
    return SupportClass{SupportClass::Tag::kNull, 0};
  }
  if (size == params.messages()) {
    return SupportClass{SupportClass::Tag::kFull, 0};
  }
  const unsigned block = params.side_info_count() + 1;
  if (size % block == 0) {
    const unsigned k = size / block;
    if (k >= 1 && k <= params.groups() - 1) {
      return SupportClass{SupportClass::Tag::kPartial, k};
    }
  }
  throw ClassificationError("support size " + std::to_string(size) +
                            " is never emitted at K=" +
                            std::to_string(params.messages()) +
                            ", M=" + std::to_string(params.side_info_count()));
}

Rat closed_form_query_prob(const Params& params, const QueryVector& v,
                           unsigned demand) {
  if (demand < 1 || demand > params.messages()) {
    throw RangeError("closed_form_query_prob: demand index out of range");
  }
  const SupportClass cls = classify_support(params, v);
  const auto d = compute_distribution(params);
  const long n = params.servers();

  switch (cls.tag) {
    case SupportClass::Tag::kNull:
      return d.p[0] / Rat(n);
    case SupportClass::Tag::kFull: {
      mpz_class denom = ipow(n - 1, params.messages() - 1);
      denom *= n;
      return d.p[params.groups() - 1] / Rat(denom);
    }
    case SupportClass::Tag::kPartial:
      break;
  }

  const bool demand_in_support = v.at(demand) != 0;
  if (demand_in_support) {
    return demand_in_support_prob(params, d.p, cls.k);
  }
  if (cls.k == params.groups() - 1) {
    return demand_outside_support_top_prob(params, d.p);
  }
  return demand_outside_support_prob(params, d.p, cls.k);
}

bool verify_pk_conditions(const Params& params) {
  return verify_pk_conditions(params, compute_distribution(params));
}

bool verify_pk_conditions(const Params& params, const SchemeDistribution& d) {
  const unsigned g = params.groups();
  if (d.p.size() != g) {
    throw RangeError("verify_pk_conditions: distribution size mismatch");
  }
  // Demand-independence asks the in-support and out-of-support conditional
  // probabilities to coincide class by class.
  for (unsigned k = 1; k + 1 < g; ++k) {
    if (demand_in_support_prob(params, d.p, k) !=
        demand_outside_support_prob(params, d.p, k)) {
      return false;
    }
  }
  if (g >= 2) {
    if (demand_in_support_prob(params, d.p, g - 1) !=
        demand_outside_support_top_prob(params, d.p)) {
      return false;
    }
  }
  return true;
}

}  // namespace pirsi::analysis
