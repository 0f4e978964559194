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

#include "pirsi/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"

namespace pirsi::simnet {

std::vector<std::uint8_t> encode_query_frame(const Params& params,
                                             const QueryVector& query) {
  if (params.servers() > 256) {
    throw TransportError("query frame: one-byte components need N <= 256");
  }
  if (query.length() != params.messages()) {
    throw TransportError("query frame: vector length must be K");
  }
  std::vector<std::uint8_t> frame;
  frame.reserve(1 + query.length());
  frame.push_back(static_cast<std::uint8_t>(FrameType::kQuery));
  for (std::uint32_t c : query.comps()) {
    if (c >= params.servers()) {
      throw TransportError("query frame: component outside [0, N-1]");
    }
    frame.push_back(static_cast<std::uint8_t>(c));
  }
  return frame;
}

std::vector<std::uint8_t> encode_answer_frame(const Params& params,
                                              const Answer& answer) {
  if (params.field_order() > 256) {
    throw TransportError("answer frame: one-byte symbols need q <= 256");
  }
  std::vector<std::uint8_t> frame;
  frame.push_back(static_cast<std::uint8_t>(FrameType::kAnswer));
  if (answer.is_null()) {
    frame.push_back(0);
  } else {
    frame.push_back(1);
    frame.push_back(static_cast<std::uint8_t>(answer.payload().value()));
  }
  return frame;
}

std::vector<std::uint8_t> encode_noquery_frame() {
  return {static_cast<std::uint8_t>(FrameType::kNoQuery)};
}

DecodedFrame decode_frame(const Params& params,
                          std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) {
    throw TransportError("frame: empty");
  }
  switch (bytes[0]) {
    case static_cast<std::uint8_t>(FrameType::kQuery): {
      if (bytes.size() != 1 + static_cast<std::size_t>(params.messages())) {
        throw TransportError("query frame: expected K component bytes");
      }
      std::vector<std::uint32_t> comps;
      comps.reserve(params.messages());
      for (std::size_t i = 1; i < bytes.size(); ++i) {
        if (bytes[i] >= params.servers()) {
          throw TransportError("query frame: component outside [0, N-1]");
        }
        comps.push_back(bytes[i]);
      }
      return DecodedFrame{FrameType::kQuery, QueryVector(std::move(comps)),
                          std::nullopt};
    }
    case static_cast<std::uint8_t>(FrameType::kAnswer): {
      if (bytes.size() < 2) {
        throw TransportError("answer frame: missing presence byte");
      }
      if (bytes[1] == 0) {
        if (bytes.size() != 2) {
          throw TransportError("answer frame: null answer carries no symbol");
        }
        return DecodedFrame{FrameType::kAnswer, std::nullopt, Answer::null()};
      }
      if (bytes[1] != 1 || bytes.size() != 3) {
        throw TransportError("answer frame: malformed presence/symbol");
      }
      if (bytes[2] >= params.field_order()) {
        throw TransportError("answer frame: symbol not reduced mod q");
      }
      return DecodedFrame{
          FrameType::kAnswer, std::nullopt,
          Answer::of(FieldElement(bytes[2], params.field_order()))};
    }
    case static_cast<std::uint8_t>(FrameType::kNoQuery): {
      if (bytes.size() != 1) {
        throw TransportError("no-query frame: unexpected payload");
      }
      return DecodedFrame{FrameType::kNoQuery, std::nullopt, std::nullopt};
    }
    default:
      throw TransportError("frame: unknown type byte " +
                           std::to_string(bytes[0]));
  }
}

ServerNode::ServerNode(unsigned id, const Params& params, MessageDB replica)
    : id_(id), params_(params), replica_(std::move(replica)) {}

std::optional<std::vector<std::uint8_t>> ServerNode::handle(
    std::span<const std::uint8_t> frame) {
  const DecodedFrame decoded = decode_frame(params_, frame);
  switch (decoded.type) {
    case FrameType::kQuery: {
      const Answer answer = scheme::server_answer(replica_, *decoded.query);
      ++stats_.queries_served;
      if (answer.is_null()) {
        ++stats_.null_answers;
      } else {
        ++stats_.symbols_sent;
      }
      return encode_answer_frame(params_, answer);
    }
    case FrameType::kNoQuery:
      return std::nullopt;
    case FrameType::kAnswer:
      break;
  }
  throw TransportError("server received a non-request frame");
}

bool ExperimentResult::within_3sigma() const {
  if (sessions == 0) return false;
  const Rat deviation = mean_download_symbols - analytic_expectation;
  const Rat bound =
      Rat(9) * session_variance / Rat(static_cast<long>(sessions));
  return deviation * deviation <= bound;
}

double ExperimentResult::z_score() const {
  const double sigma =
      std::sqrt(session_variance.to_double() / static_cast<double>(sessions));
  const double deviation =
      (mean_download_symbols - analytic_expectation).to_double();
  if (sigma == 0.0) {
    return deviation == 0.0 ? 0.0
                            : std::numeric_limits<double>::infinity();
  }
  return deviation / sigma;
}

Harness::Harness(const Params& params, std::uint64_t db_seed)
    : params_(params), db_(random_db(params, db_seed)) {
  for (unsigned id = 1; id <= params_.servers(); ++id) {
    servers_.emplace_back(id, params_, db_);
  }
}

ClientSession Harness::run_session(const DemandSideInfo& ds,
                                   std::uint64_t seed) {
  return run_session_inner(ds, seed, /*two_step=*/false);
}

ClientSession Harness::run_two_step_session(const DemandSideInfo& ds,
                                            std::uint64_t seed) {
  return run_session_inner(ds, seed, /*two_step=*/true);
}

ClientSession Harness::run_session_inner(const DemandSideInfo& ds,
                                         std::uint64_t seed, bool two_step) {
  Rng rng(seed);

  std::vector<unsigned> chosen;
  std::optional<QueryPlan> plan;
  if (two_step) {
    auto tsp = scheme::two_step_retrieve(params_, ds, rng);
    chosen = std::move(tsp.chosen_servers);
    plan.emplace(std::move(tsp.plan));
  } else {
    params_.require_full_subpacketization();
    chosen.resize(params_.servers());
    std::iota(chosen.begin(), chosen.end(), 1u);
    plan.emplace(scheme::generate_plan(params_, ds, rng));
  }

  const auto sent = scheme::queries_as_sent(*plan);
  std::vector<Answer> answers;
  answers.reserve(chosen.size());
  for (unsigned server = 1; server <= params_.servers(); ++server) {
    const auto position =
        std::find(chosen.begin(), chosen.end(), server) - chosen.begin();
    if (static_cast<std::size_t>(position) == chosen.size()) {
      auto response = servers_[server - 1].handle(encode_noquery_frame());
      if (response.has_value()) {
        throw TransportError("silent server answered a no-query marker");
      }
      continue;
    }
    const auto request =
        encode_query_frame(plan->params(), sent[position]);
    auto response = servers_[server - 1].handle(request);
    if (!response.has_value()) {
      throw TransportError("queried server stayed silent");
    }
    const DecodedFrame decoded = decode_frame(params_, *response);
    if (decoded.type != FrameType::kAnswer) {
      throw TransportError("expected an answer frame");
    }
    // Replica consistency: the wire answer must match ground truth.
    if (*decoded.answer != scheme::server_answer(db_, sent[position])) {
      throw RecoveryMismatch("server answer inconsistent with ground truth");
    }
    answers.push_back(*decoded.answer);
  }

  const auto recovered_elements = scheme::recover_demand(
      *plan, answers, SideInformation::from_db(ds, db_));
  std::vector<std::uint32_t> recovered;
  recovered.reserve(recovered_elements.size());
  for (const FieldElement& e : recovered_elements) {
    recovered.push_back(e.value());
  }
  if (recovered != db_.row(ds.demand())) {
    throw RecoveryMismatch("recovered row differs from the stored message");
  }

  return ClientSession{params_, ds, std::move(*plan),
                       make_transcript(sent, std::move(answers)),
                       std::move(recovered)};
}

DemandSideInfo Harness::draw_ds(Rng& rng) const {
  const unsigned demand =
      1 + static_cast<unsigned>(rng.below(params_.messages()));
  std::vector<unsigned> pool;
  for (unsigned i = 1; i <= params_.messages(); ++i) {
    if (i != demand) pool.push_back(i);
  }
  for (unsigned i = 0; i < params_.side_info_count(); ++i) {
    const auto j = i + static_cast<unsigned>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(params_.side_info_count());
  return DemandSideInfo(params_, demand, std::move(pool));
}

ExperimentResult Harness::run_experiment(
    DsPolicy policy, const std::optional<DemandSideInfo>& fixed,
    std::uint64_t sessions, std::uint64_t seed) {
  return run_experiment_inner(policy, fixed, sessions, seed,
                              /*two_step=*/false);
}

ExperimentResult Harness::run_two_step_experiment(
    DsPolicy policy, const std::optional<DemandSideInfo>& fixed,
    std::uint64_t sessions, std::uint64_t seed) {
  return run_experiment_inner(policy, fixed, sessions, seed,
                              /*two_step=*/true);
}

ExperimentResult Harness::run_experiment_inner(
    DsPolicy policy, const std::optional<DemandSideInfo>& fixed,
    std::uint64_t sessions, std::uint64_t seed, bool two_step) {
  if (sessions < 1) {
    throw RangeError("experiment: need at least one session");
  }
  if (policy == DsPolicy::kFixed && !fixed.has_value()) {
    throw RangeError("experiment: fixed policy needs a demand/side choice");
  }

  Rng seeder(seed);
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < sessions; ++s) {
    const std::uint64_t session_seed = seeder.next_u64();
    DemandSideInfo ds = policy == DsPolicy::kFixed ? *fixed : [&] {
      Rng ds_rng = seeder.split();
      return draw_ds(ds_rng);
    }();
    const ClientSession session = run_session_inner(ds, session_seed, two_step);
    total += session.transcript.downloaded_symbols;
  }

  const Params effective =
      two_step ? Params::validate(params_.subpackets() + 1, params_.messages(),
                                  params_.side_info_count(),
                                  params_.subpackets(), params_.field_order())
               : params_;
  const auto dist = analysis::compute_distribution(effective);
  const Rat p0 = dist.p[0];
  const long n_eff = static_cast<long>(effective.servers());
  const long l = static_cast<long>(params_.subpackets());

  ExperimentResult result;
  result.sessions = sessions;
  result.total_download_symbols = total;
  result.mean_download_symbols =
      Rat(mpz_class(total), mpz_class(sessions));
  result.analytic_expectation = Rat(n_eff) - p0;
  result.empirical_rate =
      Rat(mpz_class(l) * mpz_class(sessions), mpz_class(total));
  result.analytic_rate = analysis::rate_R(effective);
  result.session_variance = p0 * (Rat(1) - p0);
  result.seed = seed;
  return result;
}

std::string transcript_to_json(const Transcript& transcript) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < transcript.queries.size(); ++i) {
    nlohmann::json entry;
    entry["server"] = i + 1;
    entry["query"] = transcript.queries[i].comps();
    if (transcript.answers[i].is_null()) {
      entry["answer"] = nullptr;
    } else {
      entry["answer"] = transcript.answers[i].payload().value();
    }
    out.push_back(std::move(entry));
  }
  return out.dump();
}

}  // namespace pirsi::simnet
