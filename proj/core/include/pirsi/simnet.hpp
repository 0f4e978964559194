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

#include <atomic>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pirsi/message_db.hpp"
#include "pirsi/params.hpp"
#include "pirsi/plan.hpp"
#include "pirsi/query.hpp"
#include "pirsi/rat.hpp"
#include "pirsi/scheme.hpp"

// Simulated deployment: client and N server replicas exchanging serialized
// frames over an in-memory ordered reliable channel, with transcript
// capture, symbol accounting and seeded Monte-Carlo experiments.
namespace pirsi::simnet {

// Frame layout: one type byte, then the payload.
//   QUERY   = 1: K component bytes (requires N <= 256)
//   ANSWER  = 2: presence byte (0|1), then one symbol byte when present
//                (requires q <= 256)
//   NOQUERY = 3: empty payload; the server stays silent
enum class FrameType : std::uint8_t { kQuery = 1, kAnswer = 2, kNoQuery = 3 };

std::vector<std::uint8_t> encode_query_frame(const Params& params,
                                             const QueryVector& query);
std::vector<std::uint8_t> encode_answer_frame(const Params& params,
                                              const Answer& answer);
std::vector<std::uint8_t> encode_noquery_frame();

struct DecodedFrame {
  FrameType type;
  std::optional<QueryVector> query;  // set for kQuery
  std::optional<Answer> answer;      // set for kAnswer
};

// Throws TransportError on any malformed frame.
DecodedFrame decode_frame(const Params& params,
                          std::span<const std::uint8_t> bytes);

// Counters accumulate atomically so sessions may run concurrently against
// one fleet (each with its own generator stream).
struct ServerStats {
  std::atomic<std::uint64_t> queries_served{0};
  std::atomic<std::uint64_t> null_answers{0};
  std::atomic<std::uint64_t> symbols_sent{0};
};

// One replica. Stateless across sessions apart from its counters; the
// answer is a deterministic function of the stored copy and the query.
class ServerNode {
 public:
  ServerNode(unsigned id, const Params& params, MessageDB replica);

  // Consumes one request frame; returns the response frame, or nothing for
  // a no-query marker.
  std::optional<std::vector<std::uint8_t>> handle(
      std::span<const std::uint8_t> frame);

  unsigned id() const { return id_; }
  const ServerStats& stats() const { return stats_; }
  const MessageDB& replica() const { return replica_; }

 private:
  unsigned id_;
  Params params_;
  MessageDB replica_;
  ServerStats stats_;
};

struct ClientSession {
  Params params;
  DemandSideInfo ds;
  QueryPlan plan;
  Transcript transcript;
  std::vector<std::uint32_t> recovered;  // L symbols, equals db row W
};

enum class DsPolicy { kFixed, kUniformRandom };

struct ExperimentResult {
  std::uint64_t sessions = 0;
  std::uint64_t total_download_symbols = 0;
  Rat mean_download_symbols;
  Rat analytic_expectation;    // N - P_0 of the scheme actually run
  Rat empirical_rate;          // L * sessions / total downloaded
  Rat analytic_rate;
  Rat session_variance;        // P_0 (1 - P_0): variance of the null event
  std::uint64_t seed = 0;

  // Exact check: (mean - expectation)^2 <= 9 * variance / sessions.
  bool within_3sigma() const;
  double z_score() const;  // display only
};

// Ground truth and the server fleet live here, mirroring the trust
// boundary: the client never sees the full database, and recovery is
// validated by the harness.
class Harness {
 public:
  Harness(const Params& params, std::uint64_t db_seed);

  const Params& params() const { return params_; }
  const MessageDB& db() const { return db_; }
  const std::deque<ServerNode>& servers() const { return servers_; }

  // One full query -> answer -> recover round trip through the wire
  // formats. Throws RecoveryMismatch if the recovered row differs from the
  // stored one (always a bug).
  ClientSession run_session(const DemandSideInfo& ds, std::uint64_t seed);

  // Two-step variant for L < N-1: the first L+1 servers run the inner
  // scheme, the rest receive no-query markers.
  ClientSession run_two_step_session(const DemandSideInfo& ds,
                                     std::uint64_t seed);

  ExperimentResult run_experiment(DsPolicy policy,
                                  const std::optional<DemandSideInfo>& fixed,
                                  std::uint64_t sessions, std::uint64_t seed);
  ExperimentResult run_two_step_experiment(
      DsPolicy policy, const std::optional<DemandSideInfo>& fixed,
      std::uint64_t sessions, std::uint64_t seed);

 private:
  ClientSession run_session_inner(const DemandSideInfo& ds,
                                  std::uint64_t seed, bool two_step);
  ExperimentResult run_experiment_inner(
      DsPolicy policy, const std::optional<DemandSideInfo>& fixed,
      std::uint64_t sessions, std::uint64_t seed, bool two_step);
  DemandSideInfo draw_ds(Rng& rng) const;

  Params params_;
  MessageDB db_;
  std::deque<ServerNode> servers_;
};

// JSON array of {server, query:[...], answer:null|int}, in as-sent order.
std::string transcript_to_json(const Transcript& transcript);

}  // namespace pirsi::simnet
