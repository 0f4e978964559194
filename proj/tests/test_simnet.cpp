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

#include <doctest.h>

#include <future>
#include <thread>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"

using namespace pirsi;
using namespace pirsi::simnet;

TEST_CASE("frame round trips") {
  const Params p = validate_params(3, 3, 1, 2, 5);

  const QueryVector q({0, 2, 1});
  const auto query_frame = encode_query_frame(p, q);
  CHECK(query_frame == std::vector<std::uint8_t>{1, 0, 2, 1});
  const DecodedFrame decoded_query = decode_frame(p, query_frame);
  CHECK(decoded_query.type == FrameType::kQuery);
  CHECK(*decoded_query.query == q);

  const Answer value = Answer::of(FieldElement(4, 5));
  const auto answer_frame = encode_answer_frame(p, value);
  CHECK(answer_frame == std::vector<std::uint8_t>{2, 1, 4});
  CHECK(*decode_frame(p, answer_frame).answer == value);

  const auto null_frame = encode_answer_frame(p, Answer::null());
  CHECK(null_frame == std::vector<std::uint8_t>{2, 0});
  CHECK(decode_frame(p, null_frame).answer->is_null());

  CHECK(decode_frame(p, encode_noquery_frame()).type == FrameType::kNoQuery);
}

TEST_CASE("malformed frames are rejected") {
  const Params p = validate_params(3, 3, 1, 2, 5);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{9}),
                  TransportError);
  // Query too short / component out of range.
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{1, 0, 1}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{1, 0, 1, 3}),
                  TransportError);
  // Answer: bad presence byte, trailing bytes, unreduced symbol.
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{2}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{2, 2, 1}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{2, 0, 1}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{2, 1, 5}),
                  TransportError);
  CHECK_THROWS_AS(decode_frame(p, std::vector<std::uint8_t>{3, 0}),
                  TransportError);
}

TEST_CASE("session round trip recovers the demand") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  Harness harness(p, 77u);
  const DemandSideInfo ds(p, 1, {2});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ClientSession session = harness.run_session(ds, seed);
    CHECK(session.recovered == harness.db().row(1));
    const unsigned downloads = session.transcript.downloaded_symbols;
    CHECK(downloads >= 2);
    CHECK(downloads <= 3);
    CHECK(session.transcript.queries.size() == 3);
    CHECK(session.transcript.answers.size() == 3);
  }
}

TEST_CASE("identical seeds give identical transcripts") {
  const Params p = validate_params(3, 4, 1, 2, 3);
  Harness a(p, 5u), b(p, 5u);
  const DemandSideInfo ds(p, 2, {4});
  const ClientSession sa = a.run_session(ds, 123u);
  const ClientSession sb = b.run_session(ds, 123u);
  CHECK(sa.transcript == sb.transcript);
  CHECK(transcript_to_json(sa.transcript) == transcript_to_json(sb.transcript));
  const ClientSession sc = a.run_session(ds, 124u);
  CHECK(sa.transcript != sc.transcript);
}

TEST_CASE("server statistics and replay determinism") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  Harness harness(p, 1u);
  const DemandSideInfo ds(p, 3, {1});
  const ClientSession session = harness.run_session(ds, 9u);

  std::uint64_t served = 0, symbols = 0, nulls = 0;
  for (const ServerNode& server : harness.servers()) {
    served += server.stats().queries_served;
    symbols += server.stats().symbols_sent;
    nulls += server.stats().null_answers;
  }
  CHECK(served == 3);
  CHECK(symbols == session.transcript.downloaded_symbols);
  CHECK(nulls == 3 - session.transcript.downloaded_symbols);

  // Replaying the transcript's queries yields the same answers.
  for (unsigned i = 0; i < 3; ++i) {
    CHECK(scheme::server_answer(harness.db(), session.transcript.queries[i]) ==
          session.transcript.answers[i]);
  }
}

TEST_CASE("experiment mean download stays within three sigma") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  Harness harness(p, 11u);
  const DemandSideInfo ds(p, 1, {2});
  const ExperimentResult result = harness.run_experiment(
      DsPolicy::kFixed, ds, 100000, 7u);
  CHECK(result.analytic_expectation == Rat(5, 2));
  CHECK(result.analytic_rate == Rat(4, 5));
  CHECK(result.session_variance == Rat(1, 4));
  CHECK(result.within_3sigma());
  CHECK(std::abs(result.z_score()) <= 3.0);
}

TEST_CASE("experiment with a single session") {
  const Params p = validate_params(3, 3, 1, 2, 2);
  Harness harness(p, 2u);
  const DemandSideInfo ds(p, 1, {2});
  const ExperimentResult result =
      harness.run_experiment(DsPolicy::kFixed, ds, 1, 3u);
  const bool two = result.mean_download_symbols == Rat(2);
  const bool three = result.mean_download_symbols == Rat(3);
  CHECK((two || three));
  CHECK((result.empirical_rate == Rat(1) || result.empirical_rate == Rat(2, 3)));
}

TEST_CASE("experiment under uniform demand policy") {
  const Params p = validate_params(3, 4, 2, 2, 2);
  Harness harness(p, 21u);
  const ExperimentResult result =
      harness.run_experiment(DsPolicy::kUniformRandom, std::nullopt, 2000, 5u);
  CHECK(result.sessions == 2000);
  CHECK(result.within_3sigma());
  CHECK_THROWS_AS(
      harness.run_experiment(DsPolicy::kFixed, std::nullopt, 10, 1u),
      RangeError);
  CHECK_THROWS_AS(
      harness.run_experiment(DsPolicy::kUniformRandom, std::nullopt, 0, 1u),
      RangeError);
}

TEST_CASE("M = K-1 downloads exactly N-1 in every session") {
  const Params p = validate_params(3, 2, 1, 2, 2);
  Harness harness(p, 4u);
  const DemandSideInfo ds(p, 1, {2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ClientSession session = harness.run_session(ds, seed);
    CHECK(session.transcript.downloaded_symbols == 2);
  }
  const ExperimentResult result =
      harness.run_experiment(DsPolicy::kFixed, ds, 500, 0u);
  CHECK(result.mean_download_symbols == Rat(2));
  CHECK(result.session_variance == Rat(0));
  CHECK(result.z_score() == 0.0);
}

TEST_CASE("two step sessions leave unchosen servers untouched") {
  const Params p = validate_params(4, 3, 1, 2, 2);
  Harness harness(p, 31u);
  const DemandSideInfo ds(p, 1, {3});
  const ClientSession session = harness.run_two_step_session(ds, 1u);
  CHECK(session.recovered == harness.db().row(1));
  CHECK(session.transcript.queries.size() == 3);
  CHECK(harness.servers()[3].stats().queries_served == 0);
  CHECK(harness.servers()[0].stats().queries_served == 1);

  const ExperimentResult result =
      harness.run_two_step_experiment(DsPolicy::kFixed, ds, 20000, 13u);
  CHECK(result.analytic_rate == Rat(4, 5));
  CHECK(result.analytic_rate == analysis::rate_RL(p));
  CHECK(result.within_3sigma());
  CHECK(harness.servers()[3].stats().queries_served == 0);
}

TEST_CASE("two step inner scheme with M = K-1 achieves rate one") {
  const Params p = validate_params(3, 2, 1, 1, 2);
  Harness harness(p, 6u);
  const DemandSideInfo ds(p, 2, {1});
  const ExperimentResult result =
      harness.run_two_step_experiment(DsPolicy::kFixed, ds, 200, 2u);
  CHECK(result.analytic_rate == Rat(1));
  CHECK(result.empirical_rate == Rat(1));
  CHECK(result.mean_download_symbols == Rat(1));
}

TEST_CASE("transcript json dump") {
  const Params p = validate_params(2, 2, 1, 1, 2);
  Harness harness(p, 3u);
  const DemandSideInfo ds(p, 1, {2});
  const ClientSession session = harness.run_session(ds, 0u);
  const std::string json = transcript_to_json(session.transcript);
  // One entry per server: {"answer":..,"query":[..],"server":n}
  CHECK(json.find("\"server\":1") != std::string::npos);
  CHECK(json.find("\"server\":2") != std::string::npos);
  CHECK(json.find("\"query\":[") != std::string::npos);
  const bool has_null = json.find("\"answer\":null") != std::string::npos;
  const unsigned downloads = session.transcript.downloaded_symbols;
  CHECK(has_null == (downloads == 1));
}

TEST_CASE("mean download converges across many seeded experiments") {
  // 100 independent experiments of 1e5 sessions each; fewer than 1% may
  // land outside the exact three-sigma band.
  const Params p = validate_params(3, 3, 1, 2, 2);
  const DemandSideInfo ds(p, 1, {2});
  const unsigned experiments = 100;
  const unsigned workers =
      std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::future<unsigned>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      unsigned misses = 0;
      for (unsigned e = w; e < experiments; e += workers) {
        Harness harness(p, 1000u + e);
        const ExperimentResult result = harness.run_experiment(
            DsPolicy::kFixed, ds, 100000, 5000u + e);
        if (!result.within_3sigma()) ++misses;
      }
      return misses;
    }));
  }
  unsigned misses = 0;
  for (auto& f : futures) misses += f.get();
  CHECK(misses * 100 < experiments);
}
