// Copyright 2026 The Lion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lion/corpus.h"

namespace lion {

struct HarnessConfig {
  std::string command;  // run through /bin/sh -c
  std::string model_label;
  std::string benchmark;
  std::size_t warmup = 3;
  double start_timeout_s = 30.0;
  double request_timeout_s = 120.0;
  // Writer and reader run concurrently; latencies are not recorded.
  bool pipelined = false;
};

void to_json(nlohmann::json& j, const HarnessConfig& c);
void from_json(const nlohmann::json& j, HarnessConfig& c);

struct LatencyStats {
  std::size_t n = 0;
  double mean_s = 0.0;
  double std_s = 0.0;  // population form (divisor n)
  std::size_t warmup_excluded = 0;
};

// Mean and population standard deviation after dropping the first `warmup`
// samples. Throws PreconditionError unless latencies.size() > warmup.
LatencyStats latency_stats(std::span<const double> latencies, std::size_t warmup);

struct Hypothesis {
  std::string id;
  std::string text;
};
struct RequestError {
  std::string id;
  std::string error;
};
struct Latency {
  std::string id;
  double seconds;
};

struct RunResult {
  std::string model_label;
  std::string benchmark;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;
  bool aborted = false;
  std::string abort_reason;
  std::size_t requests_issued = 0;
  std::vector<Hypothesis> hypotheses;  // request order
  std::vector<RequestError> errors;    // request order
  std::vector<Latency> latencies;      // successful responses, request order
  std::optional<LatencyStats> stats;
  HarnessConfig config;

  std::map<std::string, std::string> hypothesis_map() const;
};

nlohmann::ordered_json to_json(const RunResult& run);
RunResult run_from_json(const nlohmann::json& j);

// Writes <dir>/<model>__<benchmark>.json through a temporary file and
// rename. Returns the final path.
std::filesystem::path save_run(const RunResult& run, const std::filesystem::path& dir);
RunResult load_run(const std::filesystem::path& path);
// A run file, a JSON array of runs, or a directory of *.json run files.
std::vector<RunResult> load_runs(const std::filesystem::path& path);

// Sends every utterance once, in order, with no language information, and
// times each request from write to response read. Per-request timeouts are
// recorded as errors and the run continues; a child exit aborts the run and
// the partial result is returned with `aborted` set. Throws ProtocolError if
// the handshake does not arrive within start_timeout_s.
RunResult run_benchmark(std::span<const Utterance> utterances, const HarnessConfig& config);

struct RunReport {
  std::string markdown;
  std::string csv;
};

// Runs with stats, sorted by mean descending then model label, formatted
// "mean ± std" at 4 decimals. Throws PreconditionError if no run has stats.
RunReport emit_run_report(std::span<const RunResult> runs);
void write_run_report(const RunReport& report, const std::filesystem::path& dir);

struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConformanceReport {
  std::vector<ConformanceCheck> checks;
  bool passed() const;
};

struct ConformanceOptions {
  std::size_t requests = 100;
  double timeout_s = 10.0;
  // Also require text == audio file stem (echo transcribers).
  bool expect_echo = true;
};

// Replays `requests` requests against a transcriber: handshake, ordered
// one-to-one responses, recovery after an injected malformed line, and no
// language fields in anything the harness sent.
ConformanceReport run_conformance(const std::string& command, const ConformanceOptions& options);

}  // namespace lion
