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

#include "lion/harness.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "lion/error.h"
#include "lion/numeric.h"
#include "lion/protocol.h"
#include "lion/subprocess.h"

namespace lion {
namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds to_ms(double seconds) {
  return std::chrono::milliseconds(static_cast<long long>(std::ceil(seconds * 1000.0)));
}

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_') ? c : '_';
  }
  return out.empty() ? "run" : out;
}

void wait_for_handshake(Subprocess& child, double timeout_s) {
  std::string line;
  switch (child.read_line(line, to_ms(timeout_s))) {
    case Subprocess::ReadStatus::kTimeout:
      throw ProtocolError("transcriber did not complete the handshake within " +
                          format_fixed(timeout_s, 1) + " s");
    case Subprocess::ReadStatus::kEof:
      throw ProtocolError("transcriber exited before the handshake");
    case Subprocess::ReadStatus::kLine:
      protocol::check_handshake(line);
  }
}

struct Outcome {
  enum Kind { kResponse, kTimeout, kExited } kind;
  protocol::TranscribeResponse response;
};

// Reads until a response for `id` arrives, discarding late answers to
// requests that already timed out.
Outcome await_response(Subprocess& child, const std::string& id, std::set<std::string>& stale,
                       Clock::time_point deadline) {
  std::string line;
  for (;;) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() < 0) remaining = std::chrono::milliseconds(0);
    switch (child.read_line(line, remaining)) {
      case Subprocess::ReadStatus::kTimeout:
        return {Outcome::kTimeout, {}};
      case Subprocess::ReadStatus::kEof:
        return {Outcome::kExited, {}};
      case Subprocess::ReadStatus::kLine:
        break;
    }
    auto resp = protocol::decode_response(line);
    if (resp.id == id) return {Outcome::kResponse, std::move(resp)};
    if (stale.erase(resp.id)) continue;
    throw ProtocolError("response id '" + resp.id + "' does not match pending request '" + id + "'");
  }
}

void record(RunResult& run, protocol::TranscribeResponse&& resp, std::optional<double> latency) {
  if (resp.ok()) {
    if (latency) run.latencies.push_back({resp.id, *latency});
    run.hypotheses.push_back({std::move(resp.id), std::move(*resp.text)});
  } else {
    run.errors.push_back({std::move(resp.id), std::move(*resp.error)});
  }
}

void abort_run(RunResult& run, const std::string& reason, const std::string& pending_id) {
  run.aborted = true;
  run.abort_reason = reason;
  if (!pending_id.empty()) run.errors.push_back({pending_id, reason});
}

void run_sequential(Subprocess& child, std::span<const Utterance> utterances, RunResult& run) {
  const auto& cfg = run.config;
  std::set<std::string> stale;
  for (const auto& utt : utterances) {
    const std::string line = protocol::encode_request({utt.id, utt.audio_path});
    ++run.requests_issued;
    const auto start = Clock::now();
    if (!child.write_line(line)) {
      abort_run(run, "transcriber closed its input", utt.id);
      return;
    }
    Outcome out;
    try {
      out = await_response(child, utt.id, stale, start + to_ms(cfg.request_timeout_s));
    } catch (const ProtocolError& e) {
      abort_run(run, e.what(), utt.id);
      return;
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    switch (out.kind) {
      case Outcome::kResponse:
        record(run, std::move(out.response), elapsed);
        break;
      case Outcome::kTimeout:
        run.errors.push_back({utt.id, "timed out after " + format_fixed(cfg.request_timeout_s, 1) + " s"});
        stale.insert(utt.id);
        break;
      case Outcome::kExited:
        abort_run(run, "transcriber exited", utt.id);
        return;
    }
  }
}

void run_pipelined(Subprocess& child, std::span<const Utterance> utterances, RunResult& run) {
  std::atomic<bool> write_failed{false};
  std::thread writer([&] {
    for (const auto& utt : utterances) {
      if (!child.write_line(protocol::encode_request({utt.id, utt.audio_path}))) {
        write_failed = true;
        return;
      }
    }
  });
  std::set<std::string> stale;
  for (const auto& utt : utterances) {
    ++run.requests_issued;
    Outcome out;
    try {
      out = await_response(child, utt.id, stale, Clock::now() + to_ms(run.config.request_timeout_s));
    } catch (const ProtocolError& e) {
      abort_run(run, e.what(), utt.id);
      break;
    }
    if (out.kind == Outcome::kResponse) {
      record(run, std::move(out.response), std::nullopt);
    } else if (out.kind == Outcome::kTimeout) {
      run.errors.push_back({utt.id, "timed out"});
      stale.insert(utt.id);
    } else {
      abort_run(run, write_failed ? "transcriber closed its input" : "transcriber exited", utt.id);
      break;
    }
  }
  child.close_stdin();
  writer.join();
}

}  // namespace

void to_json(nlohmann::json& j, const HarnessConfig& c) {
  j = nlohmann::json{{"command", c.command},
                     {"model_label", c.model_label},
                     {"benchmark", c.benchmark},
                     {"warmup", c.warmup},
                     {"start_timeout_s", c.start_timeout_s},
                     {"request_timeout_s", c.request_timeout_s},
                     {"pipelined", c.pipelined}};
}

void from_json(const nlohmann::json& j, HarnessConfig& c) {
  c = HarnessConfig{};
  c.command = j.value("command", std::string());
  c.model_label = j.value("model_label", std::string());
  c.benchmark = j.value("benchmark", std::string());
  c.warmup = j.value("warmup", std::size_t{3});
  c.start_timeout_s = j.value("start_timeout_s", 30.0);
  c.request_timeout_s = j.value("request_timeout_s", 120.0);
  c.pipelined = j.value("pipelined", false);
}

LatencyStats latency_stats(std::span<const double> latencies, std::size_t warmup) {
  if (latencies.size() <= warmup) {
    throw PreconditionError("need more than " + std::to_string(warmup) + " latency samples, got " +
                            std::to_string(latencies.size()));
  }
  auto kept = latencies.subspan(warmup);
  LatencyStats s;
  s.n = kept.size();
  s.warmup_excluded = warmup;
  double sum = 0.0;
  for (double v : kept) sum += v;
  s.mean_s = sum / static_cast<double>(s.n);
  double sq = 0.0;
  for (double v : kept) sq += (v - s.mean_s) * (v - s.mean_s);
  s.std_s = std::sqrt(sq / static_cast<double>(s.n));
  return s;
}

std::map<std::string, std::string> RunResult::hypothesis_map() const {
  std::map<std::string, std::string> out;
  for (const auto& h : hypotheses) out.emplace(h.id, h.text);
  return out;
}

nlohmann::ordered_json to_json(const RunResult& run) {
  nlohmann::ordered_json j;
  j["model_label"] = run.model_label;
  j["benchmark"] = run.benchmark;
  j["started_at"] = run.started_at;
  j["finished_at"] = run.finished_at;
  j["aborted"] = run.aborted;
  if (run.aborted) j["abort_reason"] = run.abort_reason;
  j["requests_issued"] = run.requests_issued;
  auto& hyps = j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : run.hypotheses) hyps.push_back({{"id", h.id}, {"text", h.text}});
  auto& errs = j["errors"] = nlohmann::ordered_json::array();
  for (const auto& e : run.errors) errs.push_back({{"id", e.id}, {"error", e.error}});
  auto& lats = j["latencies"] = nlohmann::ordered_json::array();
  for (const auto& l : run.latencies) lats.push_back({{"id", l.id}, {"seconds", l.seconds}});
  if (run.stats) {
    j["stats"] = {{"n", run.stats->n},
                  {"mean_s", run.stats->mean_s},
                  {"std_s", run.stats->std_s},
                  {"warmup_excluded", run.stats->warmup_excluded}};
  } else {
    j["stats"] = nullptr;
  }
  j["config"] = nlohmann::json(run.config);
  return j;
}

RunResult run_from_json(const nlohmann::json& j) {
  RunResult run;
  try {
    run.model_label = j.at("model_label").get<std::string>();
    run.benchmark = j.value("benchmark", std::string());
    run.started_at = j.value("started_at", std::string());
    run.finished_at = j.value("finished_at", std::string());
    run.aborted = j.value("aborted", false);
    run.abort_reason = j.value("abort_reason", std::string());
    for (const auto& h : j.value("hypotheses", nlohmann::json::array())) {
      run.hypotheses.push_back({h.at("id").get<std::string>(), h.at("text").get<std::string>()});
    }
    for (const auto& e : j.value("errors", nlohmann::json::array())) {
      run.errors.push_back({e.at("id").get<std::string>(), e.at("error").get<std::string>()});
    }
    for (const auto& l : j.value("latencies", nlohmann::json::array())) {
      run.latencies.push_back({l.at("id").get<std::string>(), l.at("seconds").get<double>()});
    }
    run.requests_issued =
        j.value("requests_issued", run.hypotheses.size() + run.errors.size());
    if (auto it = j.find("stats"); it != j.end() && !it->is_null()) {
      run.stats = LatencyStats{it->at("n").get<std::size_t>(), it->at("mean_s").get<double>(),
                               it->at("std_s").get<double>(),
                               it->value("warmup_excluded", std::size_t{0})};
    }
    if (auto it = j.find("config"); it != j.end()) run.config = it->get<HarnessConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("run", 0, e.what());
  }
  return run;
}

std::filesystem::path save_run(const RunResult& run, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto final_path = dir / (sanitize(run.model_label) + "__" + sanitize(run.benchmark) + ".json");
  auto tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << to_json(run).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
  return final_path;
}

RunResult load_run(const std::filesystem::path& path) {
  auto runs = load_runs(path);
  if (runs.size() != 1) throw ParseError(path.string(), 0, "expected exactly one run");
  return std::move(runs.front());
}

std::vector<RunResult> load_runs(const std::filesystem::path& path) {
  std::vector<RunResult> out;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto more = load_runs(f);
      std::move(more.begin(), more.end(), std::back_inserter(out));
    }
    return out;
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  try {
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(run_from_json(item));
    } else {
      out.push_back(run_from_json(j));
    }
  } catch (const ParseError& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  return out;
}

RunResult run_benchmark(std::span<const Utterance> utterances, const HarnessConfig& config) {
  RunResult run;
  run.model_label = config.model_label;
  run.benchmark = config.benchmark;
  run.config = config;
  run.started_at = utc_now();

  Subprocess child(config.command);
  wait_for_handshake(child, config.start_timeout_s);
  if (config.pipelined) {
    run_pipelined(child, utterances, run);
  } else {
    run_sequential(child, utterances, run);
  }
  child.terminate();
  run.finished_at = utc_now();

  if (!config.pipelined && run.latencies.size() > config.warmup) {
    std::vector<double> seconds;
    seconds.reserve(run.latencies.size());
    for (const auto& l : run.latencies) seconds.push_back(l.seconds);
    run.stats = latency_stats(seconds, config.warmup);
  }
  return run;
}

RunReport emit_run_report(std::span<const RunResult> runs) {
  std::vector<const RunResult*> rows;
  for (const auto& r : runs) {
    if (r.stats) rows.push_back(&r);
  }
  if (rows.empty()) throw PreconditionError("no run with latency statistics to report");
  std::stable_sort(rows.begin(), rows.end(), [](const RunResult* a, const RunResult* b) {
    if (a->stats->mean_s != b->stats->mean_s) return a->stats->mean_s > b->stats->mean_s;
    return a->model_label < b->model_label;
  });

  std::ostringstream md;
  std::ostringstream csv;
  md << "| Model | Time (s/sample) |\n|---|:-:|\n";
  csv << "model,benchmark,n,mean_s,std_s\n";
  for (const auto* r : rows) {
    md << "| " << r->model_label << " | " << format_fixed(r->stats->mean_s, 4) << " ± "
       << format_fixed(r->stats->std_s, 4) << " |\n";
    csv << r->model_label << ',' << r->benchmark << ',' << r->stats->n << ','
        << format_fixed(r->stats->mean_s, 4) << ',' << format_fixed(r->stats->std_s, 4) << '\n';
  }
  return {md.str(), csv.str()};
}

void write_run_report(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, body] : {std::pair{"report.md", &report.markdown},
                                   std::pair{"report.csv", &report.csv}}) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    out << *body;
  }
}

bool ConformanceReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ConformanceReport run_conformance(const std::string& command, const ConformanceOptions& options) {
  ConformanceReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  Subprocess child(command);
  try {
    wait_for_handshake(child, options.timeout_s);
    add("handshake", true, std::string(protocol::kName) + " v" + std::to_string(protocol::kVersion));
  } catch (const ProtocolError& e) {
    add("handshake", false, e.what());
    return report;
  }

  const std::size_t inject_at = options.requests / 2;
  std::size_t answered = 0;
  std::size_t echo_mismatches = 0;
  std::size_t schema_violations = 0;
  std::string order_failure;
  std::string isolation_detail = "malformed line not sent";
  bool isolation_ok = false;

  for (std::size_t i = 0; i < options.requests && order_failure.empty(); ++i) {
    if (i == inject_at) {
      child.write_line("not json");
      std::string line;
      auto status = child.read_line(line, to_ms(options.timeout_s));
      if (status != Subprocess::ReadStatus::kLine) {
        isolation_detail = "no response to malformed line";
        order_failure = "transcriber stopped after malformed line";
        break;
      }
      try {
        auto resp = protocol::decode_response(line);
        isolation_ok = resp.error.has_value();
        isolation_detail = isolation_ok ? "error response, loop continued" : "malformed line got text";
      } catch (const ProtocolError& e) {
        isolation_detail = e.what();
      }
    }

    char id[32];
    std::snprintf(id, sizeof(id), "conf-%05zu", i);
    char path[64];
    std::snprintf(path, sizeof(path), "/conformance/utt_%05zu.wav", i);
    std::string encoded = protocol::encode_request({id, path});
    try {
      protocol::check_request_schema(nlohmann::json::parse(encoded));
    } catch (const ProtocolError&) {
      ++schema_violations;
    }
    if (!child.write_line(encoded)) {
      order_failure = "write failed at request " + std::to_string(i);
      break;
    }
    std::string line;
    if (child.read_line(line, to_ms(options.timeout_s)) != Subprocess::ReadStatus::kLine) {
      order_failure = "no response to request " + std::to_string(i);
      break;
    }
    try {
      auto resp = protocol::decode_response(line);
      if (resp.id != id) {
        order_failure = "expected id " + std::string(id) + ", got " + resp.id;
        break;
      }
      ++answered;
      if (options.expect_echo && (!resp.text || *resp.text != file_stem(path))) ++echo_mismatches;
    } catch (const ProtocolError& e) {
      order_failure = e.what();
    }
  }

  add("order_preservation", order_failure.empty() && answered == options.requests,
      order_failure.empty() ? std::to_string(answered) + "/" + std::to_string(options.requests) +
                                  " responses in request order"
                            : order_failure);
  if (options.requests > 0) add("error_isolation", isolation_ok && order_failure.empty(), isolation_detail);
  add("no_language_fields", schema_violations == 0,
      std::to_string(schema_violations) + " outgoing requests violated the schema");
  if (options.expect_echo) {
    add("echo_text", echo_mismatches == 0 && answered == options.requests,
        std::to_string(echo_mismatches) + " echo mismatches");
  }
  child.terminate();
  return report;
}

}  // namespace lion
