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

// Reference transcriber for tests and harness calibration. Speaks the
// lion-transcribe protocol on stdin/stdout and never loads a model.
//
//   echo   text = audio file stem
//   sleep  echo after sleeping --sleep-ms per request

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lion/protocol.h"

namespace {

struct Options {
  std::string mode = "echo";
  int sleep_ms = 50;
  std::vector<std::string> fail_ids;
  int crash_after = -1;
  int hang_on = -1;
  int startup_delay_ms = 0;
  bool no_handshake = false;
};

void emit(const lion::protocol::TranscribeResponse& resp) {
  std::cout << lion::protocol::encode_response(resp) << '\n' << std::flush;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Mock transcriber speaking the lion-transcribe protocol", "lion-mock-transcriber"};
  app.add_option("--mode", opt.mode, "echo or sleep")
      ->check(CLI::IsMember({"echo", "sleep"}))
      ->capture_default_str();
  app.add_option("--sleep-ms", opt.sleep_ms, "Per-request delay in sleep mode")->capture_default_str();
  app.add_option("--fail-id", opt.fail_ids, "Answer these ids with an error");
  app.add_option("--crash-after", opt.crash_after, "Exit after answering this many requests");
  app.add_option("--hang-on", opt.hang_on, "Never answer the request with this 0-based index");
  app.add_option("--startup-delay-ms", opt.startup_delay_ms, "Delay before the handshake");
  app.add_flag("--no-handshake", opt.no_handshake, "Skip the handshake line");
  CLI11_PARSE(app, argc, argv);

  const std::set<std::string> fail_ids(opt.fail_ids.begin(), opt.fail_ids.end());
  std::ios::sync_with_stdio(false);
  if (opt.startup_delay_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(opt.startup_delay_ms));
  }
  if (!opt.no_handshake) std::cout << lion::protocol::handshake_line() << '\n' << std::flush;

  std::string line;
  int index = 0;
  int answered = 0;
  int malformed = 0;
  while (std::getline(std::cin, line)) {
    nlohmann::json req;
    try {
      req = nlohmann::json::parse(line);
      lion::protocol::check_request_schema(req);
    } catch (const std::exception& e) {
      emit({"malformed-" + std::to_string(malformed++), std::nullopt, std::string(e.what())});
      continue;
    }
    const auto id = req["id"].get<std::string>();
    const auto path = req["audio_path"].get<std::string>();
    if (index++ == opt.hang_on) continue;
    if (opt.mode == "sleep") std::this_thread::sleep_for(std::chrono::milliseconds(opt.sleep_ms));
    if (fail_ids.count(id)) {
      emit({id, std::nullopt, "forced failure"});
    } else {
      emit({id, std::filesystem::path(path).stem().string(), std::nullopt});
    }
    if (++answered == opt.crash_after) return 3;
  }
  return 0;
}
