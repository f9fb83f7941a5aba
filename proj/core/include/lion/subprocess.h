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

#include <sys/types.h>

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace lion {

// A child started with `/bin/sh -c command`, stdin and stdout piped, stderr
// inherited. Killed and reaped on destruction. Spawning ignores SIGPIPE for
// the whole process so a dead child surfaces as a failed write.
class Subprocess {
 public:
  enum class ReadStatus { kLine, kTimeout, kEof };

  explicit Subprocess(const std::string& command);
  ~Subprocess();

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  // Writes `line` plus '\n'. False when the child closed its stdin.
  bool write_line(std::string_view line);
  // Reads one '\n'-terminated line (terminator stripped).
  ReadStatus read_line(std::string& line, std::chrono::milliseconds timeout);

  void close_stdin();
  // Waits up to `grace` for exit, then SIGKILLs. Returns the wait status.
  int terminate(std::chrono::milliseconds grace = std::chrono::milliseconds(2000));
  // Non-blocking; set once the child has been reaped.
  std::optional<int> exit_status();
  pid_t pid() const { return pid_; }

 private:
  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string buffer_;
  std::optional<int> status_;
};

}  // namespace lion
