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

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace lion::protocol {

inline constexpr std::string_view kName = "lion-transcribe";
inline constexpr int kVersion = 1;

// Deliberately has no language, locale, or tag field: the transcriber must
// infer the language from audio alone.
struct TranscribeRequest {
  std::string id;
  std::string audio_path;
};

struct TranscribeResponse {
  std::string id;
  std::optional<std::string> text;
  std::optional<std::string> error;

  bool ok() const { return text.has_value(); }
};

// The only keys a request may carry on the wire.
bool is_allowed_request_key(std::string_view key);

// Serializes without a trailing newline. Every encoded request passes
// check_request_schema; a violation throws ProtocolError.
std::string encode_request(const TranscribeRequest& req);
void check_request_schema(const nlohmann::json& message);

std::string encode_response(const TranscribeResponse& resp);
// Throws ProtocolError on malformed JSON, missing id, or when not exactly
// one of text/error is present.
TranscribeResponse decode_response(std::string_view line);

std::string handshake_line();
// Throws ProtocolError unless `line` is the expected handshake.
void check_handshake(std::string_view line);

}  // namespace lion::protocol
