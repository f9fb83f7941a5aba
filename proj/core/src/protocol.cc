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

#include "lion/protocol.h"

#include "lion/error.h"

namespace lion::protocol {

bool is_allowed_request_key(std::string_view key) { return key == "id" || key == "audio_path"; }

void check_request_schema(const nlohmann::json& message) {
  if (!message.is_object()) throw ProtocolError("request must be a JSON object");
  for (auto it = message.begin(); it != message.end(); ++it) {
    if (!is_allowed_request_key(it.key())) {
      throw ProtocolError("request carries forbidden field '" + it.key() + "'");
    }
  }
  if (!message.contains("id") || !message["id"].is_string() || !message.contains("audio_path") ||
      !message["audio_path"].is_string()) {
    throw ProtocolError("request needs string fields id and audio_path");
  }
}

std::string encode_request(const TranscribeRequest& req) {
  nlohmann::ordered_json j;
  j["id"] = req.id;
  j["audio_path"] = req.audio_path;
  check_request_schema(nlohmann::json(j));
  return j.dump();
}

std::string encode_response(const TranscribeResponse& resp) {
  nlohmann::ordered_json j;
  j["id"] = resp.id;
  if (resp.text) j["text"] = *resp.text;
  if (resp.error) j["error"] = *resp.error;
  return j.dump();
}

TranscribeResponse decode_response(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError(std::string("malformed response: ") + e.what());
  }
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    throw ProtocolError("response needs a string id");
  }
  TranscribeResponse resp;
  resp.id = j["id"].get<std::string>();
  const bool has_text = j.contains("text");
  const bool has_error = j.contains("error");
  if (has_text == has_error) {
    throw ProtocolError("response for '" + resp.id + "' must carry exactly one of text/error");
  }
  const auto& payload = has_text ? j["text"] : j["error"];
  if (!payload.is_string()) throw ProtocolError("response payload must be a string");
  (has_text ? resp.text : resp.error) = payload.get<std::string>();
  return resp;
}

std::string handshake_line() {
  nlohmann::ordered_json j;
  j["protocol"] = kName;
  j["version"] = kVersion;
  return j.dump();
}

void check_handshake(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("handshake is not JSON: " + std::string(line.substr(0, 80)));
  }
  if (!j.is_object() || j.value("protocol", std::string()) != kName ||
      !j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kVersion) {
    throw ProtocolError("unexpected handshake: " + std::string(line.substr(0, 80)));
  }
}

}  // namespace lion::protocol
