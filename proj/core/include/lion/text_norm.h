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

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lion {

// Normalization applied identically to training transcripts and to both
// sides of a scored pair.
struct NormProfile {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool collapse_whitespace = true;
  // Code points removed in addition to Unicode general categories Pc Pd Ps Pe
  // Pi Pf Po. The default list covers CJK and Indic sentence marks.
  std::vector<char32_t> extra_punctuation = default_extra_punctuation();

  static std::vector<char32_t> default_extra_punctuation();
  static NormProfile by_name(std::string_view name);  // only "default" today

  friend bool operator==(const NormProfile&, const NormProfile&) = default;
};

void to_json(nlohmann::json& j, const NormProfile& p);
void from_json(const nlohmann::json& j, NormProfile& p);

// Case folding (simple, 1:1), punctuation removal, whitespace collapse and
// trim. Invalid UTF-8 bytes decode to U+FFFD.
std::string normalize(std::string_view text, const NormProfile& profile = {});

bool is_punctuation(char32_t cp, const NormProfile& profile = {});

std::vector<std::string> tokenize_words(std::string_view text);
// One token per Unicode scalar value, whitespace dropped.
std::vector<std::string> tokenize_chars(std::string_view text);

// UTF-8 helpers shared with tests and scoring.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

}  // namespace lion
