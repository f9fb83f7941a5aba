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

#include "lion/text_norm.h"

#include <unicode/uchar.h>

#include <algorithm>

#include "lion/error.h"

namespace lion {
namespace {

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

}  // namespace

std::vector<char32_t> NormProfile::default_extra_punctuation() {
  return {
      U'、', U'。', U'，', U'．', U'：', U'；', U'！',
      U'？', U'「', U'」', U'『', U'』', U'【', U'】',
      U'《', U'》', U'・', U'।', U'॥',
  };
}

NormProfile NormProfile::by_name(std::string_view name) {
  if (name == "default") return NormProfile{};
  throw PreconditionError("unknown normalization profile '" + std::string(name) + "'");
}

void to_json(nlohmann::json& j, const NormProfile& p) {
  std::vector<std::uint32_t> extra(p.extra_punctuation.begin(), p.extra_punctuation.end());
  j = nlohmann::json{{"lowercase", p.lowercase},
                     {"strip_punctuation", p.strip_punctuation},
                     {"collapse_whitespace", p.collapse_whitespace},
                     {"extra_punctuation", extra}};
}

void from_json(const nlohmann::json& j, NormProfile& p) {
  if (j.is_string()) {
    p = NormProfile::by_name(j.get<std::string>());
    return;
  }
  p = NormProfile{};
  p.lowercase = j.value("lowercase", true);
  p.strip_punctuation = j.value("strip_punctuation", true);
  p.collapse_whitespace = j.value("collapse_whitespace", true);
  if (auto it = j.find("extra_punctuation"); it != j.end()) {
    p.extra_punctuation.clear();
    for (const auto& cp : *it) p.extra_punctuation.push_back(cp.get<std::uint32_t>());
  }
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  while (i < text.size()) {
    unsigned char c = byte(i);
    char32_t cp;
    std::size_t len;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      len = 4;
    } else {
      out.push_back(U'�');
      ++i;
      continue;
    }
    bool ok = i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (byte(i + k) & 0x3F);
      }
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (ok && (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (!ok) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_punctuation(char32_t cp, const NormProfile& profile) {
  switch (u_charType(static_cast<UChar32>(cp))) {
    case U_CONNECTOR_PUNCTUATION:
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
      return true;
    default:
      break;
  }
  const auto& extra = profile.extra_punctuation;
  return std::find(extra.begin(), extra.end(), cp) != extra.end();
}

std::string normalize(std::string_view text, const NormProfile& profile) {
  std::u32string cps = decode_utf8(text);
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (profile.strip_punctuation && is_punctuation(cp, profile)) continue;
    if (profile.collapse_whitespace && is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (profile.lowercase) {
      cp = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT));
    }
    append_utf8(out, cp);
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : decode_utf8(text)) {
    if (is_space(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      append_utf8(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> tokenize_chars(std::string_view text) {
  std::vector<std::string> tokens;
  for (char32_t cp : decode_utf8(text)) {
    if (is_space(cp)) continue;
    std::string tok;
    append_utf8(tok, cp);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace lion
