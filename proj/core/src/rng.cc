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

#include "lion/rng.h"

#include <string>

#include "lion/error.h"

namespace lion {

std::uint64_t SeededRng::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("SeededRng::below requires bound > 0");
  // 2^64 mod bound; draws under it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t splitmix64(std::uint64_t x) { return SeededRng(x).next(); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t substream_seed(std::uint64_t master, std::string_view language,
                             std::string_view dataset, std::string_view stage) {
  std::string key;
  key.reserve(language.size() + dataset.size() + stage.size() + 2);
  key.append(language).append(":").append(dataset).append(":").append(stage);
  return splitmix64(master ^ fnv1a64(key));
}

}  // namespace lion
