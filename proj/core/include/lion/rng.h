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

#include <cstdint>
#include <string_view>

namespace lion {

// SplitMix64 generator. The whole stream is a function of the initial state,
// so results are bit-identical on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// First SplitMix64 output for state `x`.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

// Seed for one (language, dataset, stage) substream:
// splitmix64(master ^ fnv1a64(language + ":" + dataset + ":" + stage)).
std::uint64_t substream_seed(std::uint64_t master, std::string_view language,
                             std::string_view dataset, std::string_view stage);

}  // namespace lion
