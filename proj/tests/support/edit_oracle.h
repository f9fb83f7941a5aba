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

// Top-down memoized edit distance with the same tie preference as the
// library's backtrace, written without a DP table so the two can be compared.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace lion::testing::oracle {

struct EditCounts {
  std::size_t cost = 0;
  std::size_t sub = 0;
  std::size_t del = 0;
  std::size_t ins = 0;
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

class EditOracle {
 public:
  EditOracle(const std::vector<std::string>& ref, const std::vector<std::string>& hyp)
      : ref_(ref), hyp_(hyp), memo_((ref.size() + 1) * (hyp.size() + 1)),
        done_(memo_.size(), false) {}

  EditCounts solve() { return at(ref_.size(), hyp_.size()); }

 private:
  EditCounts at(std::size_t i, std::size_t j) {
    const std::size_t key = i * (hyp_.size() + 1) + j;
    if (done_[key]) return memo_[key];
    EditCounts best;
    if (i == 0) {
      best = {j, 0, 0, j};
    } else if (j == 0) {
      best = {i, 0, i, 0};
    } else {
      EditCounts diag = at(i - 1, j - 1);
      if (ref_[i - 1] != hyp_[j - 1]) {
        ++diag.cost;
        ++diag.sub;
      }
      EditCounts del = at(i - 1, j);
      ++del.cost;
      ++del.del;
      EditCounts ins = at(i, j - 1);
      ++ins.cost;
      ++ins.ins;
      best = diag;
      if (del.cost < best.cost) best = del;
      if (ins.cost < best.cost) best = ins;
    }
    done_[key] = true;
    return memo_[key] = best;
  }

  const std::vector<std::string>& ref_;
  const std::vector<std::string>& hyp_;
  std::vector<EditCounts> memo_;
  std::vector<bool> done_;
};

inline EditCounts edit_counts(const std::vector<std::string>& ref,
                              const std::vector<std::string>& hyp) {
  return EditOracle(ref, hyp).solve();
}

// All sequences of length <= max_len over the first `symbols` lowercase letters.
inline std::vector<std::vector<std::string>> all_sequences(std::size_t max_len, int symbols) {
  std::vector<std::vector<std::string>> out = {{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int s = 0; s < symbols; ++s) {
        auto next = out[k];
        next.push_back(std::string(1, static_cast<char>('a' + s)));
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace lion::testing::oracle
