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
#include <span>
#include <string>

namespace lion {

// GPU-hours training cost inputs. Rates are always supplied by the caller.
struct TrainingSetup {
  std::string label;
  std::string hardware;  // display only, e.g. "128 x H100"
  std::int64_t gpu_count = 1;
  double wall_hours = 0.0;
  double hourly_rate = 0.0;  // currency per GPU-hour
  double data_hours = 0.0;   // informational

  void validate() const;
};

// gpu_count * wall_hours * hourly_rate, rounded half-up to cents.
std::int64_t estimate_cost_cents(const TrainingSetup& setup);
double estimate_cost(const TrainingSetup& setup);

// estimate_cost(a) / estimate_cost(b). Throws PreconditionError when b costs 0.
double cost_ratio(const TrainingSetup& a, const TrainingSetup& b);

// "$18,862" at or above $1,000, "$81.00" below.
std::string format_money(std::int64_t cents);

// Table with one column per setup: data hours, hardware, time, cost; plus a
// ratio line when exactly two setups are given.
std::string render_cost_markdown(std::span<const TrainingSetup> setups);

}  // namespace lion
