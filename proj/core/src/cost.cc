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

#include "lion/cost.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lion/error.h"
#include "lion/numeric.h"

namespace lion {

void TrainingSetup::validate() const {
  if (gpu_count < 1) throw PreconditionError("gpu_count must be >= 1");
  if (!(wall_hours >= 0.0)) throw PreconditionError("wall_hours must be >= 0");
  if (!(hourly_rate >= 0.0)) throw PreconditionError("hourly_rate must be >= 0");
}

std::int64_t estimate_cost_cents(const TrainingSetup& setup) {
  setup.validate();
  const double dollars = static_cast<double>(setup.gpu_count) * setup.wall_hours * setup.hourly_rate;
  return static_cast<std::int64_t>(round_half_up(dollars * 100.0, 0));
}

double estimate_cost(const TrainingSetup& setup) {
  return static_cast<double>(estimate_cost_cents(setup)) / 100.0;
}

double cost_ratio(const TrainingSetup& a, const TrainingSetup& b) {
  const auto denom = estimate_cost_cents(b);
  if (denom == 0) throw PreconditionError("cost ratio denominator is zero");
  return static_cast<double>(estimate_cost_cents(a)) / static_cast<double>(denom);
}

std::string format_money(std::int64_t cents) {
  const bool negative = cents < 0;
  if (negative) cents = -cents;
  std::string out = negative ? "-$" : "$";
  if (cents >= 100000) {
    out += group_thousands((cents + 50) / 100);
  } else {
    char frac[4];
    std::snprintf(frac, sizeof(frac), "%02lld", static_cast<long long>(cents % 100));
    out += group_thousands(cents / 100) + "." + frac;
  }
  return out;
}

std::string render_cost_markdown(std::span<const TrainingSetup> setups) {
  std::ostringstream out;
  out << "|";
  for (const auto& s : setups) out << " | " << s.label;
  out << " |\n|---";
  for (std::size_t i = 0; i < setups.size(); ++i) out << "|:-:";
  out << "|\n";

  auto row = [&](const char* name, auto cell) {
    out << "| " << name;
    for (const auto& s : setups) out << " | " << cell(s);
    out << " |\n";
  };
  row("Training Data (Hours)", [](const TrainingSetup& s) {
    double whole = std::floor(s.data_hours);
    return whole == s.data_hours ? group_thousands(static_cast<long long>(whole))
                                 : format_fixed(s.data_hours, 2);
  });
  row("Hardware", [](const TrainingSetup& s) {
    return s.hardware.empty() ? std::to_string(s.gpu_count) + " x GPU" : s.hardware;
  });
  row("Training Time", [](const TrainingSetup& s) {
    double whole = std::floor(s.wall_hours);
    return (whole == s.wall_hours ? std::to_string(static_cast<long long>(whole))
                                  : format_fixed(s.wall_hours, 2)) + " h";
  });
  row("Est. Cost", [](const TrainingSetup& s) { return format_money(estimate_cost_cents(s)); });

  if (setups.size() == 2 && estimate_cost_cents(setups[1]) > 0) {
    out << "\nCost ratio (" << setups[0].label << " / " << setups[1].label
        << "): " << format_fixed(cost_ratio(setups[0], setups[1]), 1) << "x\n";
  }
  return out.str();
}

}  // namespace lion
