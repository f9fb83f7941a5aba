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

namespace lion {

// Half-up rounding to `decimals` places. Values whose decimal text sits
// exactly on a tie (14.845) round away from zero even when the binary
// double lands a hair below the tie.
double round_half_up(double value, int decimals);

// Fixed-point rendering after round_half_up, e.g. format_fixed(14.845, 2) == "14.85".
std::string format_fixed(double value, int decimals);

// Inserts thousands separators into a non-negative integer: 18862 -> "18,862".
std::string group_thousands(long long value);

}  // namespace lion
