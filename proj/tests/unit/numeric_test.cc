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

#include "lion/numeric.h"

#include <gtest/gtest.h>

namespace lion {
namespace {

TEST(RoundHalfUp, DecimalTiesRoundUp) {
  // 178.14 / 12 and 764.94 / 12 sit on decimal ties but land below them in binary.
  EXPECT_EQ(format_fixed(178.14 / 12.0, 2), "14.85");
  EXPECT_EQ(format_fixed(764.94 / 12.0, 2), "63.75");
  EXPECT_EQ(format_fixed(0.125, 2), "0.13");
  EXPECT_EQ(format_fixed(2.5, 0), "3");
}

TEST(RoundHalfUp, NonTiesUnaffected) {
  EXPECT_EQ(format_fixed(14.313333, 2), "14.31");
  EXPECT_EQ(format_fixed(16.515833, 2), "16.52");
  EXPECT_EQ(format_fixed(2.01524, 4), "2.0152");
  EXPECT_DOUBLE_EQ(round_half_up(1.004999, 2), 1.0);
}

TEST(RoundHalfUp, NegativeAndZero) {
  EXPECT_EQ(format_fixed(-1.005, 2), "-1.01");
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(format_fixed(0.0, 4), "0.0000");
}

TEST(GroupThousands, Separators) {
  EXPECT_EQ(group_thousands(0), "0");
  EXPECT_EQ(group_thousands(999), "999");
  EXPECT_EQ(group_thousands(18862), "18,862");
  EXPECT_EQ(group_thousands(479364), "479,364");
  EXPECT_EQ(group_thousands(1234567), "1,234,567");
}

}  // namespace
}  // namespace lion
