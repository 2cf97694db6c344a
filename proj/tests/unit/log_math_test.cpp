// Copyright 2026 The overcrowd Authors
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

#include "overcrowd/log_math.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

namespace overcrowd {
namespace {

TEST(LogMath, AddAndSubRoundTrip) {
  EXPECT_NEAR(log_add_exp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_NEAR(log_sub_exp(std::log(5.0), std::log(3.0)), std::log(2.0), 1e-15);
  EXPECT_EQ(log_add_exp(kNegInf, kNegInf), kNegInf);
  EXPECT_EQ(log_sub_exp(1.0, 1.0), kNegInf);
  // far apart: no overflow
  EXPECT_NEAR(log_add_exp(1000.0, 0.0), 1000.0, 1e-12);
}

TEST(LogMath, SumExpMatchesDirect) {
  std::vector<double> xs{-1.0, 0.5, 2.0, -30.0};
  double direct = 0.0;
  for (double x : xs) direct += std::exp(x);
  EXPECT_NEAR(log_sum_exp(xs), std::log(direct), 1e-14);
  EXPECT_EQ(log_sum_exp(std::vector<double>{}), kNegInf);

  LogAccumulator acc;
  EXPECT_TRUE(acc.empty());
  for (double x : xs) acc.add(x);
  EXPECT_NEAR(acc.value(), std::log(direct), 1e-14);
}

TEST(LogMath, Log1mexpBothBranches) {
  for (double x : {-1e-10, -0.1, -0.6931, -0.7, -5.0, -50.0}) {
    const double ref = std::log(-std::expm1(x));
    EXPECT_NEAR(log1mexp(x), ref, 1e-14 * std::max(1.0, std::abs(ref))) << x;
  }
}

TEST(LogMath, Log1pmxSmallArgument) {
  // series: -x^2/2 + x^3/3 - x^4/4 + ...
  const double x = 1e-5;
  EXPECT_NEAR(log1pmx(x), -x * x / 2 + x * x * x / 3 - x * x * x * x / 4, 1e-14 * x * x);
  EXPECT_NEAR(log1pmx(1.5), std::log1p(1.5) - 1.5, 1e-15);
}

TEST(LogMath, StirlingErrorMatchesLgamma) {
  for (double a : {0.5, 1.0, 7.0, 50.0, 1e4}) {
    const double ref = std::lgamma(a + 1) - (a * std::log(a) - a + 0.5 * std::log(2 * std::numbers::pi * a));
    // the reference loses digits to lgamma itself
    EXPECT_NEAR(stirling_error(a), ref, 1e-15 * (std::abs(std::lgamma(a + 1)) + a * std::log(a) + a + 1)) << a;
  }
  // ~ 1/(12 a)
  EXPECT_NEAR(stirling_error(1e6) * 12e6, 1.0, 1e-6);
}

TEST(LogMath, PoissonWeight) {
  EXPECT_NEAR(log_poisson_weight(3, 2.0), 3 * std::log(2.0) - 2.0 - std::log(6.0), 1e-14);
  EXPECT_NEAR(log_poisson_weight(0, 5.0), -5.0, 1e-14);
  // large k near the mode: -0.5 log(2 pi k) + O(1/k)
  const double k = 1e8;
  EXPECT_NEAR(log_poisson_weight(k, k), -0.5 * std::log(2 * std::numbers::pi * k) - 1.0 / (12 * k), 1e-12);
}

}  // namespace
}  // namespace overcrowd
