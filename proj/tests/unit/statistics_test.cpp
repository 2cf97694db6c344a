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

#include "overcrowd/statistics.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace overcrowd::stats {
namespace {

TEST(Statistics, KsTwoSample) {
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2}, {3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 3}, {2, 4}), 0.5);
}

TEST(Statistics, KsOneSample) {
  // uniform grid points against the uniform CDF: 1/(2n)
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back((i + 0.5) / 10);
  EXPECT_NEAR(ks_one_sample(xs, [](double x) { return x; }), 0.05, 1e-15);
}

TEST(Statistics, ChiSquareHandComputed) {
  const std::vector<double> obs{12, 8, 10}, exp{10, 10, 10};
  const auto r = chi_square(obs, exp);
  EXPECT_NEAR(r.statistic, 0.8, 1e-14);
  EXPECT_EQ(r.dof, 2);
  EXPECT_NEAR(r.p_value, std::exp(-0.4), 1e-12);  // chi2_2 tail is e^{-x/2}
}

TEST(Statistics, ChiSquarePoolsSmallBins) {
  // groups {0,1,2} (expected 14) and {3,4,5} (expected 10)
  const std::vector<double> obs{1, 2, 9, 1, 2, 6}, exp{1, 3, 10, 2, 1, 7};
  const auto r = chi_square(obs, exp);
  EXPECT_EQ(r.bins, 2);
  EXPECT_EQ(r.dof, 1);
  EXPECT_NEAR(r.statistic, 4.0 / 14 + 1.0 / 10, 1e-14);
  // everything pools into one bin
  const std::vector<double> o1{1, 2}, e1{1, 2};
  EXPECT_THROW(chi_square(o1, e1), std::invalid_argument);
}

TEST(Statistics, ChiSquareSurvival) {
  EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_NEAR(chi_square_sf(0.0, 4), 1.0, 1e-15);
}

TEST(Statistics, MeanEstimate) {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto m = mean_estimate(xs);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3 / 4), 1e-15);
}

}  // namespace
}  // namespace overcrowd::stats
