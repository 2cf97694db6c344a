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

// Goodness-of-fit helpers for the Monte-Carlo checks.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace overcrowd::stats {

/// sup |F_a - F_b| between the empirical CDFs of two samples.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// sup |F_n - F| against a continuous CDF.
double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;  ///< after pooling
};

/// Pearson chi-square with dof = bins - 1 - fitted. Adjacent bins are merged
/// left to right until each expected count is at least `min_expected`; a
/// short last group is folded into its neighbour.
ChiSquare chi_square(std::span<const double> observed, std::span<const double> expected, double min_expected = 5.0,
                     int fitted = 0);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, int dof);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanEstimate mean_estimate(std::span<const double> xs);

}  // namespace overcrowd::stats
