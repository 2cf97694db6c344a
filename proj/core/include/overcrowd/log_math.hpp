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

// Helpers for arithmetic on natural-log values. A probability p is carried
// as log(p); zero is -infinity.

#pragma once

#include <limits>
#include <span>

namespace overcrowd {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(e^a + e^b).
double log_add_exp(double a, double b);

/// log(sum_i e^{x_i}); -inf for an empty span.
double log_sum_exp(std::span<const double> xs);

/// log(e^a - e^b) for a >= b; -inf when a == b.
double log_sub_exp(double a, double b);

/// log(1 - e^x) for x <= 0.
double log1mexp(double x);

/// log(1 + x) - x, accurate near x = 0.
double log1pmx(double x);

/// Stirling remainder lgamma(a + 1) - [a log a - a + log(2 pi a) / 2].
double stirling_error(double a);

/// log(z^k e^{-z} / Gamma(k + 1)) for real k >= 0, z >= 0, computed
/// without cancellation between the k log z and z terms.
double log_poisson_weight(double k, double z);

/// Streaming log-sum-exp with a running maximum.
class LogAccumulator {
 public:
  void add(double log_term);
  double value() const;
  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double scaled_sum_ = 0.0;
};

}  // namespace overcrowd
