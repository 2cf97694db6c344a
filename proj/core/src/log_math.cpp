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

#include <algorithm>
#include <cmath>
#include <numbers>

namespace overcrowd {

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> xs) {
  LogAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (a == b) return kNegInf;
  return a + log1mexp(b - a);
}

double log1mexp(double x) {
  if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

double log1pmx(double x) {
  if (std::abs(x) >= 0.25) return std::log1p(x) - x;
  // -x^2/2 + x^3/3 - x^4/4 + ...
  double power = x * x;
  double sum = -0.5 * power;
  for (int n = 3; n < 200; ++n) {
    power *= -x;
    const double term = -power / n;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double stirling_error(double a) {
  constexpr double half_log_2pi = 0.91893853320467274178;
  if (a < 15.0) {
    if (a == 0.0) return 0.0;
    return std::lgamma(a + 1.0) - (a * std::log(a) - a + half_log_2pi + 0.5 * std::log(a));
  }
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 -
          inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

double log_poisson_weight(double k, double z) {
  constexpr double half_log_2pi = 0.91893853320467274178;
  if (z == 0.0) return k == 0.0 ? 0.0 : kNegInf;
  if (k == 0.0) return -z;
  if (k < 10.0) return k * std::log(z) - z - std::lgamma(k + 1.0);
  // k log(z/k) + k - z = k * log1pmx((z - k) / k)
  return k * log1pmx((z - k) / k) - half_log_2pi - 0.5 * std::log(k) - stirling_error(k);
}

void LogAccumulator::add(double log_term) {
  if (log_term == kNegInf) return;
  if (log_term <= max_) {
    scaled_sum_ += std::exp(log_term - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogAccumulator::value() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(scaled_sum_);
}

}  // namespace overcrowd
