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

#include "overcrowd/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "overcrowd/error.hpp"
#include "overcrowd/log_math.hpp"

namespace overcrowd::gamma {
namespace {

void check_args(double a, double z, const char* fn) {
  if (!std::isfinite(a) || !std::isfinite(z) || !(a > 0.0) || !(z >= 0.0)) {
    throw DomainError(std::string(fn) + ": requires finite a > 0 and z >= 0 (a=" +
                      std::to_string(a) + ", z=" + std::to_string(z) + ")");
  }
}

// log P(a, z) from P = z^a e^{-z} / Gamma(a + 1) * sum_n z^n / ((a+1)...(a+n)).
double lower_series(double a, double z) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n <= kMaxIterations; ++n) {
    term *= z / (a + n);
    sum += term;
    if (term < kSeriesTolerance * sum) {
      return log_poisson_weight(a, z) + std::log(sum);
    }
  }
  throw ConvergenceError("incomplete gamma series did not converge (a=" + std::to_string(a) +
                         ", z=" + std::to_string(z) + ")");
}

// log Q(a, z) from Gamma(a, z) = e^{-z} z^a / (z + 1 - a - 1(1-a)/(z + 3 - a - ...)).
double upper_fraction(double a, double z) {
  constexpr double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= std::numeric_limits<double>::epsilon()) {
      // Q = z^a e^{-z} h / Gamma(a) = [z^a e^{-z} / Gamma(a + 1)] * a * h
      return log_poisson_weight(a, z) + std::log(a) + std::log(h);
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge (a=" +
                         std::to_string(a) + ", z=" + std::to_string(z) + ")");
}

void check_integer_args(long long n, double z, const char* fn) {
  if (n < 1 || !std::isfinite(z) || !(z >= 0.0)) {
    throw DomainError(std::string(fn) + ": requires integer n >= 1 and finite z >= 0 (n=" +
                      std::to_string(n) + ", z=" + std::to_string(z) + ")");
  }
}

// Sum of Poisson weights pmf(k; z) for k in [lo, hi] (hi may be "infinite"),
// evaluated relative to the largest term. Below the mode the terms decrease
// as k falls and above it they decrease as k grows, so each sweep stops at
// the first negligible term.
double log_poisson_range(long long lo, long long hi, double z) {
  const double mode = std::floor(z);
  long long peak = static_cast<long long>(std::min<double>(std::max<double>(mode, lo), hi));
  const double log_peak = log_poisson_weight(static_cast<double>(peak), z);
  double sum = 1.0;
  double term = 1.0;
  for (long long k = peak; k > lo; --k) {
    term *= static_cast<double>(k) / z;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  term = 1.0;
  for (long long k = peak + 1; k <= hi; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return log_peak + std::log(sum);
}

}  // namespace

double log_Q(double a, double z) {
  check_args(a, z, "log_Q");
  if (z == 0.0) return 0.0;
  if (z < a + 1.0) return log1mexp(lower_series(a, z));
  return upper_fraction(a, z);
}

double log_gamma_lower(double a, double z) {
  check_args(a, z, "log_gamma_lower");
  if (z == 0.0) return kNegInf;
  if (z < a + 1.0) return lower_series(a, z);
  return log1mexp(upper_fraction(a, z));
}

double log_Q_integer(long long n, double z) {
  check_integer_args(n, z, "log_Q_integer");
  if (z == 0.0) return 0.0;
  return log_poisson_range(0, n - 1, z);
}

double log_gamma_lower_integer(long long n, double z) {
  check_integer_args(n, z, "log_gamma_lower_integer");
  if (z == 0.0) return kNegInf;
  return log_poisson_range(n, std::numeric_limits<long long>::max(), z);
}

double log_tail_asymptotic(double a, double lambda) {
  if (!(a > 0.0) || !(lambda > 0.0) || !std::isfinite(a) || !std::isfinite(lambda)) {
    throw DomainError("log_tail_asymptotic: requires finite a > 0 and lambda > 0");
  }
  if (lambda == 1.0) throw DomainError("log_tail_asymptotic: undefined at lambda = 1");
  const double x = lambda - 1.0;
  return a * log1pmx(x) - 0.5 * std::log(2.0 * std::numbers::pi * a) - std::log(std::abs(x));
}

double log_Q_asymptotic(double a, double lambda) {
  const double tail = log_tail_asymptotic(a, lambda);
  if (lambda > 1.0) return tail;
  if (!(tail < 0.0)) {
    throw DomainError("log_Q_asymptotic: lower-tail estimate exceeds one; a too small");
  }
  return log1mexp(tail);
}

}  // namespace overcrowd::gamma
