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

// Regularized incomplete gamma functions in log space.
//
//   Q(a, z) = Gamma(a, z) / Gamma(a)      upper tail
//   P(a, z) = gamma(a, z) / Gamma(a)      lower tail, P = 1 - Q
//
// Every routine returns the natural logarithm and computes the requested
// tail directly, so neither tail is ever formed as 1 - (other tail).

#pragma once

namespace overcrowd::gamma {

/// Convergence controls for the series and continued-fraction branches.
inline constexpr double kSeriesTolerance = 1e-16;
inline constexpr int kMaxIterations = 1'000'000;

/// log Q(a, z). Lower series for z < a + 1, Lentz continued fraction
/// otherwise. Throws DomainError for a <= 0, z < 0 or non-finite input,
/// ConvergenceError if the iteration cap is hit.
double log_Q(double a, double z);

/// log P(a, z) = log(1 - Q(a, z)); -inf at z = 0.
double log_gamma_lower(double a, double z);

/// log Q(n, z) = log(e^{-z} sum_{k<n} z^k / k!) for integer n >= 1,
/// summed outward from the largest term.
double log_Q_integer(long long n, double z);

/// log P(n, z) = log(e^{-z} sum_{k>=n} z^k / k!) for integer n >= 1.
double log_gamma_lower_integer(long long n, double z);

/// Leading-order large-a approximation of the smaller tail at z = lambda a:
///
///   exp(-a (lambda - 1 - log lambda)) / (sqrt(2 pi a) |lambda - 1|)
///
/// which approximates Q for lambda > 1 and P = 1 - Q for lambda < 1. The
/// relative error is O(1/a + 1/(a (lambda - 1)^2)); the formula is only
/// meaningful when |lambda - 1| sqrt(a) >> 1, which callers must ensure.
double log_tail_asymptotic(double a, double lambda);

/// log Q(a, lambda a) from the leading-order approximation: the tail itself
/// for lambda > 1, log(1 - tail) for lambda < 1. DomainError at lambda = 1,
/// or if the lambda < 1 tail estimate is not below one.
double log_Q_asymptotic(double a, double lambda);

}  // namespace overcrowd::gamma
