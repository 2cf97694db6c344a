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

// Integer partition counts and the series sum_l p(l) x^{-l}.

#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace overcrowd::partitions {

using BigInt = boost::multiprecision::cpp_int;

/// Exact p(0..max_n) from Euler's pentagonal-number recurrence. Immutable
/// once built; extend() is the only mutator and must not race with readers.
class PartitionTable {
 public:
  explicit PartitionTable(std::size_t max_n = 0);

  std::size_t max_n() const { return values_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return values_.at(n); }
  /// Natural log of p(n).
  double log_value(std::size_t n) const { return log_values_.at(n); }

  void extend(std::size_t max_n);

 private:
  std::vector<BigInt> values_;
  std::vector<double> log_values_;
};

/// p(n), the number of partitions of n.
BigInt partition_count(std::size_t n);

/// Number of partitions of l into parts no larger than max_part (>= 1).
BigInt bounded_partition_count(std::size_t l, std::size_t max_part);

/// Natural log of a nonnegative big integer (-inf for zero).
double log_bigint(const BigInt& value);

/// Smallest n0 for which p(n) <= k^n holds for every n >= n0, from the
/// classical bound p(n) < exp(pi sqrt(2n/3)). Requires k > 1.
std::size_t certified_threshold(double k);

/// Smallest N0 with p(n) <= k^n for all N0 <= n <= n_max, found by scanning
/// the exact table.
std::size_t empirical_threshold(double k, std::size_t n_max);

struct PartitionSeries {
  double log_value = 0.0;   ///< log of the truncated sum through `terms - 1`
  std::size_t terms = 1;    ///< number of summed terms l = 0..terms-1
  double ratio_base = 0.0;  ///< k with 1 < k < x used for the tail bound
  std::size_t threshold = 0;  ///< n0(k): p(n) <= k^n for n >= n0
  double log_tail_bound = 0.0;  ///< log of sum_{l >= terms} (k/x)^l
};

/// log sum_{l>=0} p(l) x^{-l} for x > 1, truncated once the certified
/// geometric tail bound drops below rel_tol times the partial sum. x = +inf
/// gives exactly 0. Throws DomainError for x <= 1, ConvergenceError if no
/// certificate is found within max_terms.
PartitionSeries partition_series(double x, double rel_tol, std::size_t max_terms = 50'000);

/// log sum_{l<terms} p(l) x^{-l} (no tail certification).
double partition_series_truncated(double x, std::size_t terms);

}  // namespace overcrowd::partitions
