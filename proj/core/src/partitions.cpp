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

#include "overcrowd/partitions.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

#include "overcrowd/error.hpp"
#include "overcrowd/log_math.hpp"

namespace overcrowd::partitions {

PartitionTable::PartitionTable(std::size_t max_n) {
  values_.push_back(1);
  log_values_.push_back(0.0);
  extend(max_n);
}

void PartitionTable::extend(std::size_t max_n) {
  if (max_n + 1 <= values_.size()) return;
  values_.reserve(max_n + 1);
  log_values_.reserve(max_n + 1);
  for (std::size_t n = values_.size(); n <= max_n; ++n) {
    // p(n) = sum_{j>=1} (-1)^{j+1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]
    BigInt sum = 0;
    for (std::size_t j = 1;; ++j) {
      const std::size_t g1 = j * (3 * j - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = j * (3 * j + 1) / 2;
      if (j % 2 == 1) {
        sum += values_[n - g1];
        if (g2 <= n) sum += values_[n - g2];
      } else {
        sum -= values_[n - g1];
        if (g2 <= n) sum -= values_[n - g2];
      }
    }
    log_values_.push_back(log_bigint(sum));
    values_.push_back(std::move(sum));
  }
}

double log_bigint(const BigInt& value) {
  if (value <= 0) return kNegInf;
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits < 1000) return std::log(value.convert_to<double>());
  if (bits < 16000) return static_cast<double>(std::log(value.convert_to<long double>()));
  // top 64 bits times 2^shift; divide rather than shift (GCC 11 flags the
  // inlined right-shift with a spurious -Wstringop-overflow)
  const std::size_t shift = bits - 64;
  BigInt scale = 1;
  scale <<= shift;
  const BigInt top = value / scale;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

namespace {

// Shared snapshot so repeated series evaluations do not rebuild p(n). A
// larger request publishes a new table; readers keep the one they hold.
std::shared_ptr<const PartitionTable> shared_table(std::size_t max_n) {
  static std::shared_ptr<const PartitionTable> table = std::make_shared<PartitionTable>(64);
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (table->max_n() < max_n) {
    auto grown = std::make_shared<PartitionTable>(*table);
    grown->extend(std::max(max_n, 2 * table->max_n()));
    table = std::move(grown);
  }
  return table;
}

}  // namespace

BigInt partition_count(std::size_t n) { return (*shared_table(n))[n]; }

BigInt bounded_partition_count(std::size_t l, std::size_t max_part) {
  if (max_part == 0) return l == 0 ? 1 : 0;
  std::vector<BigInt> ways(l + 1, 0);
  ways[0] = 1;
  for (std::size_t part = 1; part <= std::min(max_part, l); ++part) {
    for (std::size_t s = part; s <= l; ++s) ways[s] += ways[s - part];
  }
  return ways[l];
}

std::size_t certified_threshold(double k) {
  if (!(k > 1.0)) throw DomainError("certified_threshold: requires k > 1");
  // pi sqrt(2n/3) <= n log k  <=>  n >= 2 pi^2 / (3 log^2 k)
  const double lk = std::log(k);
  return static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * std::numbers::pi / (3.0 * lk * lk)));
}

std::size_t empirical_threshold(double k, std::size_t n_max) {
  if (!(k > 1.0)) throw DomainError("empirical_threshold: requires k > 1");
  const auto snapshot = shared_table(n_max);
  const PartitionTable& table = *snapshot;
  const double lk = std::log(k);
  std::size_t n0 = n_max + 1;
  for (std::size_t n = n_max + 1; n-- > 0;) {
    if (table.log_value(n) > static_cast<double>(n) * lk) break;
    n0 = n;
  }
  return n0;
}

double partition_series_truncated(double x, std::size_t terms) {
  if (!(x > 1.0)) throw DomainError("partition_series: requires x > 1");
  if (std::isinf(x) || terms <= 1) return 0.0;
  const auto snapshot = shared_table(terms - 1);
  const PartitionTable& table = *snapshot;
  const double lx = std::log(x);
  LogAccumulator acc;
  for (std::size_t l = 0; l < terms; ++l) acc.add(table.log_value(l) - static_cast<double>(l) * lx);
  return acc.value();
}

PartitionSeries partition_series(double x, double rel_tol, std::size_t max_terms) {
  if (!(x > 1.0)) throw DomainError("partition_series: requires x > 1");
  if (!(rel_tol > 0.0)) throw DomainError("partition_series: requires rel_tol > 0");
  PartitionSeries out;
  if (std::isinf(x)) {
    out.ratio_base = std::numeric_limits<double>::infinity();
    out.log_tail_bound = kNegInf;
    return out;
  }
  const double lx = std::log(x);
  const double log_tol = std::log(rel_tol);
  LogAccumulator acc;
  std::shared_ptr<const PartitionTable> snapshot = shared_table(64);
  for (std::size_t last = 0; last < max_terms; ++last) {
    if (last > snapshot->max_n()) snapshot = shared_table(std::min(max_terms, 2 * last));
    const PartitionTable& table = *snapshot;
    acc.add(table.log_value(last) - static_cast<double>(last) * lx);
    const std::size_t terms = last + 1;
    // p(n) <= k^n for all n >= terms once k >= exp(pi sqrt(2 / (3 terms))).
    const double log_k = std::numbers::pi * std::sqrt(2.0 / (3.0 * static_cast<double>(terms)));
    if (log_k >= lx) continue;
    // sum_{l>=terms} (k/x)^l = (k/x)^terms / (1 - k/x)
    const double log_q = log_k - lx;
    const double log_tail = static_cast<double>(terms) * log_q - log1mexp(log_q);
    if (log_tail - acc.value() <= log_tol) {
      const std::size_t n0 = certified_threshold(std::exp(log_k));
      // Numerical check of the certificate on the tabulated range.
      for (std::size_t n = n0; n <= last; ++n) {
        if (table.log_value(n) > static_cast<double>(n) * log_k + 1e-12) {
          throw ConvergenceError("partition_series: tail certificate violated at n=" + std::to_string(n));
        }
      }
      out.log_value = acc.value();
      out.terms = terms;
      out.ratio_base = std::exp(log_k);
      out.threshold = n0;
      out.log_tail_bound = log_tail;
      return out;
    }
  }
  throw ConvergenceError("partition_series: no certified truncation within " + std::to_string(max_terms) +
                         " terms (x=" + std::to_string(x) + ")");
}

}  // namespace overcrowd::partitions
