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

#include "overcrowd/mixture.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "overcrowd/error.hpp"
#include "overcrowd/gamma.hpp"
#include "overcrowd/log_math.hpp"

namespace overcrowd::mixture {
namespace {

std::size_t layer_offset(int j) { return static_cast<std::size_t>(j) * (j + 1) / 2; }

// One step of the Poisson-binomial recursion: next(r) = prev(r)(1 - a) + prev(r - 1) a.
void extend_layer(std::span<const double> prev, double log_a, double log_1ma, std::span<double> next) {
  const std::size_t j = prev.size();
  for (std::size_t r = 0; r <= j; ++r) {
    const double stay = r < j ? prev[r] + log_1ma : kNegInf;
    const double take = r > 0 ? prev[r - 1] + log_a : kNegInf;
    next[r] = log_add_exp(stay, take);
  }
}

}  // namespace

BernoulliWeights bernoulli_weights(const EnsembleParams& params) {
  BernoulliWeights w;
  const double z = params.cutoff();
  w.log_a.resize(params.n());
  w.log_1ma.resize(params.n());
  for (int k = 0; k < params.n(); ++k) {
    w.log_a[k] = gamma::log_Q(k + 1.0, z);
    w.log_1ma[k] = gamma::log_gamma_lower(k + 1.0, z);
  }
  return w;
}

BernoulliWeights weights_from_probabilities(std::span<const double> a) {
  BernoulliWeights w;
  for (double p : a) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("weights_from_probabilities: entries must lie in (0, 1)");
    w.log_a.push_back(std::log(p));
    w.log_1ma.push_back(std::log1p(-p));
  }
  return w;
}

double CountDistribution::log_total() const { return log_sum_exp(log_probs); }

int CountDistribution::mode() const {
  return static_cast<int>(std::max_element(log_probs.begin(), log_probs.end()) - log_probs.begin());
}

CountDistribution poisson_binomial(const BernoulliWeights& weights) {
  const int n = weights.size();
  std::vector<double> cur{0.0};
  std::vector<double> next;
  cur.reserve(n + 1);
  next.reserve(n + 1);
  for (int j = 0; j < n; ++j) {
    next.resize(j + 2);
    extend_layer(cur, weights.log_a[j], weights.log_1ma[j], next);
    std::swap(cur, next);
  }
  return CountDistribution{std::move(cur)};
}

CountDistribution count_distribution(const EnsembleParams& params) {
  return poisson_binomial(bernoulli_weights(params));
}

CountDistribution brute_force_count_distribution(const BernoulliWeights& weights) {
  const int n = weights.size();
  if (n > 24) throw std::invalid_argument("brute_force_count_distribution: N > 24");
  std::vector<LogAccumulator> acc(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double lp = 0.0;
    for (int k = 0; k < n; ++k) lp += (mask >> k & 1u) ? weights.log_a[k] : weights.log_1ma[k];
    acc[std::popcount(mask)].add(lp);
  }
  CountDistribution out;
  for (const auto& a : acc) out.log_probs.push_back(a.value());
  return out;
}

ConditionalSampler::ConditionalSampler(BernoulliWeights weights) : weights_(std::move(weights)) {
  const int n = weights_.size();
  prefix_.assign(layer_offset(n + 1), kNegInf);
  prefix_[0] = 0.0;
  for (int j = 0; j < n; ++j) {
    std::span<double> next(prefix_.data() + layer_offset(j + 1), j + 2);
    extend_layer(layer(j), weights_.log_a[j], weights_.log_1ma[j], next);
  }
}

std::span<const double> ConditionalSampler::layer(int j) const {
  return {prefix_.data() + layer_offset(j), static_cast<std::size_t>(j) + 1};
}

IndexSet ConditionalSampler::sample(int m, RandomStream& rng) const {
  const int n = size();
  if (m < 0 || m > n) throw std::invalid_argument("ConditionalSampler::sample: m out of range");
  if (layer(n)[m] == kNegInf) throw std::invalid_argument("ConditionalSampler::sample: P(count = m) = 0");
  std::vector<int> members;
  members.reserve(m);
  int remaining = m;
  for (int k = n - 1; k >= 0 && remaining > 0; --k) {
    if (remaining == k + 1) {
      for (int i = k; i >= 0; --i) members.push_back(i);
      break;
    }
    // P(k in J | sum_{i<=k} B_i = remaining)
    const double log_p = weights_.log_a[k] + layer(k)[remaining - 1] - layer(k + 1)[remaining];
    if (rng.uniform() < std::exp(log_p)) {
      members.push_back(k);
      --remaining;
    }
  }
  return IndexSet(n, std::move(members));
}

std::vector<double> ConditionalSampler::inclusion_probabilities(int m) const {
  const int n = size();
  if (m < 0 || m > n) throw std::invalid_argument("inclusion_probabilities: m out of range");
  const double log_norm = layer(n)[m];
  std::vector<double> out(n, 0.0);
  if (m == 0 || log_norm == kNegInf) return out;
  // suffix(r) = log P(sum_{i>k} B_i = r), built from the top down.
  std::vector<double> suffix{0.0};
  std::vector<double> next;
  for (int k = n - 1; k >= 0; --k) {
    const auto pre = layer(k);
    LogAccumulator acc;
    for (int r = std::max(0, m - 1 - static_cast<int>(suffix.size()) + 1); r <= std::min(k, m - 1); ++r) {
      const int s = m - 1 - r;
      if (s < static_cast<int>(suffix.size())) acc.add(pre[r] + suffix[s]);
    }
    out[k] = std::exp(weights_.log_a[k] + acc.value() - log_norm);
    next.resize(suffix.size() + 1);
    extend_layer(suffix, weights_.log_a[k], weights_.log_1ma[k], next);
    std::swap(suffix, next);
  }
  return out;
}

double log_ratio_exact(const OccupationVector& n, const EnsembleParams& params, const BernoulliWeights& weights) {
  const auto& e = n.entries();
  if (static_cast<int>(e.size()) != params.n_outside() || weights.size() != params.n()) {
    throw std::invalid_argument("log_ratio_exact: occupation vector or weights do not match params");
  }
  const int inside = params.n_inside();
  double total = 0.0;
  for (int k = 1; k <= static_cast<int>(e.size()); ++k) {
    if (e[k - 1] == 0) continue;
    // kernel index of x_k = N - N_c + k - n_k, and of its J_0 counterpart
    const int j = inside + k - e[k - 1] - 1;
    const int j0 = inside + k - 1;
    if (j < 0) throw DomainError("log_ratio_exact: incomplete gamma argument <= 0");
    total += weights.log_odds(j) - weights.log_odds(j0);
  }
  return total;
}

double log_ratio_exact(const OccupationVector& n, const EnsembleParams& params) {
  return log_ratio_exact(n, params, bernoulli_weights(params));
}

double log_ratio_approx(const OccupationVector& n, const EnsembleParams& params) {
  const long long total = n.total();
  if (total == 0) return 0.0;
  return -std::log(params.decay_base()) * static_cast<double>(total);
}

IndexSet sample_conditioned_indexset(const EnsembleParams& params, int m, RandomStream& rng) {
  return ConditionalSampler(bernoulli_weights(params)).sample(m, rng);
}

double overcrowding_probability_exact(const EnsembleParams& params) {
  return count_distribution(params).log_prob(params.n_outside());
}

AsymptoticProbability overcrowding_probability_asymptotic(const EnsembleParams& params, double rel_tol) {
  AsymptoticProbability out;
  const double z = params.cutoff();
  for (int k = params.n_inside(); k < params.n(); ++k) out.log_hole_product += gamma::log_Q(k + 1.0, z);
  const int nc = params.n_outside();
  const double z_alt = nc * params.radius() * params.radius();
  for (int j = 1; j <= nc; ++j) out.log_hole_product_alt += gamma::log_Q(j, z_alt);
  out.series = partitions::partition_series(params.decay_base(), rel_tol);
  out.log_value = out.log_hole_product + out.series.log_value;
  return out;
}

}  // namespace overcrowd::mixture
