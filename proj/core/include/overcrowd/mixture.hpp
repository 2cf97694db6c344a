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

// Mixture representation of the Ginibre eigenvalues outside |z| = R.
//
// The points outside the disk form a mixture of projection processes
// indexed by J ⊆ {0, ..., N-1}; index k enters J independently with
// probability a_k = Q(k + 1, N R^2). The number of outside points is
// therefore Poisson-binomial, and conditioning on that number gives the
// conditional-Bernoulli law P_J ∝ prod_{k in J} a_k / (1 - a_k).

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "overcrowd/params.hpp"
#include "overcrowd/partitions.hpp"
#include "overcrowd/rng.hpp"

namespace overcrowd::mixture {

/// log a_k and log(1 - a_k), each from its own tail.
struct BernoulliWeights {
  std::vector<double> log_a;
  std::vector<double> log_1ma;

  int size() const { return static_cast<int>(log_a.size()); }
  double log_odds(int k) const { return log_a[k] - log_1ma[k]; }
};

/// a_k = Q(k + 1, N R^2) for k = 0..N-1.
BernoulliWeights bernoulli_weights(const EnsembleParams& params);

/// Weights from plain probabilities in (0, 1), for synthetic models.
BernoulliWeights weights_from_probabilities(std::span<const double> a);

/// Law of #{|lambda| > R}: entry m is log P(count = m), m = 0..N.
struct CountDistribution {
  std::vector<double> log_probs;

  double log_prob(int m) const { return log_probs.at(m); }
  /// log of the total mass; zero up to rounding.
  double log_total() const;
  /// Index of the most likely count.
  int mode() const;
};

/// Poisson-binomial law of sum_k Bernoulli(a_k) in log space; O(N^2) time,
/// O(N) memory.
CountDistribution poisson_binomial(const BernoulliWeights& weights);

CountDistribution count_distribution(const EnsembleParams& params);

/// 2^N subset enumeration of the count law, for cross-checking small N.
/// Throws std::invalid_argument for N > 24.
CountDistribution brute_force_count_distribution(const BernoulliWeights& weights);

/// Exact sampler for J given |J| = m. Holds every prefix layer of the
/// Poisson-binomial recursion (O(N^2) doubles) and is immutable after
/// construction.
class ConditionalSampler {
 public:
  explicit ConditionalSampler(BernoulliWeights weights);

  int size() const { return weights_.size(); }
  const BernoulliWeights& weights() const { return weights_; }

  /// log P(count = m) over all N + 1 values.
  std::span<const double> log_pmf() const { return layer(size()); }

  /// Draws J with |J| = m from P_J ∝ prod_{k in J} a_k / (1 - a_k).
  /// Throws std::invalid_argument if m is out of range or has probability 0.
  IndexSet sample(int m, RandomStream& rng) const;

  /// P(k in J | |J| = m) for k = 0..N-1.
  std::vector<double> inclusion_probabilities(int m) const;

 private:
  // log P(sum_{i<j} B_i = r), r = 0..j
  std::span<const double> layer(int j) const;

  BernoulliWeights weights_;
  std::vector<double> prefix_;
};

/// log(P_n / P_0) evaluated factor by factor; n_k = 0 contributes nothing.
double log_ratio_exact(const OccupationVector& n, const EnsembleParams& params, const BernoulliWeights& weights);
double log_ratio_exact(const OccupationVector& n, const EnsembleParams& params);

/// -log(R^2 / (1 - c)) * sum_j n_j.
double log_ratio_approx(const OccupationVector& n, const EnsembleParams& params);

IndexSet sample_conditioned_indexset(const EnsembleParams& params, int m, RandomStream& rng);

/// log P(#{|lambda| > R} = N_c).
double overcrowding_probability_exact(const EnsembleParams& params);

struct AsymptoticProbability {
  double log_value = 0.0;         ///< log_hole_product + series.log_value
  double log_hole_product = 0.0;  ///< sum_{k=N-N_c}^{N-1} log Q(k + 1, N R^2)
  double log_hole_product_alt = 0.0;  ///< sum_{j=1}^{N_c} log Q(j, N_c R^2), reported only
  partitions::PartitionSeries series;
};

/// Hole product times sum_l p(l) (R^2 / (1 - c))^{-l}.
AsymptoticProbability overcrowding_probability_asymptotic(const EnsembleParams& params, double rel_tol = 1e-14);

}  // namespace overcrowd::mixture
