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

// Exact sampling of the conditioned ensemble.
//
// Given J, the outside points form the projection process onto
// span{phi_k : k in J} and the inside points the one onto
// span{phi~_k : k not in J}. Both bases are monomials times a radial
// weight, so the moduli are independent with r_k^2 ~ Gamma(k + 1)/N
// truncated to |z| > R or |z| < R. The radial sampler returns exactly those
// moduli with uniform angles; it is correct for radial statistics only,
// since the joint angle law is not a product. The sequential sampler draws
// the full 2D configuration.

#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "overcrowd/mixture.hpp"
#include "overcrowd/params.hpp"
#include "overcrowd/rng.hpp"

namespace overcrowd {

using Complex = std::complex<double>;

enum class Region { outer, inner, full };
enum class SamplerKind { radial, sequential };

std::string_view to_string(Region region);
std::string_view to_string(SamplerKind kind);
Region parse_region(std::string_view name);
SamplerKind parse_sampler_kind(std::string_view name);

struct PointConfiguration {
  std::vector<Complex> points;
  std::vector<Region> labels;  ///< outer or inner, one per point
  EnsembleParams params;
  IndexSet index_set;
  Region region = Region::full;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  SamplerKind sampler = SamplerKind::sequential;

  int count(Region label) const;
};

/// Truncated radial laws of r_k^2 for one (N, R).
///   outer: P(r^2 > t) = Q(k + 1, N t) / Q(k + 1, N R^2),  t >= R^2
///   inner: P(r^2 <= t) = P(k + 1, N t) / P(k + 1, N R^2), 0 <= t <= R^2
class RadialLaw {
 public:
  explicit RadialLaw(const EnsembleParams& params);

  const EnsembleParams& params() const { return params_; }
  double log_survival_outer(int k, double t) const;
  double log_cdf_inner(int k, double t) const;
  /// t with survival_outer(k, t) = u, to 1e-12 in t.
  double quantile_outer(int k, double u) const;
  /// t with cdf_inner(k, t) = u, to 1e-12 in t.
  double quantile_inner(int k, double u) const;

  /// log |phi_k(z)| for the outer (Gamma) or inner (gamma) normalization.
  double log_abs_basis(int k, double r, bool outer) const;

  static constexpr double kTolerance = 1e-12;

 private:
  EnsembleParams params_;
  std::vector<double> log_q0_;  // log Q(k + 1, N R^2)
  std::vector<double> log_p0_;  // log P(k + 1, N R^2)
};

/// Moduli r_k, k in J, in increasing k.
std::vector<double> sample_radii_outer(const EnsembleParams& params, const IndexSet& set, RandomStream& rng);
/// Moduli r_k, k not in J, in increasing k.
std::vector<double> sample_radii_inner(const EnsembleParams& params, const IndexSet& set, RandomStream& rng);

enum class Basis { outer, inner_complement };

struct SequentialStats {
  std::uint64_t proposals = 0;
};

/// Sequential projection sampler: proposal = uniform basis index, then its
/// radial law and a uniform angle; acceptance = residual / K(z, z) after
/// projecting out the directions already chosen.
class SequentialSampler {
 public:
  explicit SequentialSampler(const EnsembleParams& params);

  const RadialLaw& law() const { return law_; }

  /// Points of the projection process for `basis`. Throws SamplingError
  /// if any point needs more than kMaxProposals proposals.
  std::vector<Complex> sample(const IndexSet& set, Basis basis, RandomStream& rng, SequentialStats* stats = nullptr) const;
  /// Radial moduli with uniform angles.
  std::vector<Complex> sample_radial(const IndexSet& set, Basis basis, RandomStream& rng) const;

  static constexpr std::uint64_t kMaxProposals = 1'000'000;

 private:
  RadialLaw law_;
};

PointConfiguration sample_sequential(const EnsembleParams& params, const IndexSet& set, Basis basis, RandomStream& rng);

/// Draws J given |J| = N_c, then outer points from J and inner points from
/// its complement, consuming rng in that order.
class EnsembleSampler {
 public:
  explicit EnsembleSampler(const EnsembleParams& params);

  const EnsembleParams& params() const { return params_; }
  const mixture::ConditionalSampler& index_sampler() const { return index_sampler_; }
  const SequentialSampler& point_sampler() const { return point_sampler_; }

  PointConfiguration sample(RandomStream& rng, SamplerKind kind) const;
  /// Points for a given J.
  PointConfiguration sample_given(const IndexSet& set, RandomStream& rng, SamplerKind kind) const;

 private:
  EnsembleParams params_;
  mixture::ConditionalSampler index_sampler_;
  SequentialSampler point_sampler_;
};

PointConfiguration sample_conditioned_ensemble(const EnsembleParams& params, RandomStream& rng,
                                               SamplerKind kind = SamplerKind::sequential);

}  // namespace overcrowd
