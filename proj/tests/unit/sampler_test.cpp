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

#include "overcrowd/sampler.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "overcrowd/statistics.hpp"

namespace overcrowd {
namespace {

TEST(Sampler, NamesRoundTrip) {
  for (auto r : {Region::outer, Region::inner, Region::full}) EXPECT_EQ(parse_region(to_string(r)), r);
  for (auto s : {SamplerKind::radial, SamplerKind::sequential}) EXPECT_EQ(parse_sampler_kind(to_string(s)), s);
  EXPECT_THROW(parse_region("middle"), std::invalid_argument);
}

TEST(RadialLaw, QuantilesInvertBoostTails) {
  const EnsembleParams p(60, 0.5, 0.9);
  const RadialLaw law(p);
  const double r2 = 0.81;
  for (int k : {0, 10, 45, 59}) {
    const double q0 = boost::math::gamma_q(k + 1.0, p.cutoff());
    const double p0 = boost::math::gamma_p(k + 1.0, p.cutoff());
    for (double u : {1e-9, 0.01, 0.5, 0.93, 1 - 1e-9}) {
      const double t = law.quantile_outer(k, u);
      EXPECT_GE(t, r2);
      EXPECT_NEAR(boost::math::gamma_q(k + 1.0, 60 * t) / q0, u, 1e-10 * std::max(u, 1e-3)) << k << " " << u;
      const double s = law.quantile_inner(k, u);
      EXPECT_LE(s, r2);
      EXPECT_NEAR(boost::math::gamma_p(k + 1.0, 60 * s) / p0, u, 1e-10 * std::max(u, 1e-3)) << k << " " << u;
    }
  }
}

TEST(RadialLaw, Endpoints) {
  const RadialLaw law(EnsembleParams(30, 0.5, 0.9));
  EXPECT_NEAR(law.log_survival_outer(4, 0.81), 0.0, 1e-15);
  EXPECT_NEAR(law.log_cdf_inner(4, 0.81), 0.0, 1e-15);
  EXPECT_LT(law.log_survival_outer(4, 2.0), law.log_survival_outer(4, 1.0));
}

TEST(Sampler, RadiiFollowTruncatedGamma) {
  const EnsembleParams p(20, 0.5, 0.8);
  const IndexSet j(20, {7});
  RandomStream rng(1, 0);
  std::vector<double> r2;
  for (int i = 0; i < 20000; ++i) r2.push_back(std::pow(sample_radii_outer(p, j, rng)[0], 2));
  const double q0 = boost::math::gamma_q(8.0, p.cutoff());
  const double d = stats::ks_one_sample(r2, [&](double t) { return 1 - boost::math::gamma_q(8.0, 20 * t) / q0; });
  EXPECT_LT(d, 1.63 / std::sqrt(20000.0));  // 1% level
}

TEST(Sampler, SequentialOnSingletonIsRadial) {
  // |J| = 1: one proposal, always accepted
  const EnsembleParams p(15, 0.5, 0.8);
  const SequentialSampler s(p);
  RandomStream rng(2, 0);
  SequentialStats st;
  const auto pts = s.sample(IndexSet(15, {3}), Basis::outer, rng, &st);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(st.proposals, 1u);
  EXPECT_GT(std::abs(pts[0]), 0.8);
}

TEST(Sampler, SequentialAgreesWithRadialModuli) {
  const EnsembleParams p(12, 0.5, 0.85);
  const SequentialSampler s(p);
  const IndexSet j(12, {2, 6, 9, 10, 11});
  RandomStream a(3, 0), b(3, 1);
  std::vector<double> seq, rad;
  for (int i = 0; i < 3000; ++i) {
    for (auto z : s.sample(j, Basis::outer, a)) seq.push_back(std::abs(z));
    for (auto z : s.sample_radial(j, Basis::outer, b)) rad.push_back(std::abs(z));
  }
  const double n = seq.size();
  EXPECT_LT(stats::ks_two_sample(seq, rad), 1.95 * std::sqrt(2 / n));  // 0.1% level
}

TEST(Sampler, RepulsionLowersNearbyPairs) {
  // two points of a projection process are rarely close compared with
  // independent draws from the same radial laws
  const EnsembleParams p(10, 0.5, 0.8);
  const SequentialSampler s(p);
  const IndexSet j(10, {8, 9});
  RandomStream a(4, 0), b(4, 1);
  int close_seq = 0, close_rad = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto x = s.sample(j, Basis::outer, a), y = s.sample_radial(j, Basis::outer, b);
    close_seq += std::abs(x[0] - x[1]) < 0.2;
    close_rad += std::abs(y[0] - y[1]) < 0.2;
  }
  EXPECT_LT(close_seq, close_rad / 2);
}

TEST(Ensemble, CountsAndLabels) {
  const EnsembleParams p(24, 0.5, 0.85);
  const EnsembleSampler es(p);
  RandomStream rng(5, 0);
  for (auto kind : {SamplerKind::sequential, SamplerKind::radial}) {
    const auto c = es.sample(rng, kind);
    EXPECT_EQ(c.points.size(), 24u);
    EXPECT_EQ(c.count(Region::outer), 12);
    EXPECT_EQ(c.count(Region::inner), 12);
    EXPECT_EQ(c.index_set.size(), 12);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_EQ(std::abs(c.points[i]) > 0.85, c.labels[i] == Region::outer);
    }
  }
}

TEST(Ensemble, SeedDeterminism) {
  const EnsembleParams p(16, 0.5, 0.9);
  RandomStream a(77, 2), b(77, 2);
  const auto x = sample_conditioned_ensemble(p, a), y = sample_conditioned_ensemble(p, b);
  EXPECT_EQ(x.points, y.points);
  EXPECT_EQ(x.index_set, y.index_set);
  EXPECT_EQ(x.seed, 77u);
  EXPECT_EQ(x.stream, 2u);
}

}  // namespace
}  // namespace overcrowd
