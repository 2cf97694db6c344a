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

#include "overcrowd/serialization.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include <gtest/gtest.h>
#include <json.hpp>

namespace overcrowd::io {
namespace {

TEST(Serialization, DoublesRoundTripBitExact) {
  RandomStream rng(8, 0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::bit_cast<double>(rng());
    if (!std::isfinite(x)) continue;
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_double(format_double(x))), std::bit_cast<std::uint64_t>(x));
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(parse_double("-inf"), -std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isnan(parse_double("nan")));
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double(""), std::invalid_argument);
}

TEST(Serialization, KernelGridJsonRoundTrip) {
  const EnsembleParams p(30, 0.5, 0.9);
  const Kernel k({KernelKind::edge_zoomed, p, IndexSet::top(30, 15)});
  const auto g = tabulate(k, lattice(0.1, 1.0, 3, -0.5, 0.5, 2), lattice(0.2, 0.4, 2, 0.0, 0.0, 1));
  const auto h = kernel_grid_from_json(kernel_grid_to_json(g));
  EXPECT_EQ(h.values, g.values);
  EXPECT_EQ(h.z_points, g.z_points);
  EXPECT_EQ(h.w_points, g.w_points);
  EXPECT_EQ(h.spec.kind, KernelKind::edge_zoomed);
  EXPECT_EQ(h.spec.params, p);
  EXPECT_EQ(h.spec.index_set, IndexSet::top(30, 15));
  EXPECT_EQ(kernel_grid_to_json(h), kernel_grid_to_json(g));
}

TEST(Serialization, KernelGridCsvRoundTrip) {
  const Kernel k({KernelKind::limit_hard_wall, {}, {}});
  const auto g = tabulate_diagonal(k, lattice(0.0, 2.0, 5, -1.0, 1.0, 3));
  const auto t = kernel_table_from_csv(kernel_grid_to_csv(g));
  EXPECT_EQ(t, kernel_table(g));
  EXPECT_EQ(t.pairs.size(), 15u);
  EXPECT_THROW(kernel_table_from_csv("a,b\n1,2\n"), std::invalid_argument);
}

TEST(Serialization, ComparisonRoundTrip) {
  const EnsembleParams p(40, 0.5, 0.9);
  const Kernel a({KernelKind::outer, p, {}}), b({KernelKind::ginibre, p, {}});
  const auto cmp = compare_kernels(a, b, {{{1.0, 0.1}, {1.05, -0.1}}, {{0.95, 0.0}, {0.95, 0.0}}});
  const auto back = comparison_from_json(comparison_to_json(cmp));
  EXPECT_EQ(back.differences, cmp.differences);
  EXPECT_EQ(back.sup.value, cmp.sup.value);
  EXPECT_EQ(back.a.kind, KernelKind::outer);
  EXPECT_EQ(comparison_to_json(back), comparison_to_json(cmp));
  EXPECT_NE(comparison_to_csv(cmp).find("z_re,z_im,w_re,w_im,K_re,K_im"), std::string::npos);
}

TEST(Serialization, ConfigurationRoundTrips) {
  const EnsembleParams p(14, 0.5, 0.85);
  RandomStream rng(99, 4);
  const auto c = sample_conditioned_ensemble(p, rng);
  const auto j = configuration_from_json(configuration_to_json(c));
  EXPECT_EQ(j.points, c.points);
  EXPECT_EQ(j.labels, c.labels);
  EXPECT_EQ(j.index_set, c.index_set);
  EXPECT_EQ(j.seed, 99u);
  EXPECT_EQ(j.stream, 4u);
  const auto v = configuration_from_csv(configuration_to_csv(c), configuration_header_json(c));
  EXPECT_EQ(v.points, c.points);
  EXPECT_EQ(v.labels, c.labels);
  EXPECT_EQ(configuration_to_json(v), configuration_to_json(c));
}

TEST(Serialization, RejectsWrongSchema) {
  nlohmann::json j = nlohmann::json::parse(
      kernel_grid_to_json(tabulate_diagonal(Kernel({KernelKind::limit_hard_wall, {}, {}}), {{0.5, 0.0}})));
  j["schema"] = "something/else";
  EXPECT_THROW(kernel_grid_from_json(j.dump()), std::invalid_argument);
  EXPECT_THROW(configuration_from_json("{not json"), std::invalid_argument);
}

TEST(Serialization, ProbReport) {
  const EnsembleParams p(16, 0.5, 0.85);
  const auto r = make_prob_report(p, 1e-14, true);
  ASSERT_TRUE(r.log_oracle.has_value());
  EXPECT_NEAR(*r.log_oracle, r.log_exact, 1e-12 * std::abs(r.log_exact));
  EXPECT_NEAR(r.log_ratio, r.log_exact - r.log_asymptotic, 1e-15);
  EXPECT_NEAR(r.ratio, std::exp(r.log_ratio), 1e-15);
  EXPECT_EQ(r.n_outside, 8);
  const auto back = prob_report_from_json(prob_report_to_json(r));
  EXPECT_EQ(back.log_exact, r.log_exact);
  EXPECT_EQ(back.log_oracle, r.log_oracle);
  EXPECT_EQ(back.series_terms, r.series_terms);
  EXPECT_EQ(prob_report_to_json(back), prob_report_to_json(r));
  // c = 1: the series is exactly one term and the tail bound is -inf
  const auto full = prob_report_from_json(prob_report_to_json(make_prob_report(EnsembleParams(10, 1.0, 0.5), 1e-14, false)));
  EXPECT_EQ(full.log_series_tail_bound, -std::numeric_limits<double>::infinity());
  EXPECT_FALSE(full.log_oracle.has_value());
}

}  // namespace
}  // namespace overcrowd::io
