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

// File formats: JSON and CSV for kernel grids, point configurations and
// probability reports. Doubles are written in the shortest form that
// parses back to the same bits; non-finite values are written as the
// strings "inf", "-inf" and "nan".

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "overcrowd/kernels.hpp"
#include "overcrowd/sampler.hpp"

namespace overcrowd::io {

std::string format_double(double x);
/// Inverse of format_double; throws std::invalid_argument on junk.
double parse_double(std::string_view text);

std::string kernel_grid_to_json(const KernelGrid& grid);
KernelGrid kernel_grid_from_json(std::string_view text);

/// One row per (z, w) pair: z_re,z_im,w_re,w_im,K_re,K_im.
std::string kernel_grid_to_csv(const KernelGrid& grid);

/// The pairwise content of a kernel grid, as recovered from CSV.
struct KernelTable {
  std::vector<PointPair> pairs;
  std::vector<Complex> values;
  bool operator==(const KernelTable&) const = default;
};
KernelTable kernel_table(const KernelGrid& grid);
/// Accepts the six-column layout above; extra trailing columns are ignored.
KernelTable kernel_table_from_csv(std::string_view text);

/// Output of kernel --compare: K_a - K_b on a list of pairs.
struct KernelComparison {
  KernelSpec a;
  KernelSpec b;
  std::vector<PointPair> pairs;
  std::vector<Complex> differences;
  SupDifference sup;
};

KernelComparison compare_kernels(const Kernel& a, const Kernel& b, std::vector<PointPair> pairs);
std::string comparison_to_json(const KernelComparison& cmp);
KernelComparison comparison_from_json(std::string_view text);
/// Same six columns as the grid CSV, with K_re, K_im holding the difference.
std::string comparison_to_csv(const KernelComparison& cmp);

std::string configuration_to_json(const PointConfiguration& config);
PointConfiguration configuration_from_json(std::string_view text);
/// Columns re,im,region.
std::string configuration_to_csv(const PointConfiguration& config);
/// Sidecar for the CSV form: everything but the points.
std::string configuration_header_json(const PointConfiguration& config);
PointConfiguration configuration_from_csv(std::string_view csv, std::string_view header_json);

/// Output of the prob command.
struct ProbReport {
  int n = 0;
  double c = 0.0;
  double radius = 0.0;
  int n_outside = 0;
  double log_exact = 0.0;
  double log_asymptotic = 0.0;
  double log_ratio = 0.0;  ///< log_exact - log_asymptotic
  double ratio = 0.0;
  double log_hole_product = 0.0;
  double log_partition_series = 0.0;
  std::size_t series_terms = 0;
  double log_series_tail_bound = 0.0;
  double log_hole_product_alt = 0.0;
  std::optional<double> log_oracle;  ///< 2^N enumeration, when requested
};

/// Fills every field; the oracle needs N <= 24.
ProbReport make_prob_report(const EnsembleParams& params, double rel_tol, bool oracle);
std::string prob_report_to_json(const ProbReport& report);
ProbReport prob_report_from_json(std::string_view text);

}  // namespace overcrowd::io
