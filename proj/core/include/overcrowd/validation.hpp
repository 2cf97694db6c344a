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

// The acceptance suite: one numbered check per criterion, each reporting
// pass/fail plus the measured numbers.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace overcrowd::validation {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Pinned tolerances. Keys accepted by set():
///   c1_rel        relative agreement with subset enumeration
///   c2_const      bound on |rho - 1| N / log^3 N
///   c3_margin     slack on the constant fitted at N = 400
///   c4_lo, c4_hi  range for the sup ratio per doubling of N
///   c6_min_eig    lower bound on the Gram-matrix spectrum
///   c7_ks         two-sample KS distance
///   c7_p          chi-square p-value floor
///   c8_rel        log_Q vs log_Q_integer relative difference
///   c8_a5_const   bound on a * err / (1 + 1/(lambda - 1)^2)
///   c8_a5_spread  max/min of that quantity across a, per lambda
///   c9_rel        partition series truncation tolerance
///   c10_slack     k in the bound (n / (N(1 - c))) (1 + k n / sqrt(l))
struct Tolerances {
  std::map<std::string, double> values{
      {"c1_rel", 1e-12},      {"c2_const", 0.05},    {"c3_margin", 1.5},   {"c4_lo", 1.6},
      {"c4_hi", 2.6},         {"c6_min_eig", -1e-10}, {"c7_ks", 0.02},      {"c7_p", 1e-3},
      {"c8_rel", 1e-12},      {"c8_a5_const", 2.0},  {"c8_a5_spread", 1.5}, {"c9_rel", 1e-14},
      {"c10_slack", 5.0},
  };

  double operator[](const std::string& key) const { return values.at(key); }
  /// Throws std::invalid_argument for unknown keys.
  void set(const std::string& key, double value);
  /// Parses KEY=VAL.
  void set(const std::string& assignment);
};

struct Options {
  bool quick = false;  ///< reduced sample sizes and N ranges
  Tolerances tol;
  /// Criteria to run (1..10); empty means all.
  std::vector<int> only;
  /// Called after each criterion.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const Options& options);

/// "[PASS] C<id> <name> (<seconds>s): <detail>"
std::string format_result(const CriterionResult& result);

}  // namespace overcrowd::validation
