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

#pragma once

#include <cstddef>
#include <vector>

namespace overcrowd {

/// Matrix size N, overcrowding fraction c and disk radius R, with the
/// derived count N_c = floor(cN). Construction validates the overcrowding
/// regime 0 < R < 1, c in (0, 1], R^2 > 1 - c, 1 <= N_c <= N.
class EnsembleParams {
 public:
  EnsembleParams(int n, double c, double radius);

  int n() const { return n_; }
  double c() const { return c_; }
  double radius() const { return radius_; }
  /// floor(cN)
  int n_outside() const { return n_outside_; }
  int n_inside() const { return n_ - n_outside_; }
  /// N R^2, the common incomplete-gamma cutoff.
  double cutoff() const { return n_ * radius_ * radius_; }
  /// R^2 / (1 - c); +inf at c = 1.
  double decay_base() const;
  /// R^2 - 1 + c > 0, the excess mass that piles up at the wall.
  double excess() const { return radius_ * radius_ - 1.0 + c_; }

  bool operator==(const EnsembleParams&) const = default;

 private:
  int n_;
  double c_;
  double radius_;
  int n_outside_;
};

/// Sorted distinct subset of {0, ..., universe - 1}.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts the members; throws std::invalid_argument on duplicates or
  /// out-of-range entries.
  IndexSet(int universe, std::vector<int> members);

  /// {universe - m, ..., universe - 1}
  static IndexSet top(int universe, int m);
  static IndexSet all(int universe);

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const& { return members_; }
  /// By value on temporaries, so range-for over f().members() is safe.
  std::vector<int> members() && { return std::move(members_); }
  bool contains(int k) const;
  IndexSet complement() const;

  bool operator==(const IndexSet&) const = default;

 private:
  int universe_ = 0;
  std::vector<int> members_;
};

/// n = (n_1, ..., n_{N_c}) with N - N_c >= n_1 >= ... >= n_{N_c} >= 0.
class OccupationVector {
 public:
  OccupationVector() = default;
  /// Throws std::invalid_argument unless the entries satisfy the ordering
  /// and range constraints for `params`.
  OccupationVector(const EnsembleParams& params, std::vector<int> entries);

  static OccupationVector zero(const EnsembleParams& params);

  const std::vector<int>& entries() const { return entries_; }
  long long total() const;

  bool operator==(const OccupationVector&) const = default;

 private:
  std::vector<int> entries_;
};

/// The bijection n_k = N - N_c + k - x_k between occupation vectors and
/// index sets of size N_c. Kernel index j corresponds to x = j + 1, so the
/// zero vector maps to the top set J_0 = {N - N_c, ..., N - 1}.
IndexSet occupation_to_indexset(const OccupationVector& n, const EnsembleParams& params);
OccupationVector indexset_to_occupation(const IndexSet& set, const EnsembleParams& params);

}  // namespace overcrowd
