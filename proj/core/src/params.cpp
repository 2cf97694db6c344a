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

#include "overcrowd/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "overcrowd/error.hpp"

namespace overcrowd {

EnsembleParams::EnsembleParams(int n, double c, double radius) : n_(n), c_(c), radius_(radius) {
  if (n < 1) throw InvalidParams("N must be a positive integer");
  if (!std::isfinite(c) || !(c > 0.0) || !(c <= 1.0)) throw InvalidParams("c must lie in (0, 1]");
  if (!std::isfinite(radius) || !(radius > 0.0) || !(radius < 1.0)) {
    throw InvalidParams("R must lie in (0, 1)");
  }
  if (!(radius * radius > 1.0 - c)) {
    throw InvalidParams("overcrowding condition R^2 > 1 - c violated (R^2 = " +
                        std::to_string(radius * radius) + ", 1 - c = " + std::to_string(1.0 - c) + ")");
  }
  // floor(cN), nudged so products like 0.29 * 100 do not drop a unit.
  n_outside_ = static_cast<int>(std::floor(c * n + 1e-9));
  if (n_outside_ < 1 || n_outside_ > n) {
    throw InvalidParams("N_c = floor(cN) must satisfy 1 <= N_c <= N (got " + std::to_string(n_outside_) + ")");
  }
}

double EnsembleParams::decay_base() const {
  if (c_ == 1.0) return std::numeric_limits<double>::infinity();
  return radius_ * radius_ / (1.0 - c_);
}

IndexSet::IndexSet(int universe, std::vector<int> members) : universe_(universe), members_(std::move(members)) {
  if (universe < 0) throw std::invalid_argument("IndexSet: negative universe");
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= universe) {
      throw std::invalid_argument("IndexSet: member " + std::to_string(members_[i]) + " outside [0, " +
                                  std::to_string(universe) + ")");
    }
    if (i > 0 && members_[i] == members_[i - 1]) {
      throw std::invalid_argument("IndexSet: duplicate member " + std::to_string(members_[i]));
    }
  }
}

IndexSet IndexSet::top(int universe, int m) {
  if (m < 0 || m > universe) throw std::invalid_argument("IndexSet::top: size out of range");
  std::vector<int> members(m);
  std::iota(members.begin(), members.end(), universe - m);
  return IndexSet(universe, std::move(members));
}

IndexSet IndexSet::all(int universe) { return top(universe, universe); }

bool IndexSet::contains(int k) const { return std::binary_search(members_.begin(), members_.end(), k); }

IndexSet IndexSet::complement() const {
  std::vector<int> out;
  out.reserve(universe_ - members_.size());
  auto it = members_.begin();
  for (int k = 0; k < universe_; ++k) {
    if (it != members_.end() && *it == k) {
      ++it;
    } else {
      out.push_back(k);
    }
  }
  return IndexSet(universe_, std::move(out));
}

OccupationVector::OccupationVector(const EnsembleParams& params, std::vector<int> entries)
    : entries_(std::move(entries)) {
  const int m = params.n_outside();
  if (static_cast<int>(entries_.size()) != m) {
    throw std::invalid_argument("OccupationVector: expected " + std::to_string(m) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  int upper = params.n_inside();
  for (int v : entries_) {
    if (v < 0 || v > upper) {
      throw std::invalid_argument("OccupationVector: entries must be weakly decreasing within [0, N - N_c]");
    }
    upper = v;
  }
}

OccupationVector OccupationVector::zero(const EnsembleParams& params) {
  return OccupationVector(params, std::vector<int>(params.n_outside(), 0));
}

long long OccupationVector::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0LL); }

IndexSet occupation_to_indexset(const OccupationVector& n, const EnsembleParams& params) {
  const int inside = params.n_inside();
  const auto& e = n.entries();
  if (static_cast<int>(e.size()) != params.n_outside()) {
    throw std::invalid_argument("occupation_to_indexset: size mismatch with params");
  }
  std::vector<int> members(e.size());
  for (std::size_t k = 1; k <= e.size(); ++k) {
    const int x = inside + static_cast<int>(k) - e[k - 1];
    members[k - 1] = x - 1;
  }
  return IndexSet(params.n(), std::move(members));
}

OccupationVector indexset_to_occupation(const IndexSet& set, const EnsembleParams& params) {
  if (set.universe() != params.n() || set.size() != params.n_outside()) {
    throw std::invalid_argument("indexset_to_occupation: index set must have N_c members in {0..N-1}");
  }
  const int inside = params.n_inside();
  std::vector<int> entries(set.size());
  for (int k = 1; k <= set.size(); ++k) {
    const int x = set.members()[k - 1] + 1;
    entries[k - 1] = inside + k - x;
  }
  return OccupationVector(params, std::move(entries));
}

}  // namespace overcrowd
