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

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "overcrowd/error.hpp"

namespace overcrowd {
namespace {

TEST(Params, DerivedQuantities) {
  const EnsembleParams p(100, 0.3, 0.9);
  EXPECT_EQ(p.n_outside(), 30);
  EXPECT_EQ(p.n_inside(), 70);
  EXPECT_DOUBLE_EQ(p.cutoff(), 81.0);
  EXPECT_NEAR(p.decay_base(), 0.81 / 0.7, 1e-15);
  EXPECT_NEAR(p.excess(), 0.11, 1e-15);
  EXPECT_TRUE(std::isinf(EnsembleParams(10, 1.0, 0.5).decay_base()));
}

TEST(Params, RejectsOutsideRegime) {
  EXPECT_THROW(EnsembleParams(10, 0.5, 0.5), InvalidParams);  // R^2 = 1 - c
  EXPECT_THROW(EnsembleParams(10, 0.5, 1.0), InvalidParams);
  EXPECT_THROW(EnsembleParams(10, 0.0, 0.9), InvalidParams);
  EXPECT_THROW(EnsembleParams(10, 1.5, 0.9), InvalidParams);
  EXPECT_THROW(EnsembleParams(0, 0.5, 0.9), InvalidParams);
  EXPECT_THROW(EnsembleParams(3, 0.2, 0.95), InvalidParams);  // N_c = 0
}

TEST(IndexSet, BasicOperations) {
  const IndexSet s(6, {4, 1, 2});
  EXPECT_EQ(s.members(), (std::vector<int>{1, 2, 4}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(3));
  EXPECT_EQ(s.complement().members(), (std::vector<int>{0, 3, 5}));
  EXPECT_EQ(s.complement().complement(), s);
  EXPECT_EQ(IndexSet::top(6, 2).members(), (std::vector<int>{4, 5}));
  EXPECT_EQ(IndexSet::all(3).size(), 3);
  EXPECT_THROW(IndexSet(4, {1, 1}), std::invalid_argument);
  EXPECT_THROW(IndexSet(4, {4}), std::invalid_argument);
}

TEST(Occupation, BijectionRoundTrip) {
  const EnsembleParams p(9, 0.4, 0.9);  // N_c = 3, N - N_c = 6
  EXPECT_EQ(occupation_to_indexset(OccupationVector::zero(p), p), IndexSet::top(9, 3));
  // every 3-subset of {0..8}
  int count = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      for (int c = b + 1; c < 9; ++c) {
        const IndexSet s(9, {a, b, c});
        const auto n = indexset_to_occupation(s, p);
        EXPECT_EQ(occupation_to_indexset(n, p), s);
        EXPECT_LE(n.entries().front(), 6);
        ++count;
      }
  EXPECT_EQ(count, 84);
}

TEST(Occupation, ValidatesOrdering) {
  const EnsembleParams p(9, 0.4, 0.9);
  EXPECT_NO_THROW(OccupationVector(p, {3, 1, 0}));
  EXPECT_THROW(OccupationVector(p, {1, 3, 0}), std::invalid_argument);
  EXPECT_THROW(OccupationVector(p, {7, 0, 0}), std::invalid_argument);
  EXPECT_THROW(OccupationVector(p, {1, 0}), std::invalid_argument);
  EXPECT_EQ(OccupationVector(p, {3, 1, 0}).total(), 4);
}

}  // namespace
}  // namespace overcrowd
