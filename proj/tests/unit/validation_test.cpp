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

#include "overcrowd/validation.hpp"

#include <gtest/gtest.h>

namespace overcrowd::validation {
namespace {

TEST(Validation, ToleranceOverrides) {
  Tolerances t;
  t.set("c7_ks=0.05");
  EXPECT_DOUBLE_EQ(t["c7_ks"], 0.05);
  t.set("c1_rel", 1e-10);
  EXPECT_DOUBLE_EQ(t["c1_rel"], 1e-10);
  EXPECT_THROW(t.set("nope=1"), std::invalid_argument);
  EXPECT_THROW(t.set("c1_rel"), std::invalid_argument);
  EXPECT_THROW(t.set("c1_rel=abc"), std::invalid_argument);
}

TEST(Validation, SelectedCriteriaPass) {
  Options o;
  o.quick = true;
  o.only = {1, 6, 9, 10};
  int seen = 0;
  o.on_result = [&](const CriterionResult&) { ++seen; };
  const auto r = run_acceptance(o);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(seen, 4);
  for (const auto& c : r) EXPECT_TRUE(c.passed) << format_result(c);
}

TEST(Validation, ImpossibleToleranceFails) {
  Options o;
  o.only = {1};
  o.tol.set("c1_rel", 1e-30);
  const auto r = run_acceptance(o);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].passed);
  EXPECT_EQ(format_result(r[0]).rfind("[FAIL] C1 ", 0), 0u);
}

}  // namespace
}  // namespace overcrowd::validation
