// Copyright 2026 The shortpulse Authors
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


#include "shortpulse/numeric_policy.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

namespace shortpulse {
namespace {

TEST(NumericPolicy, OverridesReplaceNamedFields) {
  NumericPolicy p;
  p.apply_overrides("nogo_tol=1e-7; quadrature_rel = 0.5,reprojection_interval=8");
  EXPECT_DOUBLE_EQ(p.nogo_tol, 1e-7);
  EXPECT_DOUBLE_EQ(p.quadrature_rel, 0.5);
  EXPECT_EQ(p.reprojection_interval, 8);
  EXPECT_DOUBLE_EQ(p.unitary_tol, NumericPolicy{}.unitary_tol);
}

TEST(NumericPolicy, RejectsUnknownKeysAndBadValues) {
  NumericPolicy p;
  EXPECT_THROW(p.apply_overrides("no_such_key=1"), std::invalid_argument);
  EXPECT_THROW(p.apply_overrides("nogo_tol=abc"), std::invalid_argument);
  EXPECT_THROW(p.apply_overrides("nogo_tol"), std::invalid_argument);
  EXPECT_THROW(p.apply_overrides("nogo_tol=-1"), std::invalid_argument);
  EXPECT_THROW(p.apply_overrides("reprojection_interval=0"), std::invalid_argument);
}

TEST(NumericPolicy, SerializationIsStableAndComplete) {
  NumericPolicy a, b;
  EXPECT_EQ(a.serialize(), b.serialize());
  b.apply_overrides("jacobian_tol=0.25");
  EXPECT_NE(a.serialize(), b.serialize());
  for (const auto& [name, value] : a.entries()) {
    EXPECT_NE(a.serialize().find(name + "="), std::string::npos) << name;
  }
}

}  // namespace
}  // namespace shortpulse
