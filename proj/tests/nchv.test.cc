// Copyright 2026 The hardyctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hardy/nchv.h"

#include <algorithm>
#include <chrono>

#include "gtest/gtest.h"
#include "hardy/sequential.h"

using namespace hardy;

namespace {

DeterministicAssignment of(std::array<int, 5> v) {
    return DeterministicAssignment{v};
}

}  // namespace

TEST(nchv, assignment_value) {
    EXPECT_EQ(assignment_value(of({0, 1, 0, 1, 0})), 2);
    EXPECT_EQ(assignment_value(of({0, 0, 0, 0, 0})), 0);
    EXPECT_EQ(assignment_value(of({1, 1, 1, 1, 1})), 0);
    // Wraps around: a5 = 0, a1 = 1.
    EXPECT_EQ(assignment_value(of({1, 1, 1, 1, 0})), 1);
}

TEST(nchv, max_is_two) {
    auto start = std::chrono::steady_clock::now();
    auto r = nchv_max();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(r.value, 2);
    EXPECT_LT(seconds, 0.1);

    // Maximizers are the cyclic shifts of 01010 and 01011: two disjoint 0->1 steps
    // around a 5-cycle. Count by direct scan over bit patterns.
    int expected = 0;
    for (unsigned bits = 0; bits < 32; bits++) {
        int steps = 0;
        for (int k = 0; k < 5; k++) {
            steps += !((bits >> k) & 1) && ((bits >> ((k + 1) % 5)) & 1);
        }
        expected += steps == 2;
    }
    EXPECT_EQ(expected, 10);
    EXPECT_EQ(r.maximizers.size(), 10u);
    for (const auto &a : r.maximizers) {
        EXPECT_EQ(assignment_value(a), 2);
    }
    EXPECT_NE(std::find(r.maximizers.begin(), r.maximizers.end(), of({0, 1, 0, 1, 0})), r.maximizers.end());
}

TEST(nchv, max_with_first_box_full) {
    int best = -1;
    int slice = 0;
    for (const auto &a : all_assignments()) {
        if (a(1) == 1) {
            slice++;
            best = std::max(best, assignment_value(a));
        }
    }
    EXPECT_EQ(slice, 16);
    EXPECT_EQ(best, 2);
}

TEST(nchv, hardy_contradiction) {
    auto r = hardy_contradiction_check();
    EXPECT_TRUE(r.implication_holds());
    EXPECT_FALSE(r.satisfying.empty());
    for (const auto &a : r.satisfying) {
        EXPECT_TRUE(hardy_premise_c1(a));
        EXPECT_TRUE(hardy_premise_c2(a));
        EXPECT_FALSE(a(5) == 0 && a(1) == 1);
    }

    auto example = of({0, 1, 1, 0, 1});
    EXPECT_TRUE(example(1) == 0 && example(2) == 1);
    EXPECT_TRUE(example(4) == 0 && example(5) == 1);
    EXPECT_TRUE(hardy_premise_c1(example));
    EXPECT_TRUE(hardy_premise_c2(example));
    EXPECT_NE(std::find(r.satisfying.begin(), r.satisfying.end(), example), r.satisfying.end());

    auto without_c2 = hardy_contradiction_check({true, false});
    EXPECT_FALSE(without_c2.implication_holds());
    for (const auto &a : without_c2.counterexamples) {
        EXPECT_TRUE(a(5) == 0 && a(1) == 1);
        EXPECT_FALSE(hardy_premise_c2(a));
    }
    EXPECT_FALSE(hardy_contradiction_check({false, true}).implication_holds());

    // The quantum state satisfies both premises yet P(0,1|5,1) = 1/9.
    auto q = hardy_conditions(make_eta());
    EXPECT_NEAR(q.sum_12_23, 1, 1e-12);
    EXPECT_NEAR(q.sum_34_45, 1, 1e-12);
    EXPECT_GT(q.p_51, 0.1);
}

TEST(nchv, gpt_max) {
    auto r = gpt_max();
    EXPECT_EQ(r.value, Rational(5, 2));
    for (const auto &q : r.maximizer) {
        EXPECT_EQ(q, Rational(1, 2));
    }
    BehaviorVector half{{0.5, 0.5, 0.5, 0.5, 0.5}};
    EXPECT_TRUE(half.feasible());
    EXPECT_EQ(half.sum(), 2.5);

    // Every vertex is feasible and none exceeds 5/2. The polytope has the 11
    // independent sets of C5 (0/1 vertices) plus the all-halves point.
    EXPECT_EQ(r.vertices.size(), 12u);
    for (const auto &v : r.vertices) {
        Rational s = 0;
        for (const auto &x : v) {
            EXPECT_GE(x, 0);
            EXPECT_LE(x, 1);
            s += x;
        }
        EXPECT_LE(s, Rational(5, 2));
    }
}

TEST(nchv, assignments_are_feasible_behaviors) {
    for (const auto &a : all_assignments()) {
        auto b = induced_behavior(a);
        EXPECT_TRUE(b.feasible()) << a.str();
        EXPECT_LE(b.sum(), NCHV_BOUND);
    }
    BehaviorVector bad{{0.6, 0.6, 0, 0, 0}};
    EXPECT_FALSE(bad.feasible());
}

TEST(nchv, quantum_value_between_bounds) {
    double s = kcbs_value(make_eta()).s_value;
    EXPECT_GT(s, nchv_max().value);
    EXPECT_LT(s, boost::rational_cast<double>(gpt_max().value));
}

TEST(nchv, corrected_bound) {
    EXPECT_EQ(corrected_bound(0), 2.0);
    EXPECT_NEAR(corrected_bound(0.0062), 2.0031, 1e-12);
    EXPECT_NEAR(corrected_bound(0.021), 2.0105, 1e-12);
    EXPECT_EQ(corrected_bound(1), 2.5);
    for (double eps : {0.0, 0.0062, 0.021, 1.0}) {
        EXPECT_NEAR(corrected_bound(eps) - 2, eps / 2, 1e-12);
    }
}
