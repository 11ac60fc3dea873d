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

#include "hardy/sequential.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "hardy/reference.h"
#include "hardy/verify.h"

using namespace hardy;

TEST(sequential, luders_update) {
    auto r = luders_update(make_eta(), make_observable(5), 0);
    // (I - P5) eta = (1,0,0)/sqrt3.
    EXPECT_NEAR(r.probability, 1.0 / 3, EXACT_TOL);
    ASSERT_TRUE(r.post_state.has_value());
    EXPECT_LE((r.post_state->amplitudes() - Vector3(1, 0, 0)).cwiseAbs().maxCoeff(), EXACT_TOL);

    auto v3 = make_observable(3).defining_vector();
    auto e = luders_update(v3, make_observable(3), 1);
    EXPECT_NEAR(e.probability, 1, EXACT_TOL);
    ASSERT_TRUE(e.post_state.has_value());
    EXPECT_LE((e.post_state->amplitudes() - Vector3(0, 0, 1)).cwiseAbs().maxCoeff(), EXACT_TOL);

    EXPECT_NEAR(luders_update(make_eta(), make_observable(1), 1).probability, 1.0 / 9, EXACT_TOL);
}

TEST(sequential, luders_null_branch) {
    auto v3 = make_observable(3).defining_vector();
    auto r = luders_update(v3, make_observable(3), 0);
    EXPECT_FALSE(r.post_state.has_value());
    EXPECT_LT(r.probability, NULL_BRANCH_PROBABILITY);
    EXPECT_THROW(luders_update(v3, make_observable(3), 2), std::invalid_argument);
}

TEST(sequential, joint_distribution_examples) {
    auto eta = make_eta();
    EXPECT_NEAR(joint_distribution(eta, make_observable(1), make_observable(2))(0, 1), 2.0 / 3, 1e-12);
    EXPECT_NEAR(joint_distribution(eta, make_observable(5), make_observable(1))(0, 1), 1.0 / 9, 1e-12);
    for (int i = 1; i <= 5; i++) {
        auto same = joint_distribution(eta, make_observable(i), make_observable(i));
        EXPECT_NEAR(same(0, 1), 0, EXACT_TOL);
        EXPECT_NEAR(same(1, 0), 0, EXACT_TOL);
        EXPECT_NEAR(joint_distribution(eta, make_observable(i), make_observable(next_id(i)))(1, 1), 0, EXACT_TOL);
    }
}

TEST(sequential, order_asymmetry) {
    auto eta = make_eta();
    EXPECT_LE(order_asymmetry(eta, make_observable(1), make_observable(2)), EXACT_TOL);
    EXPECT_EQ(order_asymmetry(eta, make_observable(3), make_observable(3)), 0);

    // Both orders of (4,5) written out: P4 = diag(1,0,0) and P5 = |v5><v5| act on
    // disjoint coordinates, so every entry follows from the squared amplitudes.
    auto f = joint_distribution(eta, make_observable(4), make_observable(5));
    auto r = joint_distribution(eta, make_observable(5), make_observable(4));
    EXPECT_NEAR(f(1, 0), 1.0 / 3, EXACT_TOL);
    EXPECT_NEAR(f(0, 1), 2.0 / 3, EXACT_TOL);
    EXPECT_NEAR(r(0, 1), 1.0 / 3, EXACT_TOL);
    EXPECT_NEAR(r(1, 0), 2.0 / 3, EXACT_TOL);
    EXPECT_LE(order_asymmetry(eta, make_observable(4), make_observable(5)), EXACT_TOL);

    // Non-commuting pairs are order dependent.
    EXPECT_GT(order_asymmetry(eta, make_observable(1), make_observable(3)), 0.01);
}

TEST(sequential, hardy_conditions) {
    auto h = hardy_conditions(make_eta());
    EXPECT_NEAR(h.sum_12_23, 2.0 / 3 + 1.0 / 3, 1e-12);
    EXPECT_NEAR(h.sum_34_45, 1.0 / 3 + 2.0 / 3, 1e-12);
    EXPECT_NEAR(h.p_51, 1.0 / 9, 1e-12);

    // Chain on v3 by hand: (I - P5) v3 = (0, -1/2, 1/2), and <v1|(0, -1/2, 1/2)> = 1/sqrt3.
    EXPECT_NEAR(hardy_conditions(make_observable(3).defining_vector()).p_51, 1.0 / 3, EXACT_TOL);

    // <v5|psi> = 0 leaves psi untouched by the first measurement.
    StateVector psi = StateVector::normalized(Vector3(1, 1, -1));
    double overlap = std::norm(inner_product(make_observable(1).defining_vector(), psi));
    EXPECT_NEAR(hardy_conditions(psi).p_51, overlap, EXACT_TOL);
}

TEST(sequential, kcbs_value) {
    auto k = kcbs_value(make_eta());
    EXPECT_NEAR(k.s_value, 19.0 / 9, 1e-12);
    double sum = 0;
    for (size_t i = 0; i < 5; i++) {
        EXPECT_NEAR(k.terms[i], IDEAL_TERMS[i], 1e-12);
        EXPECT_NEAR(k.terms[i], PUBLISHED_TABLE[i].ideal, 5e-4);
        sum += k.terms[i];
    }
    EXPECT_NEAR(k.s_value, sum, 1e-12);
    EXPECT_NEAR(kcbs_value(make_observable(1).defining_vector()).terms[0], 0, EXACT_TOL);
    EXPECT_NEAR(0.667 + 0.333 + 0.333 + 0.667 + 0.111, 2.111, 1e-12);
}

TEST(sequential, adjacency) {
    EXPECT_EQ(next_id(5), 1);
    EXPECT_TRUE(are_adjacent(5, 1));
    EXPECT_TRUE(are_adjacent(1, 5));
    EXPECT_FALSE(are_adjacent(1, 3));
    EXPECT_FALSE(are_adjacent(2, 2));
    EXPECT_FALSE(are_adjacent(0, 1));
}

TEST(sequential, random_state_invariants) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 300; n++) {
        auto psi = random_state(rng);
        for (int i = 1; i <= 5; i++) {
            for (int j : {next_id(i), (i + 3) % 5 + 1}) {
                auto oi = make_observable(i);
                auto oj = make_observable(j);
                auto d = joint_distribution(psi, oi, oj);
                EXPECT_NEAR(d.total(), 1, EXACT_TOL);
                EXPECT_LE(d(1, 1), EXACT_TOL);
                EXPECT_LE(order_asymmetry(psi, oi, oj), EXACT_TOL);
                for (int a = 0; a <= 1; a++) {
                    EXPECT_NEAR(d(a, 0) + d(a, 1), (oi.outcome_projector(a) * psi.amplitudes()).squaredNorm(), EXACT_TOL);
                    EXPECT_GE(d(a, 0), 0);
                    EXPECT_LE(d(a, 1), 1);
                }
            }
        }
        auto h = hardy_conditions(psi);
        EXPECT_LE(h.sum_12_23, 1 + EXACT_TOL);
        EXPECT_LE(h.sum_34_45, 1 + EXACT_TOL);
    }
}
