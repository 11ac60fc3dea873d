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

#ifndef HARDY_SEQUENTIAL_H
#define HARDY_SEQUENTIAL_H

#include <array>
#include <optional>
#include <string>

#include "hardy/qutrit.h"

namespace hardy {

/// Post-states of branches with probability below this are left undefined.
constexpr double NULL_BRANCH_PROBABILITY = 1e-15;

/// Outcomes of a first and a second measurement; 0 = empty box, 1 = full box.
struct OutcomePair {
    int first;
    int second;

    /// Position in JointDistribution::probs: 2 * first + second.
    size_t index() const {
        return static_cast<size_t>(2 * first + second);
    }
    static OutcomePair from_index(size_t k) {
        return {static_cast<int>(k / 2), static_cast<int>(k % 2)};
    }
    bool operator==(const OutcomePair &other) const = default;
};

constexpr std::array<OutcomePair, 4> ALL_OUTCOME_PAIRS{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

/// The four probabilities P(a,b|i,j) of one ordered pair of sequential measurements.
struct JointDistribution {
    int first_id;
    int second_id;
    std::array<double, 4> probs{};

    double operator()(int a, int b) const {
        return probs[OutcomePair{a, b}.index()];
    }
    double &operator()(int a, int b) {
        return probs[OutcomePair{a, b}.index()];
    }
    double total() const;
    /// Largest entrywise difference to another distribution over the same ordered pair.
    double max_deviation(const JointDistribution &other) const;
    std::string str() const;
};

struct LudersResult {
    /// Empty when the outcome has (numerically) zero probability.
    std::optional<StateVector> post_state;
    double probability;
};

struct HardyReport {
    /// P(0,1|1,2) + P(0,1|2,3)
    double sum_12_23;
    /// P(0,1|3,4) + P(0,1|4,5)
    double sum_34_45;
    /// P(0,1|5,1)
    double p_51;
};

struct KcbsReport {
    /// terms[k] = P(0,1|k+1, k+2 mod 5).
    std::array<double, 5> terms{};
    double s_value = 0;
};

/// Pentagon successor of an observable id, staying in 1..5.
constexpr int next_id(int id) {
    return id % 5 + 1;
}
constexpr bool valid_id(int id) {
    return id >= 1 && id <= 5;
}
/// True when i and j are neighbours on the pentagon (and hence commute).
constexpr bool are_adjacent(int i, int j) {
    return valid_id(i) && valid_id(j) && (next_id(i) == j || next_id(j) == i);
}

/// Lueders update: probability ||Pi psi||^2 and the renormalized projected state.
LudersResult luders_update(const StateVector &state, const Observable &obs, int outcome);

/// P(a,b|first,second) = ||Pi_b^(second) Pi_a^(first) psi||^2 for all four outcome pairs.
JointDistribution joint_distribution(const StateVector &state, const Observable &first, const Observable &second);

/// max over (a,b) of |P(a,b|i,j) - P(b,a|j,i)|.
double order_asymmetry(const StateVector &state, const Observable &i, const Observable &j);

HardyReport hardy_conditions(const StateVector &state);

KcbsReport kcbs_value(const StateVector &state);

/// S = 2.078 +- 0.038 as reported for the photonic run. Comparison constants only.
constexpr double S_EXPERIMENTAL = 2.078;
constexpr double S_EXPERIMENTAL_ERROR = 0.038;

}  // namespace hardy

#endif
