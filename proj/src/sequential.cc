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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hardy {

double JointDistribution::total() const {
    return probs[0] + probs[1] + probs[2] + probs[3];
}

double JointDistribution::max_deviation(const JointDistribution &other) const {
    double m = 0;
    for (size_t k = 0; k < 4; k++) {
        m = std::max(m, std::abs(probs[k] - other.probs[k]));
    }
    return m;
}

std::string JointDistribution::str() const {
    std::stringstream ss;
    ss << "P(.,.|" << first_id << "," << second_id << ") = {";
    for (size_t k = 0; k < 4; k++) {
        auto o = OutcomePair::from_index(k);
        ss << (k ? ", " : "") << "(" << o.first << "," << o.second << "): " << probs[k];
    }
    ss << "}";
    return ss.str();
}

LudersResult luders_update(const StateVector &state, const Observable &obs, int outcome) {
    Vector3 projected = obs.outcome_projector(outcome) * state.amplitudes();
    double p = projected.squaredNorm();
    if (p < NULL_BRANCH_PROBABILITY) {
        return {std::nullopt, p};
    }
    return {StateVector::normalized(projected), p};
}

JointDistribution joint_distribution(const StateVector &state, const Observable &first, const Observable &second) {
    JointDistribution result{first.id(), second.id()};
    for (int a = 0; a <= 1; a++) {
        Vector3 after_first = first.outcome_projector(a) * state.amplitudes();
        for (int b = 0; b <= 1; b++) {
            result(a, b) = (second.outcome_projector(b) * after_first).squaredNorm();
        }
    }
    return result;
}

double order_asymmetry(const StateVector &state, const Observable &i, const Observable &j) {
    auto forward = joint_distribution(state, i, j);
    auto reverse = joint_distribution(state, j, i);
    double m = 0;
    for (auto [a, b] : ALL_OUTCOME_PAIRS) {
        m = std::max(m, std::abs(forward(a, b) - reverse(b, a)));
    }
    return m;
}

namespace {

double p01(const StateVector &state, int i, int j) {
    return joint_distribution(state, make_observable(i), make_observable(j))(0, 1);
}

}  // namespace

HardyReport hardy_conditions(const StateVector &state) {
    return {
        p01(state, 1, 2) + p01(state, 2, 3),
        p01(state, 3, 4) + p01(state, 4, 5),
        p01(state, 5, 1),
    };
}

KcbsReport kcbs_value(const StateVector &state) {
    KcbsReport report;
    for (int i = 1; i <= 5; i++) {
        report.terms[i - 1] = p01(state, i, next_id(i));
        report.s_value += report.terms[i - 1];
    }
    return report;
}

}  // namespace hardy
