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
#include <optional>
#include <sstream>

namespace hardy {

DeterministicAssignment DeterministicAssignment::from_bits(unsigned bits) {
    DeterministicAssignment a;
    for (size_t k = 0; k < 5; k++) {
        a.values[k] = static_cast<int>((bits >> k) & 1);
    }
    return a;
}

std::string DeterministicAssignment::str() const {
    std::stringstream ss;
    ss << "(";
    for (size_t k = 0; k < 5; k++) {
        ss << (k ? "," : "") << values[k];
    }
    ss << ")";
    return ss.str();
}

bool BehaviorVector::feasible(double tol) const {
    for (size_t k = 0; k < 5; k++) {
        if (q[k] < -tol || q[k] > 1 + tol || q[k] + q[(k + 1) % 5] > 1 + tol) {
            return false;
        }
    }
    return true;
}

double BehaviorVector::sum() const {
    double s = 0;
    for (double x : q) {
        s += x;
    }
    return s;
}

std::vector<DeterministicAssignment> all_assignments() {
    std::vector<DeterministicAssignment> out;
    for (unsigned bits = 0; bits < 32; bits++) {
        out.push_back(DeterministicAssignment::from_bits(bits));
    }
    return out;
}

BehaviorVector induced_behavior(const DeterministicAssignment &a) {
    BehaviorVector b;
    for (size_t k = 0; k < 5; k++) {
        b.q[k] = a.values[k] == 0 && a.values[(k + 1) % 5] == 1 ? 1.0 : 0.0;
    }
    return b;
}

int assignment_value(const DeterministicAssignment &a) {
    return static_cast<int>(induced_behavior(a).sum());
}

NchvMaxResult nchv_max() {
    NchvMaxResult r{-1, {}};
    for (const auto &a : all_assignments()) {
        int v = assignment_value(a);
        if (v > r.value) {
            r.value = v;
            r.maximizers.clear();
        }
        if (v == r.value) {
            r.maximizers.push_back(a);
        }
    }
    return r;
}

namespace {

bool pattern01(const DeterministicAssignment &a, int i, int j) {
    return a(i) == 0 && a(j) == 1;
}

}  // namespace

bool hardy_premise_c1(const DeterministicAssignment &a) {
    return pattern01(a, 1, 2) || pattern01(a, 2, 3);
}

bool hardy_premise_c2(const DeterministicAssignment &a) {
    return pattern01(a, 3, 4) || pattern01(a, 4, 5);
}

HardyCheckReport hardy_contradiction_check(HardyPremises premises) {
    HardyCheckReport r;
    for (const auto &a : all_assignments()) {
        if ((premises.c1 && !hardy_premise_c1(a)) || (premises.c2 && !hardy_premise_c2(a))) {
            continue;
        }
        r.satisfying.push_back(a);
        if (pattern01(a, 5, 1)) {
            r.counterexamples.push_back(a);
        }
    }
    return r;
}

namespace {

/// coeffs . q <= rhs
struct HalfSpace {
    std::array<Rational, 5> coeffs{};
    Rational rhs;
};

std::vector<HalfSpace> exclusivity_constraints() {
    std::vector<HalfSpace> hs;
    for (size_t k = 0; k < 5; k++) {
        HalfSpace exclusive;
        exclusive.coeffs[k] = 1;
        exclusive.coeffs[(k + 1) % 5] = 1;
        exclusive.rhs = 1;
        hs.push_back(exclusive);

        HalfSpace nonneg;
        nonneg.coeffs[k] = -1;
        nonneg.rhs = 0;
        hs.push_back(nonneg);

        HalfSpace upper;
        upper.coeffs[k] = 1;
        upper.rhs = 1;
        hs.push_back(upper);
    }
    return hs;
}

/// Solves the 5x5 system with rows `rows` held at equality; nullopt if singular.
std::optional<std::array<Rational, 5>> solve_active(const std::vector<HalfSpace> &hs, const std::array<size_t, 5> &rows) {
    std::array<std::array<Rational, 6>, 5> m;
    for (size_t r = 0; r < 5; r++) {
        for (size_t c = 0; c < 5; c++) {
            m[r][c] = hs[rows[r]].coeffs[c];
        }
        m[r][5] = hs[rows[r]].rhs;
    }
    for (size_t col = 0; col < 5; col++) {
        size_t pivot = col;
        while (pivot < 5 && m[pivot][col].numerator() == 0) {
            pivot++;
        }
        if (pivot == 5) {
            return std::nullopt;
        }
        std::swap(m[col], m[pivot]);
        for (size_t r = 0; r < 5; r++) {
            if (r == col || m[r][col].numerator() == 0) {
                continue;
            }
            Rational f = m[r][col] / m[col][col];
            for (size_t c = col; c < 6; c++) {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    std::array<Rational, 5> x;
    for (size_t k = 0; k < 5; k++) {
        x[k] = m[k][5] / m[k][k];
    }
    return x;
}

}  // namespace

GptMaxResult gpt_max() {
    auto hs = exclusivity_constraints();
    GptMaxResult result{Rational(-1), {}, {}};
    std::array<size_t, 5> rows{};
    auto visit = [&](auto &&self, size_t depth, size_t start) -> void {
        if (depth == 5) {
            auto x = solve_active(hs, rows);
            if (!x) {
                return;
            }
            for (const auto &h : hs) {
                Rational lhs = 0;
                for (size_t k = 0; k < 5; k++) {
                    lhs += h.coeffs[k] * (*x)[k];
                }
                if (lhs > h.rhs) {
                    return;
                }
            }
            if (std::find(result.vertices.begin(), result.vertices.end(), *x) == result.vertices.end()) {
                result.vertices.push_back(*x);
            }
            Rational s = 0;
            for (const auto &v : *x) {
                s += v;
            }
            if (s > result.value) {
                result.value = s;
                result.maximizer = *x;
            }
            return;
        }
        for (size_t k = start; k < hs.size(); k++) {
            rows[depth] = k;
            self(self, depth + 1, k + 1);
        }
    };
    visit(visit, 0, 0);
    return result;
}

double corrected_bound(double eps) {
    return NCHV_BOUND * (1 - eps) + GPT_BOUND * eps;
}

}  // namespace hardy
