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

#ifndef HARDY_NCHV_H
#define HARDY_NCHV_H

#include <array>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace hardy {

using Rational = boost::rational<long long>;

/// Pre-assigned outcomes for the five boxes; values[k] belongs to observable k+1.
struct DeterministicAssignment {
    std::array<int, 5> values{};

    /// Bit k of `bits` becomes values[k].
    static DeterministicAssignment from_bits(unsigned bits);
    /// Value of observable id (1..5).
    int operator()(int id) const {
        return values[static_cast<size_t>(id - 1)];
    }
    std::string str() const;
    bool operator==(const DeterministicAssignment &) const = default;
};

/// q[k] = P(0,1|k+1, k+2 mod 5).
struct BehaviorVector {
    std::array<double, 5> q{};

    /// 0 <= q <= 1 and q[k] + q[k+1] <= 1, within tol.
    bool feasible(double tol = 1e-12) const;
    double sum() const;
};

/// All 32 assignments in bit order.
std::vector<DeterministicAssignment> all_assignments();

/// Number of k with a_k = 0 and a_{k+1} = 1 (mod 5).
int assignment_value(const DeterministicAssignment &a);

/// Indicator vector of the (0,1) patterns an assignment realizes.
BehaviorVector induced_behavior(const DeterministicAssignment &a);

struct NchvMaxResult {
    int value;
    std::vector<DeterministicAssignment> maximizers;
};

NchvMaxResult nchv_max();

/// Which premises of the classical Hardy argument to impose.
struct HardyPremises {
    /// (a1=0 and a2=1) or (a2=0 and a3=1)
    bool c1 = true;
    /// (a3=0 and a4=1) or (a4=0 and a5=1)
    bool c2 = true;
};

struct HardyCheckReport {
    /// Assignments satisfying the imposed premises.
    std::vector<DeterministicAssignment> satisfying;
    /// Those among them with a5 = 0 and a1 = 1.
    std::vector<DeterministicAssignment> counterexamples;
    bool implication_holds() const {
        return counterexamples.empty();
    }
};

bool hardy_premise_c1(const DeterministicAssignment &a);
bool hardy_premise_c2(const DeterministicAssignment &a);

/// Exhaustively checks that the premises force P(0,1|5,1) = 0 for every assignment.
HardyCheckReport hardy_contradiction_check(HardyPremises premises = {});

struct GptMaxResult {
    Rational value;
    std::array<Rational, 5> maximizer;
    /// Distinct vertices of the exclusivity polytope.
    std::vector<std::array<Rational, 5>> vertices;
};

/// Max of sum q over {0 <= q <= 1, q[k] + q[k+1] <= 1} by exact vertex enumeration
/// over all 5-subsets of the 15 bounding hyperplanes.
GptMaxResult gpt_max();

constexpr double NCHV_BOUND = 2.0;
constexpr double GPT_BOUND = 2.5;

/// Noncontextual bound when a fraction eps of runs may reach the GPT maximum:
/// 2 (1 - eps) + 5/2 eps.
double corrected_bound(double eps);

}  // namespace hardy

#endif
