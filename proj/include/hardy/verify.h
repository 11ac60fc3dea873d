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

#ifndef HARDY_VERIFY_H
#define HARDY_VERIFY_H

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hardy/qutrit.h"

namespace hardy {

struct CheckResult {
    std::string id;
    bool passed;
    std::string detail;
    double seconds;
};

struct VerifyOptions {
    /// Test hook: scales one entry of the compiled U1 before the unitarity check.
    bool corrupt_netlist_constant = false;
    /// Skip the Monte Carlo checks.
    bool quick = false;
    uint64_t seed = 20140101;
};

/// Runs every invariant and end-to-end check, in a fixed order.
std::vector<CheckResult> run_verification(const VerifyOptions &options);

/// Uniformly random unit vector (normalized complex Gaussian).
StateVector random_state(std::mt19937_64 &rng);

/// exp(iH) for a random Hermitian H with Gaussian entries.
Matrix3 random_unitary(std::mt19937_64 &rng);

}  // namespace hardy

#endif
