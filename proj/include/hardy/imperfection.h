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

#ifndef HARDY_IMPERFECTION_H
#define HARDY_IMPERFECTION_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardy/optics.h"
#include "hardy/sequential.h"

namespace hardy {

/// Independent Gaussian jitter on element parameters, redrawn once per photon batch.
struct NoiseModel {
    double sigma_reflectivity = 0;
    double sigma_phase = 0;
    double sigma_rotator_angle = 0;
    /// Photons sharing one perturbed pipeline.
    uint64_t batch_size = 100;
    uint64_t seed = 0;

    /// Throws std::invalid_argument for negative or non-finite sigmas or a zero batch size.
    void validate() const;
    bool is_zero() const {
        return sigma_reflectivity == 0 && sigma_phase == 0 && sigma_rotator_angle == 0;
    }
};

struct ConfigParseError : std::runtime_error {
    ConfigParseError(size_t line, const std::string &message);
    size_t line;
};

/// Parses `key = value` lines (`#` starts a comment). Recognized keys:
/// sigma_reflectivity, sigma_phase, sigma_rotator_angle, batch_size, seed.
NoiseModel parse_noise_config(std::string_view text);
/// Throws std::runtime_error if the file cannot be read.
NoiseModel load_noise_config(const std::string &path);

/// Mixes a master seed with two stream coordinates (splitmix64 finalizer).
uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b);

/// Every element parameter gets param + sigma * z with z ~ N(0,1) drawn from `rng`
/// in element order; reflectivities are clipped to [0,1]. One normal variate is
/// consumed per parametrized element even when its sigma is zero.
CircuitNetlist perturb_netlist(const CircuitNetlist &c, const NoiseModel &noise, std::mt19937_64 &rng);
CircuitNetlist perturb_netlist(const CircuitNetlist &c, const NoiseModel &noise, uint64_t seed);
SequentialPipeline perturb_pipeline(const SequentialPipeline &p, const NoiseModel &noise, std::mt19937_64 &rng);
SequentialPipeline perturb_pipeline(const SequentialPipeline &p, const NoiseModel &noise, uint64_t seed);

/// Clicks of one measurement configuration, indexed by OutcomePair::index().
struct CountsTable {
    int first_id;
    int second_id;
    std::array<uint64_t, 4> clicks{};
    uint64_t exposure = 0;

    uint64_t operator()(int a, int b) const {
        return clicks[OutcomePair{a, b}.index()];
    }
    bool operator==(const CountsTable &) const = default;
};

/// Photons are processed in batches of noise.batch_size; batch k of configuration
/// (first, second) draws both its perturbed pipeline and its photon outcomes from
/// the stream derive_seed(seed, 10 * first + second, k). The result does not
/// depend on `workers`.
CountsTable monte_carlo_counts(
    int first,
    int second,
    const StateVector &input,
    uint64_t n_photons,
    const NoiseModel &noise,
    uint64_t seed,
    unsigned workers = 1);

struct Estimate {
    double probability;
    double standard_error;
};

/// p = clicks / exposure with binomial standard error sqrt(p (1 - p) / exposure).
std::array<Estimate, 4> estimate_probabilities(const CountsTable &t);

/// Both orders of all five adjacent pairs: (1,2), (2,1), (2,3), (3,2), ...
std::vector<std::pair<int, int>> all_configurations();

struct EpsilonReport {
    /// P(1,1|i,j) in all_configurations() order.
    std::array<double, 10> per_config_p11{};
    double epsilon_avg = 0;
    double epsilon_max = 0;
    double bound_avg = 0;
    double bound_max = 0;
};

/// Throws std::invalid_argument unless every configuration appears exactly once.
EpsilonReport epsilon_report(std::span<const CountsTable> tables);

/// KCBS terms from counts: for each adjacent pair (i, i+1) the mean of the
/// direct estimate P(0,1|i,i+1) and the reverse estimate P(1,0|i+1,i) over
/// whichever orders are present. Throws if a pair has neither order.
KcbsReport kcbs_from_counts(std::span<const CountsTable> tables);

/// CSV with header `config,first_outcome,second_outcome,clicks,exposure`, config as `i-j`.
void write_counts_csv(std::ostream &out, std::span<const CountsTable> tables);

struct CountsParseError : std::runtime_error {
    CountsParseError(size_t line, const std::string &message);
    size_t line;
};

std::vector<CountsTable> parse_counts_csv(std::string_view text);

}  // namespace hardy

#endif
