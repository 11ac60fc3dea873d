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

#include "hardy/imperfection.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "hardy/reference.h"

using namespace hardy;

namespace {

NoiseModel phase_noise(double sigma) {
    NoiseModel m;
    m.sigma_phase = sigma;
    return m;
}

/// Expected leakage of one perturbed pipeline, averaged over all configurations and seeds.
double mean_leakage(const NoiseModel &noise, int seeds) {
    double sum = 0;
    int n = 0;
    for (auto [i, j] : all_configurations()) {
        auto p = build_pipeline(i, j);
        for (int s = 0; s < seeds; s++) {
            sum += simulate_pipeline(perturb_pipeline(p, noise, derive_seed(99, 10 * i + j, s)), make_eta())(1, 1);
            n++;
        }
    }
    return sum / n;
}

}  // namespace

TEST(imperfection, zero_noise_leaves_netlist_unchanged) {
    NoiseModel zero;
    for (int i = 1; i <= 5; i++) {
        EXPECT_EQ(perturb_netlist(canonical_netlist(i), zero, 17), canonical_netlist(i));
    }
    auto p = build_pipeline(2, 1);
    EXPECT_EQ(perturb_pipeline(p, zero, 3).flattened(), p.flattened());
}

TEST(imperfection, perturbation_is_deterministic) {
    NoiseModel m;
    m.sigma_reflectivity = 0.05;
    m.sigma_phase = 0.1;
    m.sigma_rotator_angle = 0.02;
    auto flat = build_pipeline(2, 1).flattened();
    EXPECT_EQ(perturb_netlist(flat, m, 123), perturb_netlist(flat, m, 123));
    EXPECT_NE(perturb_netlist(flat, m, 123), perturb_netlist(flat, m, 124));
}

TEST(imperfection, perturbed_elements_stay_valid) {
    NoiseModel m;
    m.sigma_reflectivity = 2.0;
    m.sigma_phase = 1.0;
    m.sigma_rotator_angle = 1.0;
    for (uint64_t seed = 0; seed < 200; seed++) {
        auto c = perturb_netlist(build_pipeline(1, 2).flattened(), m, seed);
        EXPECT_NO_THROW(validate(c));
        EXPECT_TRUE(is_unitary(netlist_unitary(c)));
        for (const auto &e : c.elements) {
            if (auto *bs = std::get_if<BeamSplitter>(&e)) {
                EXPECT_GE(bs->reflectivity, 0);
                EXPECT_LE(bs->reflectivity, 1);
            }
        }
    }
}

TEST(imperfection, routing_crossings_are_not_jittered) {
    NoiseModel m;
    m.sigma_reflectivity = 0.2;
    auto c = perturb_netlist(canonical_netlist(4), m, 5);
    for (const auto &e : c.elements) {
        EXPECT_EQ(std::get<BeamSplitter>(e).reflectivity, 0.0);
    }
}

TEST(imperfection, phase_noise_produces_leakage) {
    // Monte Carlo over perturbed pipelines; the photonic run saw 0.002 to 0.021.
    double leak = mean_leakage(phase_noise(0.05), 200);
    EXPECT_GT(leak, 1e-5);
    EXPECT_LT(leak, 0.03);
    double calibrated = mean_leakage(calibrated_noise(), 200);
    EXPECT_GT(calibrated, 1e-3);
    EXPECT_LT(calibrated, 0.021);
}

TEST(imperfection, leakage_is_monotone_in_each_sigma) {
    for (int which = 0; which < 2; which++) {
        double previous = -1;
        for (double sigma : {0.0, 0.02, 0.05, 0.1, 0.2}) {
            NoiseModel m;
            m.sigma_reflectivity = 0.02;
            m.sigma_phase = 0.05;
            m.sigma_rotator_angle = 0.02;
            (which == 0 ? m.sigma_reflectivity : m.sigma_phase) = sigma;
            double leak = mean_leakage(m, 100);
            EXPECT_GE(leak, previous - 1e-12) << "sigma kind " << which << " at " << sigma;
            previous = leak;
        }
    }
}

TEST(imperfection, rotator_jitter_alone_never_leaks) {
    // A mis-set tag plate moves weight from V to H; it cannot route outcome-1 light into path a.
    for (double sigma : {0.0, 0.05, 0.2, 1.0}) {
        NoiseModel m;
        m.sigma_rotator_angle = sigma;
        EXPECT_NEAR(mean_leakage(m, 100), 0, 1e-12) << sigma;
    }
}

TEST(imperfection, rotator_jitter_suppresses_tagged_weight) {
    // With splitter and phase noise present the leakage scales with sin^2(2 theta) <= 1.
    NoiseModel m = phase_noise(0.1);
    double base = mean_leakage(m, 100);
    m.sigma_rotator_angle = 0.2;
    double jittered = mean_leakage(m, 100);
    EXPECT_GT(base, 0);
    EXPECT_LT(jittered, base);
}

TEST(imperfection, monte_carlo_single_photon) {
    auto t = monte_carlo_counts(5, 1, make_eta(), 1, NoiseModel{}, 1);
    EXPECT_EQ(t.exposure, 1u);
    EXPECT_EQ(t.clicks[0] + t.clicks[1] + t.clicks[2] + t.clicks[3], 1u);
    EXPECT_EQ(t(1, 1), 0u);
}

TEST(imperfection, monte_carlo_rejects_bad_input) {
    EXPECT_THROW(monte_carlo_counts(5, 1, make_eta(), 0, NoiseModel{}, 1), std::invalid_argument);
    EXPECT_THROW(monte_carlo_counts(1, 3, make_eta(), 10, NoiseModel{}, 1), std::invalid_argument);
    NoiseModel bad;
    bad.sigma_phase = -1;
    EXPECT_THROW(monte_carlo_counts(5, 1, make_eta(), 10, bad, 1), std::invalid_argument);
    NoiseModel no_batch;
    no_batch.batch_size = 0;
    EXPECT_THROW(monte_carlo_counts(5, 1, make_eta(), 10, no_batch, 1), std::invalid_argument);
}

TEST(imperfection, monte_carlo_determinism_across_workers) {
    auto noise = calibrated_noise();
    auto a = monte_carlo_counts(2, 1, make_eta(), 12345, noise, 77, 1);
    auto b = monte_carlo_counts(2, 1, make_eta(), 12345, noise, 77, 3);
    auto c = monte_carlo_counts(2, 1, make_eta(), 12345, noise, 77, 8);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(a.clicks[0] + a.clicks[1] + a.clicks[2] + a.clicks[3], a.exposure);
    EXPECT_NE(a, monte_carlo_counts(2, 1, make_eta(), 12345, noise, 78, 1));
}

TEST(imperfection, monte_carlo_converges) {
    for (uint64_t n : {1000ull, 10000ull, 1000000ull}) {
        auto t = monte_carlo_counts(5, 1, make_eta(), n, NoiseModel{}, 2024, 4);
        auto est = estimate_probabilities(t);
        auto ideal = joint_distribution(make_eta(), make_observable(5), make_observable(1));
        for (size_t k = 0; k < 4; k++) {
            double p = ideal.probs[k];
            EXPECT_LE(std::abs(est[k].probability - p), 5 * std::sqrt(p * (1 - p) / n) + 1e-15) << n << " " << k;
        }
    }
    auto big = monte_carlo_counts(5, 1, make_eta(), 1000000, NoiseModel{}, 7, 4);
    EXPECT_NEAR(estimate_probabilities(big)[1].probability, 1.0 / 9, 3 * std::sqrt(1.0 / 9 * 8.0 / 9 / 1e6));
}

TEST(imperfection, estimate_probabilities) {
    CountsTable t{1, 2, {222, 667, 111, 0}, 1000};
    auto est = estimate_probabilities(t);
    EXPECT_DOUBLE_EQ(est[1].probability, 0.667);
    EXPECT_NEAR(est[1].standard_error, std::sqrt(0.667 * 0.333 / 1000), 1e-15);
    EXPECT_NEAR(est[1].standard_error, 0.0149, 1e-4);
    EXPECT_EQ(est[3].probability, 0);
    EXPECT_EQ(est[3].standard_error, 0);

    CountsTable all{5, 1, {0, 50, 0, 0}, 50};
    EXPECT_EQ(estimate_probabilities(all)[1].probability, 1);
    EXPECT_EQ(estimate_probabilities(all)[1].standard_error, 0);

    CountsTable published{5, 1, {0, 2220, 0, 0}, 20000};
    EXPECT_NEAR(estimate_probabilities(published)[1].standard_error, 0.0022, 1e-4);

    EXPECT_THROW(estimate_probabilities(CountsTable{1, 2, {}, 0}), std::invalid_argument);
}

TEST(imperfection, epsilon_report) {
    std::vector<CountsTable> tables;
    for (auto [i, j] : all_configurations()) {
        tables.push_back(CountsTable{i, j, {1000, 0, 0, 0}, 1000});
    }
    auto zero = epsilon_report(tables);
    EXPECT_EQ(zero.epsilon_avg, 0);
    EXPECT_EQ(zero.bound_avg, 2);

    // Leakage of 0.021 in (2,1) and 0.0042 elsewhere: mean 0.00588.
    for (auto &t : tables) {
        uint64_t leak = t.first_id == 2 && t.second_id == 1 ? 21 : 4;
        t = CountsTable{t.first_id, t.second_id, {1000 - leak, 0, 0, leak}, 1000};
    }
    auto r = epsilon_report(tables);
    EXPECT_NEAR(r.epsilon_max, 0.021, 1e-15);
    EXPECT_NEAR(r.bound_max, 2.0105, 1e-12);
    EXPECT_NEAR(r.epsilon_avg, (0.021 + 9 * 0.004) / 10, 1e-15);
    EXPECT_NEAR(r.bound_avg - 2, r.epsilon_avg / 2, 1e-12);
    EXPECT_NEAR(r.per_config_p11[1], 0.021, 1e-15);
}

TEST(imperfection, epsilon_report_requires_all_configurations) {
    std::vector<CountsTable> tables;
    for (auto [i, j] : all_configurations()) {
        tables.push_back(CountsTable{i, j, {10, 0, 0, 0}, 10});
    }
    tables.pop_back();
    EXPECT_THROW(epsilon_report(tables), std::invalid_argument);
    tables.push_back(tables.front());
    EXPECT_THROW(epsilon_report(tables), std::invalid_argument);
}

TEST(imperfection, kcbs_from_counts) {
    // Direct-order terms only, 0.635 0.332 0.330 0.650 0.111.
    std::vector<CountsTable> direct;
    std::array<uint64_t, 5> hits{635, 332, 330, 650, 111};
    for (int i = 1; i <= 5; i++) {
        uint64_t h = hits[static_cast<size_t>(i - 1)];
        direct.push_back(CountsTable{i, next_id(i), {1000 - h, h, 0, 0}, 1000});
    }
    EXPECT_NEAR(kcbs_from_counts(direct).s_value, 2.058, 1e-12);

    // Adding the reverse order averages each term.
    std::array<uint64_t, 5> rev{661, 331, 339, 656, 109};
    auto both = direct;
    for (int i = 1; i <= 5; i++) {
        uint64_t h = rev[static_cast<size_t>(i - 1)];
        both.push_back(CountsTable{next_id(i), i, {1000 - h, 0, h, 0}, 1000});
    }
    auto k = kcbs_from_counts(both);
    EXPECT_NEAR(k.terms[0], (0.635 + 0.661) / 2, 1e-12);
    EXPECT_NEAR(k.s_value, (2.058 + 2.096) / 2, 1e-12);

    std::vector<CountsTable> empty_pair(direct.begin(), direct.begin() + 4);
    EXPECT_THROW(kcbs_from_counts(empty_pair), std::invalid_argument);
}

TEST(imperfection, counts_csv_round_trip) {
    std::vector<CountsTable> tables;
    for (auto [i, j] : all_configurations()) {
        tables.push_back(monte_carlo_counts(i, j, make_eta(), 500, calibrated_noise(), 3));
    }
    std::stringstream ss;
    write_counts_csv(ss, tables);
    std::string text = ss.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "config,first_outcome,second_outcome,clicks,exposure");
    EXPECT_EQ(parse_counts_csv(text), tables);
}

TEST(imperfection, counts_csv_errors) {
    auto line_of = [](const std::string &text) -> size_t {
        try {
            parse_counts_csv(text);
        } catch (const CountsParseError &e) {
            return e.line;
        }
        return 0;
    };
    const std::string header = "config,first_outcome,second_outcome,clicks,exposure\n";
    EXPECT_EQ(line_of("config,clicks\n"), 1u);
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_EQ(line_of(header + "1-2,0,0,5,10\n1-2,0,1,5\n"), 3u);
    EXPECT_EQ(line_of(header + "1-7,0,0,5,10\n"), 2u);
    EXPECT_EQ(line_of(header + "1-2,0,2,5,10\n"), 2u);
    EXPECT_EQ(line_of(header + "1-2,0,0,x,10\n"), 2u);
    EXPECT_EQ(line_of(header + "1-2,0,0,5,10\n1-2,0,0,5,10\n"), 3u);
    EXPECT_EQ(line_of(header + "1-2,0,0,5,10\n1-2,0,1,5,11\n"), 3u);
    // Missing outcome and bad totals point at the config's first row.
    EXPECT_EQ(line_of(header + "\n1-2,0,0,5,10\n1-2,0,1,5,10\n"), 3u);
    EXPECT_EQ(line_of(header + "1-2,0,0,5,10\n1-2,0,1,5,10\n1-2,1,0,1,10\n1-2,1,1,0,10\n"), 2u);
    EXPECT_EQ(line_of(header + "1-2,0,0,5,10\n1-2,0,1,5,10\n1-2,1,0,0,10\n1-2,1,1,0,10\n"), 0u);
}

TEST(imperfection, noise_config) {
    auto m = parse_noise_config(
        "# calibrated\n"
        "sigma_reflectivity = 0.1\n"
        "sigma_phase=0.41  # radians\n"
        "sigma_rotator_angle = 0.02\n"
        "batch_size = 50\n"
        "seed = 42\n");
    EXPECT_EQ(m.sigma_reflectivity, 0.1);
    EXPECT_EQ(m.sigma_phase, 0.41);
    EXPECT_EQ(m.sigma_rotator_angle, 0.02);
    EXPECT_EQ(m.batch_size, 50u);
    EXPECT_EQ(m.seed, 42u);
    EXPECT_TRUE(parse_noise_config("").is_zero());
    EXPECT_EQ(parse_noise_config("").batch_size, 100u);

    auto line_of = [](const std::string &text) -> size_t {
        try {
            parse_noise_config(text);
        } catch (const ConfigParseError &e) {
            return e.line;
        }
        return 0;
    };
    EXPECT_EQ(line_of("sigma_phase = -0.1\n"), 1u);
    EXPECT_EQ(line_of("\nsigma_phase 0.1\n"), 2u);
    EXPECT_EQ(line_of("temperature = 3\n"), 1u);
    EXPECT_EQ(line_of("batch_size = 0\n"), 1u);
    EXPECT_EQ(line_of("seed = -4\n"), 1u);
    EXPECT_THROW(load_noise_config("/nonexistent/noise.cfg"), std::runtime_error);
}

TEST(imperfection, derive_seed_separates_streams) {
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(2, 2, 3));
}
