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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "hardy/nchv.h"

namespace hardy {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_number(std::string_view w, T &out) {
    auto r = std::from_chars(w.data(), w.data() + w.size(), out);
    return r.ec == std::errc() && r.ptr == w.data() + w.size();
}

/// Calls f(line_number, line) for each line with comments stripped.
template <typename F>
void for_each_line(std::string_view text, F &&f) {
    size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        f(line_no, trim(line));
    }
}

}  // namespace

void NoiseModel::validate() const {
    for (double s : {sigma_reflectivity, sigma_phase, sigma_rotator_angle}) {
        if (!std::isfinite(s) || s < 0) {
            throw std::invalid_argument("Noise sigmas must be finite and non-negative.");
        }
    }
    if (batch_size == 0) {
        throw std::invalid_argument("Noise batch size must be positive.");
    }
}

ConfigParseError::ConfigParseError(size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {
}

NoiseModel parse_noise_config(std::string_view text) {
    NoiseModel m;
    for_each_line(text, [&](size_t line_no, std::string_view line) {
        if (line.empty()) {
            return;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigParseError(line_no, "expected 'key = value'.");
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        auto real = [&](double &dst) {
            if (!parse_number(value, dst) || !std::isfinite(dst) || dst < 0) {
                throw ConfigParseError(line_no, "'" + std::string(key) + "' needs a non-negative number.");
            }
        };
        auto integer = [&](uint64_t &dst) {
            if (!parse_number(value, dst)) {
                throw ConfigParseError(line_no, "'" + std::string(key) + "' needs a non-negative integer.");
            }
        };
        if (key == "sigma_reflectivity") {
            real(m.sigma_reflectivity);
        } else if (key == "sigma_phase") {
            real(m.sigma_phase);
        } else if (key == "sigma_rotator_angle") {
            real(m.sigma_rotator_angle);
        } else if (key == "batch_size") {
            integer(m.batch_size);
            if (m.batch_size == 0) {
                throw ConfigParseError(line_no, "batch_size must be positive.");
            }
        } else if (key == "seed") {
            integer(m.seed);
        } else {
            throw ConfigParseError(line_no, "unknown key '" + std::string(key) + "'.");
        }
    });
    return m;
}

NoiseModel load_noise_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("Cannot read noise config '" + path + "'.");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_noise_config(ss.str());
}

uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
    auto mix = [](uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ a) ^ b);
}

CircuitNetlist perturb_netlist(const CircuitNetlist &c, const NoiseModel &noise, std::mt19937_64 &rng) {
    noise.validate();
    std::normal_distribution<double> gauss(0.0, 1.0);
    CircuitNetlist out = c;
    for (auto &e : out.elements) {
        if (auto *bs = std::get_if<BeamSplitter>(&e)) {
            double z = gauss(rng);
            if (bs->reflectivity > 0 && bs->reflectivity < 1) {
                bs->reflectivity = std::clamp(bs->reflectivity + noise.sigma_reflectivity * z, 0.0, 1.0);
            }
        } else if (auto *ps = std::get_if<PhaseShifter>(&e)) {
            ps->phase += noise.sigma_phase * gauss(rng);
        } else if (auto *hwp = std::get_if<PolarizationRotator>(&e)) {
            hwp->angle += noise.sigma_rotator_angle * gauss(rng);
        }
    }
    return out;
}

CircuitNetlist perturb_netlist(const CircuitNetlist &c, const NoiseModel &noise, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return perturb_netlist(c, noise, rng);
}

SequentialPipeline perturb_pipeline(const SequentialPipeline &p, const NoiseModel &noise, std::mt19937_64 &rng) {
    SequentialPipeline out = p;
    for (auto &stage : out.stages) {
        stage = perturb_netlist(stage, noise, rng);
    }
    return out;
}

SequentialPipeline perturb_pipeline(const SequentialPipeline &p, const NoiseModel &noise, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return perturb_pipeline(p, noise, rng);
}

namespace {

void run_batch(
    const SequentialPipeline &ideal,
    const JointDistribution &ideal_distribution,
    const StateVector &input,
    const NoiseModel &noise,
    uint64_t batch_seed,
    uint64_t photons,
    std::array<uint64_t, 4> &clicks) {
    std::mt19937_64 rng(batch_seed);
    JointDistribution d = ideal_distribution;
    if (!noise.is_zero()) {
        d = simulate_pipeline(perturb_pipeline(ideal, noise, rng), input);
    }
    std::array<double, 4> cumulative{};
    double acc = 0;
    for (size_t k = 0; k < 4; k++) {
        acc += d.probs[k];
        cumulative[k] = acc;
    }
    std::uniform_real_distribution<double> uniform(0.0, acc);
    for (uint64_t n = 0; n < photons; n++) {
        double u = uniform(rng);
        size_t k = 0;
        while (k < 3 && u >= cumulative[k]) {
            k++;
        }
        clicks[k]++;
    }
}

}  // namespace

CountsTable monte_carlo_counts(
    int first,
    int second,
    const StateVector &input,
    uint64_t n_photons,
    const NoiseModel &noise,
    uint64_t seed,
    unsigned workers) {
    if (n_photons == 0) {
        throw std::invalid_argument("monte_carlo_counts needs a positive photon count.");
    }
    noise.validate();
    SequentialPipeline ideal = build_pipeline(first, second);
    JointDistribution ideal_distribution = simulate_pipeline(ideal, input);

    uint64_t batches = (n_photons + noise.batch_size - 1) / noise.batch_size;
    auto stream = static_cast<uint64_t>(10 * first + second);
    auto batch_photons = [&](uint64_t k) {
        return std::min(noise.batch_size, n_photons - k * noise.batch_size);
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<uint64_t>(batches, 1024))));
    std::vector<std::array<uint64_t, 4>> partial(workers);
    auto work = [&](unsigned w) {
        for (uint64_t k = w; k < batches; k += workers) {
            run_batch(ideal, ideal_distribution, input, noise, derive_seed(seed, stream, k), batch_photons(k), partial[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
    }

    CountsTable t{first, second, {}, n_photons};
    for (const auto &p : partial) {
        for (size_t k = 0; k < 4; k++) {
            t.clicks[k] += p[k];
        }
    }
    return t;
}

std::array<Estimate, 4> estimate_probabilities(const CountsTable &t) {
    if (t.exposure == 0) {
        throw std::invalid_argument("Cannot estimate probabilities from zero exposure.");
    }
    std::array<Estimate, 4> out{};
    auto n = static_cast<double>(t.exposure);
    for (size_t k = 0; k < 4; k++) {
        double p = static_cast<double>(t.clicks[k]) / n;
        out[k] = {p, std::sqrt(p * (1 - p) / n)};
    }
    return out;
}

std::vector<std::pair<int, int>> all_configurations() {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= 5; i++) {
        out.emplace_back(i, next_id(i));
        out.emplace_back(next_id(i), i);
    }
    return out;
}

namespace {

std::string config_name(int first, int second) {
    return std::to_string(first) + "-" + std::to_string(second);
}

const CountsTable *find_table(std::span<const CountsTable> tables, int first, int second) {
    const CountsTable *found = nullptr;
    for (const auto &t : tables) {
        if (t.first_id == first && t.second_id == second) {
            if (found != nullptr) {
                throw std::invalid_argument("Configuration " + config_name(first, second) + " appears twice.");
            }
            found = &t;
        }
    }
    return found;
}

}  // namespace

EpsilonReport epsilon_report(std::span<const CountsTable> tables) {
    EpsilonReport r;
    auto configs = all_configurations();
    for (size_t k = 0; k < configs.size(); k++) {
        auto [i, j] = configs[k];
        const CountsTable *t = find_table(tables, i, j);
        if (t == nullptr) {
            throw std::invalid_argument("Configuration " + config_name(i, j) + " is missing.");
        }
        double p11 = estimate_probabilities(*t)[OutcomePair{1, 1}.index()].probability;
        r.per_config_p11[k] = p11;
        r.epsilon_avg += p11 / static_cast<double>(configs.size());
        r.epsilon_max = std::max(r.epsilon_max, p11);
    }
    r.bound_avg = corrected_bound(r.epsilon_avg);
    r.bound_max = corrected_bound(r.epsilon_max);
    return r;
}

KcbsReport kcbs_from_counts(std::span<const CountsTable> tables) {
    KcbsReport r;
    for (int i = 1; i <= 5; i++) {
        int j = next_id(i);
        double sum = 0;
        int orders = 0;
        if (const CountsTable *direct = find_table(tables, i, j)) {
            sum += estimate_probabilities(*direct)[OutcomePair{0, 1}.index()].probability;
            orders++;
        }
        if (const CountsTable *reverse = find_table(tables, j, i)) {
            sum += estimate_probabilities(*reverse)[OutcomePair{1, 0}.index()].probability;
            orders++;
        }
        if (orders == 0) {
            throw std::invalid_argument(
                "No counts for the pair " + config_name(i, j) + " in either order.");
        }
        r.terms[static_cast<size_t>(i - 1)] = sum / orders;
        r.s_value += r.terms[static_cast<size_t>(i - 1)];
    }
    return r;
}

void write_counts_csv(std::ostream &out, std::span<const CountsTable> tables) {
    out << "config,first_outcome,second_outcome,clicks,exposure\n";
    for (const auto &t : tables) {
        for (auto o : ALL_OUTCOME_PAIRS) {
            out << config_name(t.first_id, t.second_id) << "," << o.first << "," << o.second << ","
                << t.clicks[o.index()] << "," << t.exposure << "\n";
        }
    }
}

CountsParseError::CountsParseError(size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {
}

std::vector<CountsTable> parse_counts_csv(std::string_view text) {
    struct Partial {
        CountsTable table;
        std::array<bool, 4> seen{};
        size_t first_line;
    };
    std::vector<Partial> partials;
    bool header_seen = false;
    for_each_line(text, [&](size_t line_no, std::string_view line) {
        if (line.empty()) {
            return;
        }
        if (!header_seen) {
            if (line != "config,first_outcome,second_outcome,clicks,exposure") {
                throw CountsParseError(line_no, "expected header 'config,first_outcome,second_outcome,clicks,exposure'.");
            }
            header_seen = true;
            return;
        }
        std::vector<std::string_view> fields;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 5) {
            throw CountsParseError(line_no, "expected 5 fields, got " + std::to_string(fields.size()) + ".");
        }
        size_t dash = fields[0].find('-');
        int first = 0;
        int second = 0;
        if (dash == std::string_view::npos || !parse_number(fields[0].substr(0, dash), first) ||
            !parse_number(fields[0].substr(dash + 1), second) || !valid_id(first) || !valid_id(second)) {
            throw CountsParseError(line_no, "bad config '" + std::string(fields[0]) + "'; expected i-j with ids 1..5.");
        }
        int a = 0;
        int b = 0;
        if (!parse_number(fields[1], a) || !parse_number(fields[2], b) || a < 0 || a > 1 || b < 0 || b > 1) {
            throw CountsParseError(line_no, "outcomes must be 0 or 1.");
        }
        uint64_t clicks = 0;
        uint64_t exposure = 0;
        if (!parse_number(fields[3], clicks) || !parse_number(fields[4], exposure)) {
            throw CountsParseError(line_no, "clicks and exposure must be non-negative integers.");
        }
        auto it = std::find_if(partials.begin(), partials.end(), [&](const Partial &p) {
            return p.table.first_id == first && p.table.second_id == second;
        });
        if (it == partials.end()) {
            partials.push_back(Partial{CountsTable{first, second, {}, exposure}, {}, line_no});
            it = partials.end() - 1;
        }
        size_t k = OutcomePair{a, b}.index();
        if (it->seen[k]) {
            throw CountsParseError(line_no, "duplicate row for config " + config_name(first, second) + ".");
        }
        if (it->table.exposure != exposure) {
            throw CountsParseError(line_no, "exposure differs from earlier rows of the same config.");
        }
        it->seen[k] = true;
        it->table.clicks[k] = clicks;
    });
    if (!header_seen) {
        throw CountsParseError(1, "missing header.");
    }
    std::vector<CountsTable> out;
    for (const auto &p : partials) {
        uint64_t total = 0;
        for (size_t k = 0; k < 4; k++) {
            if (!p.seen[k]) {
                throw CountsParseError(
                    p.first_line, "config " + config_name(p.table.first_id, p.table.second_id) + " lacks outcome " +
                                      std::to_string(k / 2) + "," + std::to_string(k % 2) + ".");
            }
            total += p.table.clicks[k];
        }
        if (total != p.table.exposure) {
            throw CountsParseError(
                p.first_line, "clicks of config " + config_name(p.table.first_id, p.table.second_id) +
                                  " sum to " + std::to_string(total) + ", not the exposure " +
                                  std::to_string(p.table.exposure) + ".");
        }
        out.push_back(p.table);
    }
    return out;
}

}  // namespace hardy
