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

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hardy/imperfection.h"
#include "hardy/netlist_text.h"
#include "hardy/nchv.h"
#include "hardy/optics.h"
#include "hardy/reference.h"
#include "hardy/sequential.h"
#include "hardy/verify.h"
#include "json.hpp"

using namespace hardy;
using nlohmann::json;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_USAGE = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes to --out when given, stdout otherwise.
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw UsageError("Cannot write '" + path + "'.");
            }
        }
    }
    std::ostream &stream() {
        return file_.is_open() ? file_ : std::cout;
    }

   private:
    std::ofstream file_;
};

std::string fixed4(double x) {
    std::stringstream ss;
    ss << std::fixed << std::setprecision(4) << x;
    return ss.str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("Cannot read '" + path + "'.");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_ideal(const std::string &format, Output &out) {
    auto eta = make_eta();
    std::ostream &os = out.stream();
    json rows = json::array();
    if (format == "table") {
        os << std::left << std::setw(8) << "(i,j)" << std::setw(16) << "P(0,1|i,j)" << std::setw(16) << "P(1,0|j,i)"
           << "Ideal\n";
    } else if (format == "csv") {
        os << "i,j,direct,reverse,ideal\n";
    }
    for (int i = 1; i <= 5; i++) {
        int j = next_id(i);
        double direct = simulate_pipeline(build_pipeline(i, j), eta)(0, 1);
        double reverse = simulate_pipeline(build_pipeline(j, i), eta)(1, 0);
        double ideal = joint_distribution(eta, make_observable(i), make_observable(j))(0, 1);
        if (format == "table") {
            os << std::setw(8) << ("(" + std::to_string(i) + "," + std::to_string(j) + ")") << std::setw(16)
               << fixed4(direct) << std::setw(16) << fixed4(reverse) << fixed4(ideal) << "\n";
        } else if (format == "csv") {
            os << i << "," << j << "," << format_double(direct) << "," << format_double(reverse) << ","
               << format_double(ideal) << "\n";
        } else {
            rows.push_back({{"i", i}, {"j", j}, {"direct", direct}, {"reverse", reverse}, {"ideal", ideal}});
        }
    }
    if (format == "json") {
        os << json{{"rows", rows}}.dump(2) << "\n";
    }
    return EXIT_OK;
}

int cmd_kcbs(const std::string &counts_path, const std::string &format, Output &out) {
    KcbsReport report;
    std::optional<EpsilonReport> eps;
    std::string source;
    if (counts_path.empty()) {
        source = "ideal";
        report = kcbs_value(make_eta());
        EpsilonReport e;
        for (size_t k = 0; k < 10; k++) {
            auto [i, j] = all_configurations()[k];
            e.per_config_p11[k] = joint_distribution(make_eta(), make_observable(i), make_observable(j))(1, 1);
            e.epsilon_avg += e.per_config_p11[k] / 10;
            e.epsilon_max = std::max(e.epsilon_max, e.per_config_p11[k]);
        }
        e.bound_avg = corrected_bound(e.epsilon_avg);
        e.bound_max = corrected_bound(e.epsilon_max);
        eps = e;
    } else {
        source = counts_path;
        std::vector<CountsTable> tables;
        try {
            tables = parse_counts_csv(read_file(counts_path));
            report = kcbs_from_counts(tables);
        } catch (const CountsParseError &e) {
            throw UsageError(counts_path + ": " + e.what());
        } catch (const std::invalid_argument &e) {
            throw UsageError(counts_path + ": " + e.what());
        }
        try {
            eps = epsilon_report(tables);
        } catch (const std::invalid_argument &) {
            // Leakage needs all ten configurations; compare against the bare bound otherwise.
        }
    }
    double bound = eps ? eps->bound_avg : NCHV_BOUND;
    bool violation = report.s_value > bound;

    std::ostream &os = out.stream();
    if (format == "json") {
        json j{{"source", source},
               {"terms", report.terms},
               {"s", report.s_value},
               {"nchv_bound", NCHV_BOUND},
               {"gpt_bound", GPT_BOUND},
               {"violation", violation}};
        if (eps) {
            j["epsilon_avg"] = eps->epsilon_avg;
            j["epsilon_max"] = eps->epsilon_max;
            j["corrected_bound_avg"] = eps->bound_avg;
            j["corrected_bound_max"] = eps->bound_max;
        }
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "quantity,value\n";
        for (size_t k = 0; k < 5; k++) {
            os << "P(0;1|" << k + 1 << ";" << next_id(static_cast<int>(k) + 1) << ")," << format_double(report.terms[k]) << "\n";
        }
        os << "S," << format_double(report.s_value) << "\n";
        os << "nchv_bound," << format_double(NCHV_BOUND) << "\n";
        if (eps) {
            os << "epsilon_avg," << format_double(eps->epsilon_avg) << "\n";
            os << "corrected_bound_avg," << format_double(eps->bound_avg) << "\n";
            os << "epsilon_max," << format_double(eps->epsilon_max) << "\n";
            os << "corrected_bound_max," << format_double(eps->bound_max) << "\n";
        }
        os << "gpt_bound," << format_double(GPT_BOUND) << "\n";
        os << "violation," << (violation ? 1 : 0) << "\n";
    } else {
        os << "source: " << source << "\n";
        for (size_t k = 0; k < 5; k++) {
            os << "  P(0,1|" << k + 1 << "," << next_id(static_cast<int>(k) + 1) << ") = " << fixed4(report.terms[k]) << "\n";
        }
        os << "S                      = " << fixed4(report.s_value) << "\n";
        os << "NCHV bound             = " << fixed4(NCHV_BOUND) << "\n";
        if (eps) {
            os << "corrected bound (avg)  = " << fixed4(eps->bound_avg) << "  (eps = " << fixed4(eps->epsilon_avg) << ")\n";
            os << "corrected bound (max)  = " << fixed4(eps->bound_max) << "  (eps = " << fixed4(eps->epsilon_max) << ")\n";
        }
        os << "GPT bound              = " << fixed4(GPT_BOUND) << "\n";
        os << (violation ? "violation: S exceeds the noncontextual bound\n" : "no violation\n");
    }
    return violation ? EXIT_OK : EXIT_CHECK_FAILED;
}

int cmd_bounds(const std::string &format, Output &out) {
    auto n = nchv_max();
    auto g = gpt_max();
    auto h = hardy_contradiction_check();
    auto q = hardy_conditions(make_eta());
    double b_avg = corrected_bound(PUBLISHED_EPSILON_AVG);
    double b_max = corrected_bound(PUBLISHED_EPSILON_MAX);
    std::ostream &os = out.stream();
    if (format == "json") {
        json maximizers = json::array();
        for (const auto &a : n.maximizers) {
            maximizers.push_back(a.values);
        }
        os << json{{"nchv_max", n.value},
                   {"nchv_maximizers", maximizers},
                   {"gpt_max", boost::rational_cast<double>(g.value)},
                   {"hardy_classical_implication_holds", h.implication_holds()},
                   {"hardy_premise_assignments", h.satisfying.size()},
                   {"quantum_p51", q.p_51},
                   {"corrected_bounds", {{"0.0062", b_avg}, {"0.021", b_max}}}}
                  .dump(2)
           << "\n";
    } else if (format == "csv") {
        os << "quantity,value\n"
           << "nchv_max," << n.value << "\n"
           << "gpt_max," << format_double(boost::rational_cast<double>(g.value)) << "\n"
           << "hardy_classical_implication_holds," << (h.implication_holds() ? 1 : 0) << "\n"
           << "quantum_p51," << format_double(q.p_51) << "\n"
           << "corrected_bound_eps_0.0062," << format_double(b_avg) << "\n"
           << "corrected_bound_eps_0.021," << format_double(b_max) << "\n";
    } else {
        os << "NCHV maximum:  " << n.value << " (" << n.maximizers.size() << " of 32 assignments attain it)\n";
        os << "GPT maximum:   " << g.value.numerator() << "/" << g.value.denominator() << " = "
           << fixed4(boost::rational_cast<double>(g.value)) << " (" << g.vertices.size() << " polytope vertices)\n";
        os << "Hardy argument: " << h.satisfying.size() << " assignments satisfy both premises, "
           << h.counterexamples.size() << " have a5=0 and a1=1; classical P(0,1|5,1) = 0 "
           << (h.implication_holds() ? "holds" : "FAILS") << "\n";
        os << "                quantum P(0,1|5,1) = " << fixed4(q.p_51) << " (1/9)\n";
        os << "Corrected bound: eps = 0.0062 -> " << fixed4(b_avg) << ", eps = 0.021 -> " << fixed4(b_max) << "\n";
    }
    return EXIT_OK;
}

int cmd_compile(int id, Output &out) {
    if (!valid_id(id)) {
        throw UsageError("Observable id must be in 1..5.");
    }
    out.stream() << emit_netlist(canonical_netlist(id), "U" + std::to_string(id) + ": maps v" + std::to_string(id) + " to path a");
    return EXIT_OK;
}

int cmd_run(int first, int second, uint64_t photons, std::optional<uint64_t> seed, const std::string &noise_path,
            unsigned workers, const std::string &format, Output &out) {
    if (!valid_id(first) || !valid_id(second)) {
        throw UsageError("Observable ids must be in 1..5.");
    }
    if (!are_adjacent(first, second)) {
        throw UsageError("Observables " + std::to_string(first) + " and " + std::to_string(second) +
                         " are not adjacent on the pentagon; the measurements are not compatible.");
    }
    if (photons == 0) {
        throw UsageError("--photons must be positive.");
    }
    NoiseModel noise;
    if (!noise_path.empty()) {
        try {
            noise = parse_noise_config(read_file(noise_path));
        } catch (const ConfigParseError &e) {
            throw UsageError(noise_path + ": " + e.what());
        }
    }
    uint64_t master = seed.value_or(noise.seed);
    auto t = monte_carlo_counts(first, second, make_eta(), photons, noise, master, workers);
    auto est = estimate_probabilities(t);

    std::ostream &os = out.stream();
    std::vector<CountsTable> tables{t};
    if (format == "csv") {
        write_counts_csv(os, tables);
    } else if (format == "json") {
        json outcomes = json::array();
        for (auto o : ALL_OUTCOME_PAIRS) {
            outcomes.push_back({{"first_outcome", o.first},
                                {"second_outcome", o.second},
                                {"clicks", t.clicks[o.index()]},
                                {"probability", est[o.index()].probability},
                                {"standard_error", est[o.index()].standard_error}});
        }
        os << json{{"config", {first, second}}, {"exposure", t.exposure}, {"seed", master}, {"outcomes", outcomes}}.dump(2)
           << "\n";
    } else {
        os << "config (" << first << "," << second << "), " << t.exposure << " photons, seed " << master << "\n";
        os << std::left << std::setw(10) << "(a,b)" << std::setw(12) << "clicks" << std::setw(12) << "P" << "se\n";
        for (auto o : ALL_OUTCOME_PAIRS) {
            os << std::setw(10) << ("(" + std::to_string(o.first) + "," + std::to_string(o.second) + ")") << std::setw(12)
               << t.clicks[o.index()] << std::setw(12) << fixed4(est[o.index()].probability)
               << fixed4(est[o.index()].standard_error) << "\n";
        }
    }
    return EXIT_OK;
}

int cmd_verify(bool quick, bool inject_fault, Output &out) {
    VerifyOptions options;
    options.quick = quick;
    options.corrupt_netlist_constant = inject_fault;
    auto results = run_verification(options);
    std::ostream &os = out.stream();
    bool all = true;
    for (const auto &r : results) {
        all = all && r.passed;
        os << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.id << std::right << std::setw(9)
           << std::fixed << std::setprecision(3) << r.seconds << " s  " << r.detail << "\n";
    }
    os << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? EXIT_OK : EXIT_CHECK_FAILED;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sequential-measurement contextuality simulator"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string out_path;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--out", out_path, "Write output to this file");
    };

    auto *ideal = app.add_subcommand("ideal", "Ideal predictions in both measurement orders, via the compiled circuits");
    add_common(ideal);

    std::string counts_path;
    auto *kcbs = app.add_subcommand("kcbs", "KCBS value and bounds (ideal, or from a counts CSV)");
    kcbs->add_option("--counts", counts_path, "Counts CSV (config,first_outcome,second_outcome,clicks,exposure)");
    add_common(kcbs);

    auto *bounds = app.add_subcommand("bounds", "Classical, GPT and leakage-corrected bounds");
    add_common(bounds);

    int compile_id = 0;
    auto *compile = app.add_subcommand("compile", "Emit the canonical netlist of U_i");
    compile->add_option("id", compile_id, "Observable id 1..5")->required();
    compile->add_option("--out", out_path, "Write output to this file");

    int first = 0;
    int second = 0;
    uint64_t photons = PUBLISHED_EXPOSURE;
    uint64_t seed_value = 0;
    std::string noise_path;
    unsigned workers = 1;
    auto *run = app.add_subcommand("run", "Monte Carlo counts for one configuration");
    run->add_option("--first", first, "First observable")->required();
    run->add_option("--second", second, "Second observable")->required();
    run->add_option("--photons", photons, "Number of photons");
    auto *seed_opt = run->add_option("--seed", seed_value, "Master seed (overrides the noise file)");
    run->add_option("--noise", noise_path, "Noise config file");
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    add_common(run);

    bool quick = false;
    bool inject_fault = false;
    auto *verify = app.add_subcommand("verify", "Run the full invariant and acceptance check suite");
    verify->add_flag("--quick", quick, "Skip Monte Carlo checks");
    verify->add_flag("--inject-fault", inject_fault, "Corrupt a compiled unitary (test hook)")->group("");
    verify->add_option("--out", out_path, "Write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        Output out(out_path);
        if (*ideal) {
            return cmd_ideal(format, out);
        }
        if (*kcbs) {
            return cmd_kcbs(counts_path, format, out);
        }
        if (*bounds) {
            return cmd_bounds(format, out);
        }
        if (*compile) {
            return cmd_compile(compile_id, out);
        }
        if (*run) {
            std::optional<uint64_t> seed;
            if (seed_opt->count() > 0) {
                seed = seed_value;
            }
            return cmd_run(first, second, photons, seed, noise_path, workers, format, out);
        }
        if (*verify) {
            return cmd_verify(quick, inject_fault, out);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_CHECK_FAILED;
    }
    return EXIT_USAGE;
}
