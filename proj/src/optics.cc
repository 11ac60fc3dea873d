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

#include "hardy/optics.h"

#include <cmath>
#include <stdexcept>

namespace hardy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_path(Path p) {
    if (path_index(p) >= NUM_PATHS) {
        throw std::invalid_argument("Element references path index " + std::to_string(path_index(p)) + ".");
    }
}

void check_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " is not finite.");
    }
}

/// Rows of `m` belonging to path p: one row in path-only space, two (H, V) otherwise.
template <typename F>
void for_each_polarization(size_t mode_count, F &&f) {
    if (mode_count == 3) {
        f([](Path p) { return static_cast<Eigen::Index>(path_index(p)); });
    } else {
        for (auto pol : {Polarization::H, Polarization::V}) {
            f([pol](Path p) { return static_cast<Eigen::Index>(mode_index(p, pol)); });
        }
    }
}

/// m <- E m for one element E.
template <typename M>
void apply_element(const OpticalElement &e, size_t mode_count, M &m) {
    std::visit(
        overloaded{
            [&](const BeamSplitter &bs) {
                double t = std::sqrt(bs.reflectivity);
                double u = std::sqrt(1.0 - bs.reflectivity);
                for_each_polarization(mode_count, [&](auto row) {
                    auto rp = row(bs.first);
                    auto rq = row(bs.second);
                    for (Eigen::Index col = 0; col < m.cols(); col++) {
                        Amplitude xp = m(rp, col);
                        Amplitude xq = m(rq, col);
                        m(rp, col) = t * xp + u * xq;
                        m(rq, col) = u * xp - t * xq;
                    }
                });
            },
            [&](const PhaseShifter &ps) {
                Amplitude f = std::polar(1.0, ps.phase);
                for_each_polarization(mode_count, [&](auto row) {
                    m.row(row(ps.path)) *= f;
                });
            },
            [&](const PolarizationRotator &hwp) {
                double c = std::cos(2 * hwp.angle);
                double s = std::sin(2 * hwp.angle);
                auto rh = static_cast<Eigen::Index>(mode_index(hwp.path, Polarization::H));
                auto rv = static_cast<Eigen::Index>(mode_index(hwp.path, Polarization::V));
                for (Eigen::Index col = 0; col < m.cols(); col++) {
                    Amplitude h = m(rh, col);
                    Amplitude v = m(rv, col);
                    m(rh, col) = c * h + s * v;
                    m(rv, col) = s * h - c * v;
                }
            },
            [](const PolarizingSplitter &) {
            },
        },
        e);
}

}  // namespace

void validate(const CircuitNetlist &c) {
    if (c.mode_count != 3 && c.mode_count != 6) {
        throw std::invalid_argument("Netlist mode count must be 3 or 6, got " + std::to_string(c.mode_count) + ".");
    }
    bool polarized = c.mode_count == 6;
    for (const auto &e : c.elements) {
        std::visit(
            overloaded{
                [](const BeamSplitter &bs) {
                    check_path(bs.first);
                    check_path(bs.second);
                    if (bs.first == bs.second) {
                        throw std::invalid_argument("Beam splitter must act on two distinct paths.");
                    }
                    check_finite(bs.reflectivity, "Reflectivity");
                    if (bs.reflectivity < 0 || bs.reflectivity > 1) {
                        throw std::invalid_argument("Reflectivity outside [0,1].");
                    }
                },
                [](const PhaseShifter &ps) {
                    check_path(ps.path);
                    check_finite(ps.phase, "Phase");
                },
                [&](const PolarizationRotator &hwp) {
                    check_path(hwp.path);
                    check_finite(hwp.angle, "Rotator angle");
                    if (!polarized) {
                        throw std::invalid_argument("Polarization rotator in a path-only netlist.");
                    }
                },
                [&](const PolarizingSplitter &pbs) {
                    check_path(pbs.path);
                    if (!polarized) {
                        throw std::invalid_argument("Polarizing splitter in a path-only netlist.");
                    }
                },
            },
            e);
    }
}

UnitaryMatrix netlist_unitary(const CircuitNetlist &c) {
    validate(c);
    auto n = static_cast<Eigen::Index>(c.mode_count);
    UnitaryMatrix m = UnitaryMatrix::Identity(n, n);
    for (const auto &e : c.elements) {
        apply_element(e, c.mode_count, m);
    }
    return m;
}

Matrix3 netlist_unitary3(const CircuitNetlist &c) {
    if (c.mode_count != 3) {
        throw std::invalid_argument("Expected a path-only netlist.");
    }
    return netlist_unitary(c);
}

Eigen::VectorXcd propagate(const CircuitNetlist &c, const Eigen::VectorXcd &input) {
    validate(c);
    if (input.size() != static_cast<Eigen::Index>(c.mode_count)) {
        throw std::invalid_argument("Input dimension does not match the netlist mode count.");
    }
    Eigen::VectorXcd v = input;
    for (const auto &e : c.elements) {
        apply_element(e, c.mode_count, v);
    }
    return v;
}

CircuitNetlist inverse(const CircuitNetlist &c) {
    CircuitNetlist out{c.mode_count, {}};
    for (auto it = c.elements.rbegin(); it != c.elements.rend(); ++it) {
        OpticalElement e = *it;
        if (auto *ps = std::get_if<PhaseShifter>(&e)) {
            ps->phase = -ps->phase;
        }
        out.elements.push_back(e);
    }
    return out;
}

CircuitNetlist relabel(const CircuitNetlist &c, const std::array<Path, 3> &relabeling) {
    auto map = [&](Path p) { return relabeling[path_index(p)]; };
    CircuitNetlist out{c.mode_count, {}};
    for (const auto &e : c.elements) {
        out.elements.push_back(std::visit(
            overloaded{
                [&](const BeamSplitter &bs) -> OpticalElement {
                    return BeamSplitter{map(bs.first), map(bs.second), bs.reflectivity};
                },
                [&](const PhaseShifter &ps) -> OpticalElement {
                    return PhaseShifter{map(ps.path), ps.phase};
                },
                [&](const PolarizationRotator &hwp) -> OpticalElement {
                    return PolarizationRotator{map(hwp.path), hwp.angle};
                },
                [&](const PolarizingSplitter &pbs) -> OpticalElement {
                    return PolarizingSplitter{map(pbs.path)};
                },
            },
            e));
    }
    return out;
}

CircuitNetlist embed_polarization(const CircuitNetlist &c) {
    if (c.mode_count != 3) {
        throw std::invalid_argument("Only path-only netlists can be embedded.");
    }
    return CircuitNetlist{6, c.elements};
}

Matrix3 permutation_matrix(const std::array<Path, 3> &relabeling) {
    Matrix3 m = Matrix3::Zero();
    for (size_t k = 0; k < 3; k++) {
        m(static_cast<Eigen::Index>(path_index(relabeling[k])), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return m;
}

CircuitNetlist reck_decompose(const Matrix3 &target) {
    if (!is_unitary(target)) {
        throw std::invalid_argument(
            "reck_decompose requires a unitary target (defect " + std::to_string(unitarity_defect(target)) + ").");
    }
    struct Step {
        Path first;
        Path second;
        double reflectivity;
        double phase;
    };
    std::vector<Step> steps;
    Matrix3 m = target;

    // Column 0 bottom-up through pairs (b,c), (a,b); then column 1 via (b,c).
    const std::array<std::array<int, 3>, 3> schedule{{{1, 2, 0}, {0, 1, 0}, {1, 2, 1}}};
    for (auto [p, q, col] : schedule) {
        Amplitude xp = m(p, col);
        Amplitude xq = m(q, col);
        if (std::abs(xq) < EXACT_TOL) {
            continue;
        }
        double rho2 = std::norm(xp) + std::norm(xq);
        double r = std::norm(xp) / rho2;
        double phase = std::arg(xq) - std::arg(xp);
        if (std::abs(xp) < EXACT_TOL) {
            phase = 0;
        }
        Step step{path_from_index(static_cast<size_t>(p)), path_from_index(static_cast<size_t>(q)), r, phase};
        CircuitNetlist forward{3, {PhaseShifter{step.first, step.phase}, BeamSplitter{step.first, step.second, r}}};
        m = netlist_unitary3(forward) * m;
        steps.push_back(step);
    }

    CircuitNetlist out{3, {}};
    for (size_t k = 0; k < 3; k++) {
        double d = std::arg(m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
        if (d != 0) {
            out.elements.push_back(PhaseShifter{path_from_index(k), d});
        }
    }
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        out.elements.push_back(BeamSplitter{it->first, it->second, it->reflectivity});
        if (it->phase != 0) {
            out.elements.push_back(PhaseShifter{it->first, -it->phase});
        }
    }
    return out;
}

CircuitNetlist output_routing() {
    return CircuitNetlist{3, {BeamSplitter{Path::A, Path::B, 0.0}, BeamSplitter{Path::B, Path::C, 0.0}}};
}

CircuitNetlist canonical_netlist(int id) {
    switch (id) {
        case 1:
            return CircuitNetlist{
                3,
                {
                    BeamSplitter{Path::B, Path::C, 0.5},
                    BeamSplitter{Path::C, Path::A, 1.0 / 3.0},
                }};
        case 2:
            return CircuitNetlist{3, {PhaseShifter{Path::A, 0.0}, BeamSplitter{Path::A, Path::B, 0.5}}};
        case 3:
            return CircuitNetlist{3, {BeamSplitter{Path::A, Path::C, 0.0}}};
        case 4:
        case 5: {
            CircuitNetlist c = relabel(canonical_netlist(id == 4 ? 3 : 2), CYCLIC_RELABELING);
            for (const auto &e : output_routing().elements) {
                c.elements.push_back(e);
            }
            return c;
        }
        default:
            throw std::out_of_range("Observable id " + std::to_string(id) + " out of range 1..5.");
    }
}

Matrix3 measurement_unitary(int id) {
    return netlist_unitary3(canonical_netlist(id));
}

CircuitNetlist SequentialPipeline::flattened() const {
    CircuitNetlist out{6, {}};
    for (const auto &s : stages) {
        out.elements.insert(out.elements.end(), s.elements.begin(), s.elements.end());
    }
    return out;
}

SequentialPipeline build_pipeline(int first, int second) {
    if (!are_adjacent(first, second)) {
        throw std::invalid_argument(
            "Observables " + std::to_string(first) + " and " + std::to_string(second) +
            " are not adjacent on the pentagon; the measurements are not compatible.");
    }
    CircuitNetlist u_first = canonical_netlist(first);
    SequentialPipeline p{first, second, {}, {}};
    p.stages.push_back(embed_polarization(u_first));
    p.stages.push_back(CircuitNetlist{6, {PolarizationRotator{Path::A, TAG_ANGLE}}});
    p.stages.push_back(embed_polarization(inverse(u_first)));
    p.stages.push_back(embed_polarization(canonical_netlist(second)));
    p.stages.push_back(
        CircuitNetlist{6, {PolarizingSplitter{Path::A}, PolarizingSplitter{Path::B}, PolarizingSplitter{Path::C}}});
    for (size_t k = 0; k < 3; k++) {
        Path path = path_from_index(k);
        p.detector_map[mode_index(path, Polarization::H)] = {0, path == Path::A ? 1 : 0};
        p.detector_map[mode_index(path, Polarization::V)] = {1, path == Path::A ? 1 : 0};
    }
    return p;
}

Vector6 pipeline_output(const SequentialPipeline &p, const StateVector &input) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
    for (size_t k = 0; k < 3; k++) {
        v(static_cast<Eigen::Index>(mode_index(path_from_index(k), Polarization::H))) = input[k];
    }
    for (const auto &stage : p.stages) {
        v = propagate(stage, v);
    }
    return v;
}

JointDistribution simulate_pipeline(const SequentialPipeline &p, const StateVector &input) {
    Vector6 out = pipeline_output(p, input);
    JointDistribution d{p.first_id, p.second_id};
    for (size_t k = 0; k < 6; k++) {
        d.probs[p.detector_map[k].index()] += std::norm(out(static_cast<Eigen::Index>(k)));
    }
    return d;
}

}  // namespace hardy
