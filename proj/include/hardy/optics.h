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

#ifndef HARDY_OPTICS_H
#define HARDY_OPTICS_H

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "hardy/qutrit.h"
#include "hardy/sequential.h"

namespace hardy {

using UnitaryMatrix = Eigen::MatrixXcd;

/// Two-path splitter acting on (first, second) as the real matrix
///     [[sqrt(r),    sqrt(1-r)],
///      [sqrt(1-r), -sqrt(r)  ]].
/// The sign sits on the second port, so the path order matters.
/// Reflectivity 0 is an exact crossing of the two paths.
struct BeamSplitter {
    Path first;
    Path second;
    double reflectivity;
    bool operator==(const BeamSplitter &) const = default;
};

/// Multiplies one path (both polarizations) by exp(i phase).
struct PhaseShifter {
    Path path;
    double phase;
    bool operator==(const PhaseShifter &) const = default;
};

/// Half-wave plate at `angle` on one path: [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on (H, V).
struct PolarizationRotator {
    Path path;
    double angle;
    bool operator==(const PolarizationRotator &) const = default;
};

/// Sends H and V of one path to separate detector channels. In the
/// (path, polarization) mode basis each channel is already a mode, so this is
/// the identity on amplitudes and only marks where decoding happens.
struct PolarizingSplitter {
    Path path;
    bool operator==(const PolarizingSplitter &) const = default;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShifter, PolarizationRotator, PolarizingSplitter>;

/// Polarization of a mode. The source emits H; a flip to V records outcome 1
/// of the first measurement.
enum class Polarization : unsigned char { H = 0, V = 1 };

/// 6-mode index of (path, polarization).
constexpr size_t mode_index(Path p, Polarization pol) {
    return 2 * path_index(p) + static_cast<size_t>(pol);
}

struct CircuitNetlist {
    /// 3 for path-only circuits, 6 for path x polarization.
    size_t mode_count = 3;
    std::vector<OpticalElement> elements;

    bool operator==(const CircuitNetlist &) const = default;
};

/// Throws std::invalid_argument when the netlist is malformed: unsupported
/// mode count, a splitter on a single path, non-finite parameters,
/// reflectivity outside [0,1], or polarization elements in a path-only circuit.
void validate(const CircuitNetlist &c);

/// Ordered product of the element matrices (first element acts first).
UnitaryMatrix netlist_unitary(const CircuitNetlist &c);

/// Path-only netlist evaluated as a 3x3 matrix.
Matrix3 netlist_unitary3(const CircuitNetlist &c);

/// Applies the netlist to a state vector of matching dimension.
Eigen::VectorXcd propagate(const CircuitNetlist &c, const Eigen::VectorXcd &input);

/// Elements reversed with phases negated. Splitters and rotators are involutions.
CircuitNetlist inverse(const CircuitNetlist &c);

/// Same circuit with every path label p replaced by relabeling[p].
CircuitNetlist relabel(const CircuitNetlist &c, const std::array<Path, 3> &relabeling);

/// The path-only circuit lifted to 6 modes, acting identically on H and V.
CircuitNetlist embed_polarization(const CircuitNetlist &c);

/// Permutation matrix with column k equal to basis vector relabeling[k].
Matrix3 permutation_matrix(const std::array<Path, 3> &relabeling);

/// a -> b, b -> c, c -> a. Carries the U3 setup onto U4 and U2 onto U5.
constexpr std::array<Path, 3> CYCLIC_RELABELING{Path::B, Path::C, Path::A};

/// Triangular elimination of a 3x3 unitary into at most three beam splitters
/// plus phase shifters. Throws std::invalid_argument for non-unitary input.
CircuitNetlist reck_decompose(const Matrix3 &target);

/// Canonical path-only netlist for U_id, which sends v_id to path a.
///   U1: 50:50 on (b,c), then 33:66 on (c,a), each behind a phase control.
///   U2: 50:50 on (a,b) behind the Sagnac phase control.
///   U3: crossing of a and c.
///   U4, U5: U3, U2 relabeled by CYCLIC_RELABELING followed by a two-crossing
///           output routing that brings the outcome-1 port back to path a.
CircuitNetlist canonical_netlist(int id);

/// Output routing appended to the relabeled U3/U2 setups; evaluates to the
/// inverse cyclic permutation.
CircuitNetlist output_routing();

Matrix3 measurement_unitary(int id);

/// Half-wave plate angle that flips H <-> V.
constexpr double TAG_ANGLE = 0.78539816339744830962;  // pi / 4

struct SequentialPipeline {
    int first_id;
    int second_id;
    /// U_first, tagging HWP on path a, U_first^dagger, U_second, polarizing splitters.
    /// All stages are 6-mode.
    std::vector<CircuitNetlist> stages;
    /// detector_map[mode_index(path, pol)] is the outcome pair recorded by that detector.
    std::array<OutcomePair, 6> detector_map;

    /// All stages concatenated into one 6-mode netlist.
    CircuitNetlist flattened() const;
};

/// Throws std::invalid_argument unless first and second are adjacent on the pentagon.
SequentialPipeline build_pipeline(int first, int second);

/// Detector amplitudes for a path state entering with H polarization.
Vector6 pipeline_output(const SequentialPipeline &p, const StateVector &input);

JointDistribution simulate_pipeline(const SequentialPipeline &p, const StateVector &input);

}  // namespace hardy

#endif
