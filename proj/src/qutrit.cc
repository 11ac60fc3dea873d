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

#include "hardy/qutrit.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hardy {

char path_char(Path p) {
    return static_cast<char>('a' + path_index(p));
}

Path path_from_char(char c) {
    if (c < 'a' || c > 'c') {
        throw std::invalid_argument(std::string("Unknown path label '") + c + "'; expected a, b or c.");
    }
    return static_cast<Path>(c - 'a');
}

Path path_from_index(size_t k) {
    if (k >= NUM_PATHS) {
        throw std::out_of_range("Path index " + std::to_string(k) + " out of range.");
    }
    return static_cast<Path>(k);
}

StateVector::StateVector(const Vector3 &amplitudes) : amps_(amplitudes) {
    for (Eigen::Index k = 0; k < 3; k++) {
        if (!std::isfinite(amps_(k).real()) || !std::isfinite(amps_(k).imag())) {
            throw std::invalid_argument("StateVector amplitude is not finite.");
        }
    }
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > EXACT_TOL) {
        std::stringstream ss;
        ss << "StateVector is not unit norm (squared norm " << n2 << ").";
        throw std::invalid_argument(ss.str());
    }
}

StateVector::StateVector(Amplitude a, Amplitude b, Amplitude c) : StateVector(Vector3(a, b, c)) {
}

StateVector StateVector::normalized(const Vector3 &v) {
    double n = v.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("Cannot normalize a zero or non-finite vector.");
    }
    return StateVector(Vector3(v / n));
}

StateVector StateVector::basis(Path p) {
    Vector3 v = Vector3::Zero();
    v(static_cast<Eigen::Index>(path_index(p))) = 1.0;
    return StateVector(v);
}

std::string StateVector::str() const {
    std::stringstream ss;
    ss << "(";
    for (Eigen::Index k = 0; k < 3; k++) {
        if (k) {
            ss << ", ";
        }
        ss << amps_(k).real();
        if (amps_(k).imag() != 0) {
            ss << (amps_(k).imag() < 0 ? "-" : "+") << std::abs(amps_(k).imag()) << "i";
        }
    }
    ss << ")";
    return ss.str();
}

Observable::Observable(int id, StateVector v) : id_(id), vec_(std::move(v)) {
    proj_ = vec_.amplitudes() * vec_.amplitudes().adjoint();
}

Matrix3 Observable::outcome_projector(int outcome) const {
    if (outcome == 1) {
        return proj_;
    }
    if (outcome == 0) {
        return Matrix3::Identity() - proj_;
    }
    throw std::invalid_argument("Outcome must be 0 or 1.");
}

StateVector make_eta() {
    double s = 1.0 / std::sqrt(3.0);
    return StateVector(s, s, s);
}

Observable make_observable(int id) {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    switch (id) {
        case 1:
            return Observable(1, StateVector(r3, -r3, r3));
        case 2:
            return Observable(2, StateVector(r2, r2, 0));
        case 3:
            return Observable(3, StateVector(0, 0, 1));
        case 4:
            return Observable(4, StateVector(1, 0, 0));
        case 5:
            return Observable(5, StateVector(0, r2, r2));
        default:
            throw std::out_of_range("Observable id " + std::to_string(id) + " out of range 1..5.");
    }
}

Amplitude inner_product(const StateVector &x, const StateVector &y) {
    return x.amplitudes().dot(y.amplitudes());
}

double commutator_norm(const Observable &obs_i, const Observable &obs_j) {
    const Matrix3 &p = obs_i.projector();
    const Matrix3 &q = obs_j.projector();
    return (p * q - q * p).cwiseAbs().maxCoeff();
}

}  // namespace hardy
