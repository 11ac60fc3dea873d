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

#ifndef HARDY_QUTRIT_H
#define HARDY_QUTRIT_H

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace hardy {

using Amplitude = std::complex<double>;
using Vector3 = Eigen::Matrix<Amplitude, 3, 1>;
using Matrix3 = Eigen::Matrix<Amplitude, 3, 3>;
using Vector6 = Eigen::Matrix<Amplitude, 6, 1>;
using Matrix6 = Eigen::Matrix<Amplitude, 6, 6>;

/// Tolerance for identities that hold exactly in the algebra and only pick up rounding.
constexpr double EXACT_TOL = 1e-12;
/// Entrywise tolerance for U^dagger U = I.
constexpr double UNITARY_TOL = 1e-9;

/// The three photon paths. Path a, b, c is basis index 0, 1, 2.
enum class Path : unsigned char { A = 0, B = 1, C = 2 };
constexpr size_t NUM_PATHS = 3;

constexpr size_t path_index(Path p) {
    return static_cast<size_t>(p);
}
char path_char(Path p);
Path path_from_char(char c);
Path path_from_index(size_t k);

/// A unit-norm path qutrit. Construction rejects non-finite amplitudes and
/// vectors whose squared norm differs from 1 by more than EXACT_TOL.
class StateVector {
   public:
    explicit StateVector(const Vector3 &amplitudes);
    StateVector(Amplitude a, Amplitude b, Amplitude c);

    /// Rescales an arbitrary nonzero finite vector to unit norm.
    static StateVector normalized(const Vector3 &v);
    static StateVector basis(Path p);

    const Vector3 &amplitudes() const {
        return amps_;
    }
    Amplitude operator[](size_t k) const {
        return amps_(static_cast<Eigen::Index>(k));
    }
    Amplitude operator[](Path p) const {
        return (*this)[path_index(p)];
    }
    std::string str() const;

   private:
    Vector3 amps_;
};

/// One of the five pentagon measurements. Outcome 1 is projection onto the
/// defining vector, outcome 0 onto its orthogonal complement.
class Observable {
   public:
    int id() const {
        return id_;
    }
    const StateVector &defining_vector() const {
        return vec_;
    }
    const Matrix3 &projector() const {
        return proj_;
    }
    /// Projector for the given outcome bit.
    Matrix3 outcome_projector(int outcome) const;

   private:
    friend Observable make_observable(int id);
    Observable(int id, StateVector v);

    int id_;
    StateVector vec_;
    Matrix3 proj_;
};

/// (1, 1, 1) / sqrt(3), the prepared signal-photon state.
StateVector make_eta();

/// Observable 1..5 of the pentagon:
///   v1 = (1,-1,1)/sqrt3, v2 = (1,1,0)/sqrt2, v3 = (0,0,1), v4 = (1,0,0), v5 = (0,1,1)/sqrt2.
/// Throws std::out_of_range for ids outside 1..5.
Observable make_observable(int id);

/// <x|y>, conjugate-linear in x.
Amplitude inner_product(const StateVector &x, const StateVector &y);

/// Largest entry magnitude of [P_i, P_j].
double commutator_norm(const Observable &obs_i, const Observable &obs_j);

/// Largest entry magnitude of m^dagger m - I.
template <typename M>
double unitarity_defect(const M &m) {
    return (m.adjoint() * m - M::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

template <typename M>
bool is_unitary(const M &m, double tol = UNITARY_TOL) {
    return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

/// Largest entry magnitude of a - b.
template <typename M>
double max_abs_diff(const M &a, const M &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace hardy

#endif
