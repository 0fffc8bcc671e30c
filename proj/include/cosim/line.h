// Copyright 2026 The cosim Authors
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

#ifndef COSIM_LINE_H
#define COSIM_LINE_H

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "cosim/spec.h"

namespace cosim {

/// Linear hat-function weights of a point z on the mesh.
struct NodeWeights {
    std::array<Eigen::Index, 2> node{0, 0};
    std::array<double, 2> weight{0.0, 0.0};
};

/// Assembled 1D FEM discretization of the node-flux wave equation
///   C d^2phi/dt^2 - (1/L) d^2phi/dz^2 = sum_s I_s delta(z - z_s)
/// on a uniform mesh of linear elements. Tridiagonal matrices are stored as
/// (diagonal, off-diagonal) pairs.
struct LineSystem {
    LineSpec spec;
    int elements = 0;
    double h = 0;
    Eigen::VectorXd nodes;

    Eigen::VectorXd mass_diag;       // consistent mass
    Eigen::VectorXd mass_off;
    Eigen::VectorXd lumped_mass;     // row-sum lumped mass
    Eigen::VectorXd stiffness_diag;
    Eigen::VectorXd stiffness_off;
    Eigen::VectorXd damping;         // 1/R at resistive and Thevenin ends, diagonal
    std::vector<bool> fixed;         // essential phi = 0 (shorted ends)
    bool consistent_mass = false;

    Eigen::Index node_count() const { return nodes.size(); }
    /// Stable explicit step bound h sqrt(LC) (divided by sqrt(3) for consistent mass).
    double cfl_limit() const;
    NodeWeights locate(double z) const;
};

inline constexpr long kStabilityWindow = 256;

/// Flux at two consecutive half-integer steps: `previous` = phi^{m-1/2},
/// `current` = phi^{m+1/2}. `step_index` counts completed updates.
struct LineState {
    Eigen::VectorXd previous;
    Eigen::VectorXd current;
    double dt = 0;
    long step_index = 0;
    double running_max = 0;     // max |phi| so far
    double historical_max = 0;  // running_max at the last stability checkpoint
    double checkpoint_growth = 0;  // historical_max ratio across the last window

    static LineState quiescent(const LineSystem &system, double dt);
};

/// Assembles mass, stiffness and boundary terms. Throws DomainError for fewer
/// than two elements or a non-positive length.
LineSystem assemble(const LineSpec &line, int elements, bool consistent_mass = false);

/// Advances the state by one leapfrog step,
///   M (phi+ - 2 phi + phi-)/dt^2 + D (phi+ - phi-)/(2 dt) + K phi = f,
/// where `load` holds the nodal point-current load f^{m+1/2} (A) and
/// `time_s` is t_{m+1/2}, used to evaluate Thevenin sources. Throws
/// SolverError("CFL violation suspected") on a non-finite flux, or when max |phi|
/// exceeds 1e6 times its value at the previous checkpoint (every
/// kStabilityWindow steps) after having grown more than 1e3 times over the
/// window before.
void step(const LineSystem &system, LineState &state, const Eigen::VectorXd &load, double time_s);

/// Adds the hat-function projection of a point current at z to `load`.
void add_point_current(const LineSystem &system, Eigen::VectorXd &load, const NodeWeights &at, double current);

/// (phi^{m+1/2} - phi^{m-1/2}) / dt at the integer step between them.
double sample_phidot(const LineState &state, Eigen::Index node);
double sample_phidot(const LineState &state, const NodeWeights &at);

/// Leapfrog-invariant energy 1/2 v^T M v + 1/2 phi_+^T K phi_-.
double discrete_energy(const LineSystem &system, const LineState &state);

/// Lowest `count` non-zero generalized eigenfrequencies (rad/s) of (K, M),
/// using the mass matrix the system was assembled with.
Eigen::VectorXd fem_mode_frequencies(const LineSystem &system, int count);

/// Analytic modes of an open-open line: omega_k = k pi / (d sqrt(LC)) and
/// u_k = cos(k pi z0 / d), for k = 1..count.
struct ModeData {
    Eigen::VectorXd omega;
    Eigen::VectorXd amplitude;
};

bool is_open_open(const LineSpec &line);
ModeData eigenmodes(const LineSpec &line, int count, double z0);

double phase_velocity(const LineSpec &line);
double characteristic_impedance(const LineSpec &line);

}  // namespace cosim

#endif
