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

#ifndef COSIM_DYNAMICS_H
#define COSIM_DYNAMICS_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cosim/device.h"
#include "cosim/hamiltonian.h"
#include "cosim/spec.h"

namespace cosim {

struct QubitState {
    Eigen::VectorXcd amplitudes;
    double time_s = 0;
};

struct Trajectory {
    std::string backend;
    std::string config_hash;
    std::vector<int> dims;
    std::vector<std::string> labels;
    std::vector<double> t;                         // s
    std::vector<std::vector<double>> populations;  // [sample][basis state]
    std::vector<std::vector<double>> charge;       // [transmon][sample]
    std::vector<std::vector<double>> probe;        // [probe][sample], V
    std::vector<double> resonator_drive;           // Born only: V_R(t), rad/s
    Eigen::VectorXcd final_state;                  // empty for the Born backend
    Eigen::MatrixXcd final_density;                // Born only, lab frame
    double dt_s = 0;
    double max_norm_drift = 0;
    double max_trace_drift = 0;
    std::vector<std::string> warnings;

    std::size_t samples() const { return t.size(); }
    /// Population of `level` of one transmon, summed over the others.
    std::vector<double> level_population(std::size_t transmon, int level) const;
};

/// Tensor basis state from a label such as "10" (one digit per transmon).
/// Throws DomainError for a wrong length or an out-of-range level.
Eigen::VectorXcd basis_state(const std::vector<int> &dims, const std::string &label);

/// <psi| n^(which) |psi>.
double expectation_n(const EffectiveHamiltonian &hamiltonian, const Eigen::VectorXcd &psi, std::size_t which);

/// Step used by every backend: explicit dt, else cfl_safety * h sqrt(LC)
/// of the finest line, else 0.02 over the spectral radius of H.
double resolve_dt(const DeviceModel &device);

/// Maxwell-Schrodinger co-simulation. Back-action is disabled on every tap
/// when the backend is MaxwellSchrodingerNoBackaction.
Trajectory ms_evolve(const DeviceModel &device);

/// Dense evolution of the effective Hamiltonian with pulse channels only.
Trajectory closed_evolve(const DeviceModel &device);

/// Single qubit coupled to the fundamental mode of its line through the
/// single-mode coupling, in the Born factorization.
Trajectory born_evolve(const DeviceModel &device);

/// Dispatches on device.sim.backend.
Trajectory evolve(const DeviceModel &device);

/// F = (1/D) sum_j |<j|U^dag|psi_j>|^2 with D = ideal.size() runs started in
/// the basis states `subspace[j]`; U's columns are the ideal final states
/// projected onto `subspace`. Throws DomainError on mismatched inputs.
double fidelity(const std::vector<Eigen::VectorXcd> &ideal, const std::vector<Eigen::VectorXcd> &actual,
                const std::vector<int> &subspace = {0, 1});

/// One exact exponential step exp(-i H dt) psi for real symmetric H.
void expm_step(const Eigen::MatrixXd &h, double dt, Eigen::VectorXcd &psi);

}  // namespace cosim

#endif
