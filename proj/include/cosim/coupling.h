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

#ifndef COSIM_COUPLING_H
#define COSIM_COUPLING_H

#include <Eigen/Dense>
#include <vector>

#include "cosim/impedance.h"
#include "cosim/line.h"
#include "cosim/spec.h"
#include "cosim/transmon.h"

namespace cosim {

/// g_{j,k} (rad/s) for ladder transition j -> j+1 and mode k, stored as a
/// (level_count - 1) x modes matrix: g_{j,k} = g_k n_{j,j+1} with
/// hbar g_k = 2 e beta sqrt(hbar omega_k / (d C)) u_k(z0).
Eigen::MatrixXd mode_couplings(const TransmonSpectrum &spectrum, const ModeData &modes, double beta,
                               const LineSpec &line);

/// Single-mode coupling (rad/s) for a tap at the end of an open-open line,
/// with the standing-wave factor cos(pi q01 / omega_1) in place of cos(k pi).
double single_mode_coupling(const TransmonSpectrum &spectrum, double beta, const LineSpec &line);

struct Dispersive {
    Eigen::MatrixXd chi;           // chi_{j,k} = g^2 / (q_{j,j+1} - omega_k)
    Eigen::MatrixXd B;             // B_{j,k} = g / (q_{j,j+1} - omega_k)
    Eigen::VectorXd lamb_shifted;  // qbar_{j+1} = q_{j+1} + sum_k chi_{j,k}, qbar_0 = 0
    double max_abs_B = 0;
};

/// Throws DomainError("dispersive breakdown") at an exact resonance.
Dispersive dispersive_coefficients(const TransmonSpectrum &spectrum, const Eigen::MatrixXd &g,
                                   const Eigen::VectorXd &omega);

struct ExchangeResult {
    Eigen::MatrixXd J;       // J_ij (rad/s), i < N1 - 1, j < N2 - 1
    JRoute route = JRoute::Impedance;
    int mode_pairs = 0;
    double convergence = 0;  // |J00(N) - J00(N-1)| of the pair-averaged sums
};

/// Rotating-wave mode sum averaged over the N- and (N+1)-mode truncations.
/// `g1` and `g2` must hold at least mode_pairs + 1 modes.
ExchangeResult j_modesum(const TransmonSpectrum &s1, const Eigen::MatrixXd &g1, const TransmonSpectrum &s2,
                         const Eigen::MatrixXd &g2, const Eigen::VectorXd &omega, int mode_pairs);

/// Impedance route,
///   J_ij = 2 e^2/hbar [n1_{i+1,i} n2_{j,j+1} q1 Im Z12(q1) + n2_{j+1,j} n1_{i,i+1} q2 Im Z21(q2)].
/// Im Z is taken in the e^{-i omega t} convention used by the quantum
/// operators, which is the negative of the engineering value returned by
/// network_impedance(). Frequencies default to the bare transitions;
/// `q1_override`/`q2_override` substitute e.g. Lamb-shifted ones.
ExchangeResult j_impedance(const TransmonSpectrum &s1, const TransmonSpectrum &s2, const TwoPortNetwork &network,
                           const Eigen::VectorXd *q1_override = nullptr, const Eigen::VectorXd *q2_override = nullptr);

/// Two-port seen from the junctions of transmons a and b tapped onto `line`:
/// each port carries a shunt C_Sigma - C_tap and a series C_tap, the line is
/// split at the tap positions and the outer sections enter as end-loaded stubs.
TwoPortNetwork junction_network(const LineSpec &line, const TransmonSpec &ta, const Tap &tap_a,
                                const TransmonSpec &tb, const Tap &tap_b);

}  // namespace cosim

#endif
