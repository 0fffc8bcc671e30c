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

#ifndef COSIM_TRANSMON_H
#define COSIM_TRANSMON_H

#include <Eigen/Dense>
#include <functional>

#include "cosim/spec.h"

namespace cosim {

/// Spectrum of a truncated transmon. Eigenvectors are phased so that every
/// n_{j,j+1} is real and positive, which makes all charge elements real.
struct TransmonSpectrum {
    Eigen::VectorXd eigenfrequencies;  // q_j (rad/s), q_0 = 0
    Eigen::MatrixXcd charge_elements;  // n_ij, dimensionless
    double charging_energy_j = 0;      // E_C = e^2 / (2 C_Sigma)

    int level_count() const { return static_cast<int>(eigenfrequencies.size()); }
    /// q_{j,j+1} = q_{j+1} - q_j.
    double transition(int j) const { return eigenfrequencies[j + 1] - eigenfrequencies[j]; }
    /// Real part of the charge matrix (the imaginary part vanishes by convention).
    Eigen::MatrixXd real_charge() const { return charge_elements.real(); }
};

double charging_energy_j(double total_capacitance_f);

/// Diagonalizes 4 E_C n^2 - (E_J / 2)(|n><n+1| + h.c.) over n in
/// [-cutoff, cutoff] at zero offset charge and keeps the lowest level_count
/// eigenpairs. Throws SolverError if raising the cutoff by 2 shifts any
/// retained q_j by more than 1e-9 relative.
TransmonSpectrum diagonalize(const TransmonSpec &spec);

/// Same, without the convergence re-check.
TransmonSpectrum diagonalize_unchecked(const TransmonSpec &spec);

/// q_{12} - q_{01} (rad/s). Requires level_count >= 3.
double anharmonicity(const TransmonSpectrum &spectrum);

/// Root-finds E_J (Hz) such that `observable(diagonalize(spec with E_J))`
/// equals `target`. `observable` must be increasing in E_J.
double tune_josephson_energy(const TransmonSpec &spec,
                             const std::function<double(const TransmonSpectrum &)> &observable,
                             double target);

}  // namespace cosim

#endif
