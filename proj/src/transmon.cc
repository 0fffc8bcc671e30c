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

#include "cosim/transmon.h"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "cosim/constants.h"
#include "cosim/error.h"

namespace cosim {

double charging_energy_j(double total_capacitance_f) {
    const double e = PhysicalConstants::e;
    return e * e / (2.0 * total_capacitance_f);
}

TransmonSpectrum diagonalize_unchecked(const TransmonSpec &spec) {
    if (spec.level_count < 1 || spec.level_count > 2 * spec.charge_cutoff + 1)
        throw DomainError(spec.id + ": level count exceeds 2 * charge_cutoff + 1");
    if (!(spec.total_capacitance_f > 0)) throw DomainError(spec.id + ": total capacitance must be > 0");

    const int size = 2 * spec.charge_cutoff + 1;
    const double ec = charging_energy_j(spec.total_capacitance_f);
    const double ej = spec.josephson_energy_hz * PhysicalConstants::h;
    const double hbar = PhysicalConstants::hbar;

    // Work in units of E_C to keep the eigensolver well scaled.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
        const double n = i - spec.charge_cutoff;
        h(i, i) = 4.0 * n * n;
        if (i + 1 < size) h(i, i + 1) = h(i + 1, i) = -0.5 * ej / ec;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw SolverError(spec.id + ": transmon eigensolver failed");

    const int levels = spec.level_count;
    Eigen::MatrixXd v = solver.eigenvectors().leftCols(levels);
    Eigen::VectorXd charge = Eigen::VectorXd::LinSpaced(size, -spec.charge_cutoff, spec.charge_cutoff);

    // Phase convention: n_{j,j+1} > 0.
    for (int j = 0; j + 1 < levels; ++j) {
        const double nj = v.col(j).dot(charge.cwiseProduct(v.col(j + 1)));
        if (nj < 0) v.col(j + 1) *= -1.0;
    }
    Eigen::MatrixXd n = v.transpose() * charge.asDiagonal() * v;
    n = 0.5 * (n + n.transpose()).eval();

    TransmonSpectrum out;
    out.charging_energy_j = ec;
    out.eigenfrequencies.resize(levels);
    const double e0 = solver.eigenvalues()[0];
    for (int j = 0; j < levels; ++j) out.eigenfrequencies[j] = (solver.eigenvalues()[j] - e0) * ec / hbar;
    out.charge_elements = n.cast<std::complex<double>>();
    return out;
}

TransmonSpectrum diagonalize(const TransmonSpec &spec) {
    TransmonSpectrum out = diagonalize_unchecked(spec);
    TransmonSpec wider = spec;
    wider.charge_cutoff += 2;
    const TransmonSpectrum check = diagonalize_unchecked(wider);
    const double scale = out.eigenfrequencies.cwiseAbs().maxCoeff();
    for (int j = 1; j < out.level_count(); ++j) {
        const double shift = std::abs(check.eigenfrequencies[j] - out.eigenfrequencies[j]);
        if (shift > 1e-9 * std::max(scale, std::abs(out.eigenfrequencies[j])))
            throw SolverError(spec.id + ": transmon spectrum not converged in the charge cutoff");
    }
    return out;
}

double anharmonicity(const TransmonSpectrum &spectrum) {
    if (spectrum.level_count() < 3) throw DomainError("anharmonicity needs at least 3 levels");
    return spectrum.transition(1) - spectrum.transition(0);
}

double tune_josephson_energy(const TransmonSpec &spec,
                             const std::function<double(const TransmonSpectrum &)> &observable, double target) {
    TransmonSpec trial = spec;
    auto residual = [&](double ej_hz) {
        trial.josephson_energy_hz = ej_hz;
        return observable(diagonalize(trial)) - target;
    };
    // q01 ~ sqrt(8 E_J E_C) - E_C brackets the root.
    const double ec_hz = charging_energy_j(spec.total_capacitance_f) / PhysicalConstants::h;
    const double f = target / kTwoPi;
    const double guess = (f + ec_hz) * (f + ec_hz) / (8.0 * ec_hz);
    double lo = 0.5 * guess;
    double hi = 2.0 * guess;
    double rlo = residual(lo);
    double rhi = residual(hi);
    for (int i = 0; i < 40 && rlo > 0; ++i) {
        lo *= 0.5;
        rlo = residual(lo);
    }
    for (int i = 0; i < 40 && rhi < 0; ++i) {
        hi *= 2.0;
        rhi = residual(hi);
    }
    if (rlo > 0 || rhi < 0) throw SolverError(spec.id + ": cannot bracket the Josephson energy for the target");
    boost::uintmax_t iterations = 200;
    auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-13 * std::abs(a); };
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, rlo, rhi, tol, iterations);
    return 0.5 * (a + b);
}

}  // namespace cosim
