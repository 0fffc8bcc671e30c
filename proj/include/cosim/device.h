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

#ifndef COSIM_DEVICE_H
#define COSIM_DEVICE_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cosim/coupling.h"
#include "cosim/spec.h"
#include "cosim/transmon.h"

namespace cosim {

struct TapCoupling {
    std::size_t line = 0;
    std::size_t tap = 0;
    std::size_t transmon = 0;
    double beta = 0;
    Eigen::MatrixXd g;  // only for open-open lines, lamb_modes columns
    Dispersive dispersive;
};

struct ExchangeBlock {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t line = 0;
    ExchangeResult result;
};

/// g, chi, B, Lamb-shifted frequencies and exchange couplings of a device.
struct CouplingTables {
    std::vector<TapCoupling> taps;
    std::vector<Eigen::VectorXd> lamb_shifted;  // per transmon (rad/s)
    std::vector<ExchangeBlock> exchange;
};

/// A circuit with every derived quantity resolved: tuned Josephson energies,
/// carrier frequencies, pulse widths from areas, end time, spectra and
/// coupling tables.
struct DeviceModel {
    CircuitSpec circuit;
    SimConfig sim;
    std::vector<TransmonSpectrum> spectra;
    CouplingTables couplings;
    std::vector<std::string> warnings;
};

DeviceModel build_device(const CircuitSpec &circuit, const SimConfig &sim);

/// Coupling tables for an already diagonalized device.
CouplingTables compute_couplings(const CircuitSpec &circuit, const std::vector<TransmonSpectrum> &spectra,
                                 const SimConfig &sim, std::vector<std::string> *warnings = nullptr);

/// Lamb-shifted q01 (rad/s) of one transmon with a trial spectrum.
double lamb_shifted_q01(const CircuitSpec &circuit, std::size_t transmon, const TransmonSpectrum &spectrum,
                        int lamb_modes);

/// Exchange matrix between transmons a and b, zero if they share no line.
Eigen::MatrixXd exchange_between(const CouplingTables &tables, std::size_t a, std::size_t b);

/// Static transition frequencies used by the simulations (qbar, or q when
/// lamb_modes = 0).
Eigen::VectorXd simulation_frequencies(const DeviceModel &device, std::size_t transmon);

}  // namespace cosim

#endif
