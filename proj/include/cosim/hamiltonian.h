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

#ifndef COSIM_HAMILTONIAN_H
#define COSIM_HAMILTONIAN_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cosim/device.h"
#include "cosim/pulse.h"

namespace cosim {

enum class ChannelSource { Pulse, LineTap, Crosstalk };

/// gain * s(t) * n^(transmon), with s(t) a pulse voltage or a line phidot.
struct DriveChannel {
    ChannelSource source = ChannelSource::Pulse;
    std::size_t transmon = 0;
    double gain = 0;  // 2 e beta / hbar, times A for crosstalk
    PulseSpec pulse;  // Pulse and Crosstalk only
    std::size_t line = 0;
    std::size_t tap = 0;
};

/// Qubit Hamiltonian in rad/s on the tensor basis |i j ...>, first transmon
/// most significant.
struct EffectiveHamiltonian {
    std::vector<int> dims;
    Eigen::MatrixXd static_part;              // diag(qbar) + exchange
    std::vector<Eigen::MatrixXd> charge_ops;  // n^(l) embedded in the full space
    std::vector<DriveChannel> channels;

    int dimension() const { return static_cast<int>(static_part.rows()); }
};

/// Static part plus pulse channels (direct and crosstalk drives). Line-tap
/// channels are added when `with_line_taps` is set, for every tap whose
/// drive_to_qubit flag is on.
EffectiveHamiltonian build_hamiltonian(const DeviceModel &device, bool with_line_taps);

/// Sum of the pulse-type channel terms at time t (rad/s).
Eigen::MatrixXd pulse_drive(const EffectiveHamiltonian &hamiltonian, double t);

/// Embeds a single-transmon operator at position `which` of the tensor basis.
Eigen::MatrixXd embed(const std::vector<int> &dims, std::size_t which, const Eigen::MatrixXd &op);

/// Basis labels such as "00", "01", ... in tensor order.
std::vector<std::string> basis_labels(const std::vector<int> &dims);

}  // namespace cosim

#endif
