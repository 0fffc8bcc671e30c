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

#ifndef COSIM_SPEC_H
#define COSIM_SPEC_H

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cosim {

// All quantities are SI. Frequencies stored in Hz where the field name says
// `_hz`; everything that enters a Hamiltonian is converted to rad/s at use.

struct FlatTopGaussian {
    double amplitude_v = 0;
    double carrier_hz = 0;
    double phase_rad = 0;
    double duration_s = 0;
    double rise_fall_s = 0;
    double sigma_s = 0;
    double offset_s = 0;

    bool operator==(const FlatTopGaussian &) const = default;
};

struct ModulatedGaussian {
    double amplitude_v = 0;
    double carrier_hz = 0;
    double offset_s = 0;
    double sigma_s = 0;

    bool operator==(const ModulatedGaussian &) const = default;
};

using PulseSpec = std::variant<FlatTopGaussian, ModulatedGaussian>;

/// Target for Josephson-energy tuning: E_J is root-found so that the first
/// transition frequency (bare or Lamb-shifted) hits `q01_hz`.
struct FrequencyTarget {
    double q01_hz = 0;
    bool lamb_shifted = false;

    bool operator==(const FrequencyTarget &) const = default;
};

struct TransmonSpec {
    std::string id;
    double josephson_energy_hz = 0;  // E_J / h
    double total_capacitance_f = 0;  // C_Sigma, includes every coupling capacitance
    int level_count = 3;
    int charge_cutoff = 15;
    std::optional<FrequencyTarget> target;

    bool operator==(const TransmonSpec &) const = default;
};

struct OpenEnd {
    bool operator==(const OpenEnd &) const = default;
};
struct ShortEnd {
    bool operator==(const ShortEnd &) const = default;
};
struct ResistorEnd {
    double resistance_ohm = 50;
    bool operator==(const ResistorEnd &) const = default;
};
struct TheveninEnd {
    PulseSpec pulse;
    double series_resistance_ohm = 50;
    bool operator==(const TheveninEnd &) const = default;
};

using Termination = std::variant<OpenEnd, ShortEnd, ResistorEnd, TheveninEnd>;

struct Tap {
    double position_m = 0;
    std::size_t transmon = 0;
    double coupling_capacitance_f = 0;
    bool backaction_enabled = true;
    bool drive_to_qubit_enabled = true;

    bool operator==(const Tap &) const = default;
};

struct LineSpec {
    std::string id;
    double length_m = 0;
    double inductance_per_m = 0;
    double capacitance_per_m = 0;
    Termination left_end = OpenEnd{};
    Termination right_end = OpenEnd{};
    std::vector<Tap> taps;

    bool operator==(const LineSpec &) const = default;
};

/// A voltage source capacitively coupled straight onto a transmon island.
struct DirectDrive {
    std::string id;
    std::size_t transmon = 0;
    double coupling_capacitance_f = 0;
    std::optional<double> beta_override;
    PulseSpec pulse;
    // Resolved against the device spectra before simulation.
    std::optional<std::size_t> carrier_transmon;
    std::optional<double> pulse_area_rad;  // sets sigma of a modulated Gaussian
    std::optional<double> offset_sigmas;   // sets t0 = offset_sigmas * sigma

    bool operator==(const DirectDrive &) const = default;
};

struct CrosstalkDriveSpec {
    double amplitude_scale = 0;
    double phase_rad = 0;

    bool operator==(const CrosstalkDriveSpec &) const = default;
};

/// Phenomenological crosstalk: a scaled, phase-shifted copy of a direct drive
/// applied to another transmon.
struct CrosstalkDrive {
    std::size_t transmon = 0;
    CrosstalkDriveSpec spec;
    std::size_t source_drive = 0;

    bool operator==(const CrosstalkDrive &) const = default;
};

struct CircuitSpec {
    std::vector<TransmonSpec> transmons;
    std::vector<LineSpec> lines;
    std::vector<DirectDrive> direct_drives;
    std::vector<CrosstalkDrive> crosstalk_drives;

    bool operator==(const CircuitSpec &) const = default;
};

enum class Backend { MaxwellSchrodinger, MaxwellSchrodingerNoBackaction, ClosedSystem, BornOpenSystem };
enum class Integrator { ExponentialMidpoint, Leapfrog };
enum class JRoute { Impedance, ModeSum };

struct Probe {
    std::size_t line = 0;
    double position_m = 0;

    bool operator==(const Probe &) const = default;
};

struct SimConfig {
    double t_end_s = 0;
    std::optional<double> t_end_sigmas;  // t_end = this times the widest resolved drive sigma
    std::optional<double> dt_s;  // explicit step; otherwise cfl_safety * h * sqrt(LC)
    double cfl_safety = 0.5;
    int mesh_elements = 400;
    bool consistent_mass = false;
    Backend backend = Backend::MaxwellSchrodinger;
    Integrator integrator = Integrator::ExponentialMidpoint;
    int fock_truncation = 12;
    int sample_stride = 1;
    int mode_pairs = 200;
    int lamb_modes = 1;
    JRoute j_route = JRoute::Impedance;
    bool j_use_lamb_shifted = false;
    std::string initial_state;  // empty = ground state
    std::vector<Probe> probes;

    bool operator==(const SimConfig &) const = default;
};

const char *to_string(Backend backend);
const char *to_string(Integrator integrator);
const char *to_string(JRoute route);
Backend parse_backend(const std::string &text);
Integrator parse_integrator(const std::string &text);
JRoute parse_j_route(const std::string &text);

/// beta = C_tap / C_Sigma. Throws DomainError unless 0 <= C_tap < C_Sigma.
double beta_factor(const TransmonSpec &transmon, double tap_capacitance_f);

/// Checks every CircuitSpec / SimConfig invariant; throws DomainError naming
/// the violated one.
void validate(const CircuitSpec &circuit);
void validate(const SimConfig &sim);

}  // namespace cosim

#endif
