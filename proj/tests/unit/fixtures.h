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

#ifndef COSIM_TESTS_FIXTURES_H
#define COSIM_TESTS_FIXTURES_H

#include <json.hpp>

namespace cosim::testing {

// Two transmons at opposite ends of an open 6.31 GHz resonator, tuned to
// bare q01 = 4.91 / 5.11 GHz.
inline nlohmann::json two_qubit_config() {
    return nlohmann::json::parse(R"({
      "transmons": [
        {"id": "q1", "c_sigma_ff": 67.95, "levels": 3, "target": {"q01_ghz": 4.91}},
        {"id": "q2", "c_sigma_ff": 67.45, "levels": 3, "target": {"q01_ghz": 5.11}}
      ],
      "lines": [
        {"id": "res", "length_mm": 5.66, "inductance_nh_per_m": 700, "capacitance_pf_per_m": 280,
         "left": {"type": "open"}, "right": {"type": "open"},
         "taps": [
           {"position_mm": 0, "transmon": "q1", "coupling_ff": 4},
           {"position_mm": 5.66, "transmon": "q2", "coupling_ff": 4}
         ]}
      ],
      "drives": [
        {"id": "d1", "transmon": "q1", "coupling_ff": 0.1, "carrier_transmon": "q2",
         "pulse": {"type": "flat_top_gaussian", "vmag_uv": 140, "phase_rad": 0, "duration_ns": 2000,
                   "rise_fall_ns": 15, "sigma_ns": 5, "offset_ns": 30}}
      ],
      "simulation": {"t_end_ns": 2, "mesh_elements": 100, "lamb_modes": 0}
    })");
}

// One transmon at the far end of the same resonator with a resonant
// modulated Gaussian drive.
inline nlohmann::json single_qubit_config() {
    return nlohmann::json::parse(R"({
      "transmons": [{"id": "q", "c_sigma_ff": 67.95, "levels": 3, "target": {"q01_ghz": 4.6}}],
      "lines": [
        {"id": "res", "length_mm": 5.66, "inductance_nh_per_m": 700, "capacitance_pf_per_m": 280,
         "taps": [{"position_mm": 5.66, "transmon": "q", "coupling_ff": 6}]}
      ],
      "drives": [
        {"id": "d", "transmon": "q", "coupling_ff": 0.1, "carrier_transmon": "q",
         "pulse_area_pi": 0.5, "offset_sigmas": 5,
         "pulse": {"type": "modulated_gaussian", "vmag_uv": 40}}
      ],
      "simulation": {"t_end_sigmas": 10, "mesh_elements": 100, "lamb_modes": 0, "sample_stride": 10}
    })");
}

}  // namespace cosim::testing

#endif
