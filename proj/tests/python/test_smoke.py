# Copyright 2026 The cosim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import copy
import json
import math
import pathlib

import numpy as np
import pytest

import cosim

ROOT = pathlib.Path(__file__).resolve().parents[2]

DEVICE = {
    "transmons": [
        {"id": "q1", "c_sigma_ff": 67.95, "levels": 3, "target": {"q01_ghz": 4.91}},
        {"id": "q2", "c_sigma_ff": 67.45, "levels": 3, "target": {"q01_ghz": 5.11}},
    ],
    "lines": [
        {
            "id": "res",
            "length_mm": 5.66,
            "inductance_nh_per_m": 700,
            "capacitance_pf_per_m": 280,
            "taps": [
                {"position_mm": 0, "transmon": "q1", "coupling_ff": 4},
                {"position_mm": 5.66, "transmon": "q2", "coupling_ff": 4},
            ],
        }
    ],
    "simulation": {"t_end_ns": 2, "mesh_elements": 100, "lamb_modes": 0, "backend": "closed"},
}


def device(**simulation):
    doc = copy.deepcopy(DEVICE)
    doc["simulation"].update(simulation)
    return doc


def test_scale_decimal_is_exact():
    assert cosim.scale_decimal(5.66, -3) == 5.66e-3
    assert cosim.scale_decimal(280, -12) == 280e-12


def test_normalize_writes_si_keys():
    norm = cosim.normalize_config(DEVICE)
    assert norm["lines"][0]["length_m"] == 5.66e-3
    assert "length_mm" not in norm["lines"][0]


def test_hash_ignores_unit_choice():
    other = copy.deepcopy(DEVICE)
    del other["lines"][0]["length_mm"]
    other["lines"][0]["length_um"] = 5660
    assert cosim.config_hash(other) == cosim.config_hash(DEVICE)
    assert len(cosim.config_hash(DEVICE)) == 16


def test_config_errors_name_the_field():
    bad = copy.deepcopy(DEVICE)
    bad["lines"][0]["length_furlongs"] = 1
    with pytest.raises(cosim.ConfigError, match="length_furlongs"):
        cosim.normalize_config(bad)


def test_spectrum_hits_target():
    spec = cosim.spectrum(DEVICE)
    assert spec[0]["levels_hz"][1] == pytest.approx(4.91e9, abs=1e3)
    assert spec[0]["ec_hz"] == pytest.approx(2.850659209e8, rel=1e-9)
    assert spec[0]["n_up"][0] == pytest.approx(1.037238376793, rel=1e-6)


def test_exchange_coupling():
    j = cosim.couplings(DEVICE)["exchange"][0]["j_hz"][0][0]
    assert j == pytest.approx(1.580213158e6, rel=1e-4)


def test_fem_fundamental():
    f = cosim.fem_frequencies(5.66e-3, 0.7e-6, 280e-12, 400)
    exact = 1 / (2 * 5.66e-3 * math.sqrt(0.7e-6 * 280e-12))
    assert f[0] == pytest.approx(exact, rel=1e-5)
    assert f[1] == pytest.approx(2 * exact, rel=1e-4)


def test_simulate_returns_arrays():
    out = cosim.simulate(device(initial_state="10"))
    n = out["t"].shape[0]
    assert out["populations"].shape == (n, 9)
    assert out["charge"].shape == (2, n)
    assert out["labels"][3] == "10"
    assert np.allclose(out["populations"].sum(axis=1), 1.0, atol=1e-10)
    assert out["populations"][0, 3] == 1.0
    assert out["final_state"].dtype == np.complex128


def test_silent_ms_run_stays_put():
    out = cosim.simulate(device(backend="ms"))
    assert np.all(np.abs(out["populations"][:, 0] - 1.0) < 1e-12)


def test_accepts_text_and_path(tmp_path):
    path = tmp_path / "device.json"
    path.write_text(json.dumps(DEVICE))
    assert cosim.config_hash(str(path)) == cosim.config_hash(json.dumps(DEVICE))


def test_scenario_files_parse():
    names = sorted(p.stem for p in (ROOT / "scenarios").glob("*.json"))
    assert {"fig3a", "fig6", "appC_fig8"} <= set(names)
    for name in names:
        doc = json.loads((ROOT / "scenarios" / f"{name}.json").read_text())
        base = {k: v for k, v in doc.items() if k not in ("scenario", "sweep", "name", "description")}
        cosim.normalize_config(base)
