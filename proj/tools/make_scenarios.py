#!/usr/bin/env python3
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

"""Regenerates the checked-in scenario library under scenarios/."""

import copy
import json
import pathlib
import sys

OUT = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def two_qubit(duration_ns, t_end_ns, stride):
    return {
        "transmons": [
            {"id": "q1", "c_sigma_ff": 67.95, "levels": 3,
             "target": {"q01_ghz": 4.91, "lamb_shifted": True}},
            {"id": "q2", "c_sigma_ff": 67.45, "levels": 3,
             "target": {"q01_ghz": 5.11, "lamb_shifted": True}},
        ],
        "lines": [{
            "id": "res", "length_mm": 5.66,
            "inductance_nh_per_m": 700, "capacitance_pf_per_m": 280,
            "left": {"type": "open"}, "right": {"type": "open"},
            "taps": [
                {"position_mm": 0, "transmon": "q1", "coupling_ff": 4},
                {"position_mm": 5.66, "transmon": "q2", "coupling_ff": 4},
            ],
        }],
        "drives": [{
            "id": "d1", "transmon": "q1", "coupling_ff": 0.1, "carrier_transmon": "q2",
            "pulse": {"type": "flat_top_gaussian", "vmag_uv": 140, "phase_rad": 0,
                      "duration_ns": duration_ns, "rise_fall_ns": 15, "sigma_ns": 5,
                      "offset_ns": 30},
        }],
        "simulation": {"t_end_ns": t_end_ns, "mesh_elements": 100, "sample_stride": stride,
                       "lamb_modes": 1, "j_route": "impedance"},
    }


def single_qubit(q01_ghz, c_r_ff):
    return {
        "transmons": [{"id": "q", "c_sigma_ff": 67.95, "levels": 3,
                       "target": {"q01_ghz": q01_ghz, "lamb_shifted": False}}],
        "lines": [{
            "id": "res", "length_mm": 5.66,
            "inductance_nh_per_m": 700, "capacitance_pf_per_m": 280,
            "left": {"type": "open"}, "right": {"type": "open"},
            "taps": [{"position_mm": 5.66, "transmon": "q", "coupling_ff": c_r_ff}],
        }],
        "drives": [{
            "id": "d", "transmon": "q", "coupling_ff": 0.1, "carrier_transmon": "q",
            "pulse_area_pi": 0.5, "offset_sigmas": 5,
            "pulse": {"type": "modulated_gaussian", "vmag_uv": 40},
        }],
        "simulation": {"t_end_sigmas": 10, "mesh_elements": 100, "sample_stride": 20,
                       "lamb_modes": 0, "fock_truncation": 12},
    }


def run(label, backend, state, patches=()):
    return {"label": label, "backend": backend, "initial_state": state, "patches": list(patches)}


def tap_patch(index, value):
    return {"path": f"/lines/0/taps/{index}/backaction", "value": value}


AREAS = [("a1", 0.5), ("a3", 1.5), ("a5", 2.5), ("a7", 3.5)]


def area_patch(area):
    return {"path": "/drives/0/pulse_area_pi", "value": area}


def fig3a():
    doc = two_qubit(2000, 2000, 250)
    doc["description"] = ("Cross-resonance drive of q1 at the q2 frequency, back-action off, "
                          "against dense evolution of the effective Hamiltonian.")
    doc["scenario"] = {
        "rabi_transmon": "q2",
        "runs": [run("ms_noba_00", "ms_no_backaction", "00"), run("ms_noba_10", "ms_no_backaction", "10"),
                 run("closed_00", "closed", "00"), run("closed_10", "closed", "10")],
        "checks": [
            {"type": "max_pop_diff", "a": "ms_noba_00", "b": "closed_00", "threshold": 0.02},
            {"type": "max_pop_diff", "a": "ms_noba_10", "b": "closed_10", "threshold": 0.02},
            {"type": "rabi_separation", "a": "closed_00", "b": "closed_10", "threshold": 3},
        ],
    }
    return doc


def fig3b():
    doc = two_qubit(2000, 2000, 250)
    doc["description"] = ("Cross-resonance drive with back-action on, against dense evolution "
                          "with a fitted crosstalk drive on q2.")

    def xtalk(a, phase_pi):
        return {"path": "/crosstalk_drives",
                "value": [{"transmon": "q2", "source": "d1", "amplitude_scale": a, "phase_pi": phase_pi}]}

    doc["scenario"] = {
        "rabi_transmon": "q2",
        "runs": [run("ms_00", "ms", "00"), run("ms_10", "ms", "10"),
                 run("closed_xt_00", "closed", "00", [xtalk(0.007, 0)]),
                 run("closed_xt_10", "closed", "10", [xtalk(0.0018, 1)])],
        "checks": [
            {"type": "rabi_match", "a": "ms_00", "b": "closed_xt_00", "threshold": 1},
            {"type": "rabi_match", "a": "ms_10", "b": "closed_xt_10", "threshold": 1},
        ],
    }
    return doc


def fig4():
    doc = two_qubit(2000, 2000, 20)
    doc["description"] = ("Line voltage at the q2 end of the resonator with back-action from the "
                          "control transmon only and from both transmons.")
    doc["simulation"]["probes"] = [{"line": "res", "position_mm": 5.66}]
    doc["scenario"] = {
        "rabi_transmon": "q2",
        "runs": [run("total_00", "ms", "00"), run("control_00", "ms", "00", [tap_patch(1, False)]),
                 run("total_10", "ms", "10"), run("control_10", "ms", "10", [tap_patch(1, False)])],
        "checks": [{"type": "envelope_diff", "a": "control_00", "b": "total_00", "probe": 0,
                    "threshold": 0.1},
                   {"type": "envelope_diff", "a": "control_10", "b": "total_10", "probe": 0,
                    "threshold": 0.1}],
    }
    return doc


def short_runs():
    return [run("ms_00", "ms", "00"), run("ms_noba_00", "ms_no_backaction", "00")]


def short_base(description):
    doc = two_qubit(340, 400, 100)
    doc["description"] = description
    doc["scenario"] = {"rabi_transmon": "q2", "runs": short_runs(), "checks": []}
    return doc


def coupling_patches(c_ff):
    return [{"path": "/lines/0/taps/0/coupling_ff", "value": c_ff},
            {"path": "/lines/0/taps/1/coupling_ff", "value": c_ff}]


def control_patches(q1, q2):
    return [{"path": "/transmons/0/target/q01_ghz", "value": q1},
            {"path": "/transmons/1/target/q01_ghz", "value": q2}]


def apply(doc, patches):
    for p in patches:
        parts = p["path"].strip("/").split("/")
        node = doc
        for key in parts[:-1]:
            node = node[int(key)] if isinstance(node, list) else node[key]
        node[parts[-1]] = p["value"]
    return doc


SWEEPS = {
    "fig6": ("Back-action vs no back-action for resonator coupling C_R = 3, 4, 5 fF.",
             ["/lines/0/taps/0/coupling_ff", "/lines/0/taps/1/coupling_ff"],
             [[3, 3], [4, 4], [5, 5]], "max_ba_deviation_increasing"),
    "fig7": ("Back-action vs no back-action for qubit detuning 250, 275, 300 MHz.",
             ["/transmons/0/target/q01_ghz"], [[4.86], [4.835], [4.81]], ""),
    "fig9": ("Back-action vs no back-action for resonator detuning 1.15, 1.05, 0.95 GHz "
             "at 200 MHz qubit detuning.",
             ["/transmons/0/target/q01_ghz", "/transmons/1/target/q01_ghz"],
             [[4.96, 5.16], [5.06, 5.26], [5.16, 5.36]], ""),
}


def sweep_docs(name):
    description, params, points, trend = SWEEPS[name]
    docs = {}
    base = short_base(description)
    sweep = {"parameters": params, "points": points, "labels": ["a", "b", "c"]}
    if trend:
        sweep["trend"] = trend
    full = copy.deepcopy(base)
    full["sweep"] = sweep
    docs[name] = full
    for label, values in zip("abc", points):
        one = copy.deepcopy(base)
        apply(one, [{"path": p, "value": v} for p, v in zip(params, values)])
        one["description"] = f"{description} Point {label}."
        docs[f"{name}_{label}"] = one
    return docs


def single_transmon(q01, c_r, description):
    doc = single_qubit(q01, c_r)
    doc["description"] = description
    runs, checks, trend = [], [], []
    for tag, area in AREAS:
        p = [area_patch(area)]
        runs += [run(f"{tag}_ms_0", "ms", "0", p), run(f"{tag}_ms_1", "ms", "1", p),
                 run(f"{tag}_noba_0", "ms_no_backaction", "0", p),
                 run(f"{tag}_noba_1", "ms_no_backaction", "1", p),
                 run(f"{tag}_born_0", "born", "0", p), run(f"{tag}_closed_0", "closed", "0", p)]
        checks += [
            {"type": "max_pop_diff", "a": f"{tag}_born_0", "b": f"{tag}_ms_0", "threshold": 0.02},
            {"type": "max_pop_diff", "a": f"{tag}_noba_0", "b": f"{tag}_closed_0", "threshold": 0.02},
        ]
        trend += [f"{tag}_noba_0", f"{tag}_noba_1", f"{tag}_ms_0", f"{tag}_ms_1"]
    checks.append({"type": "infidelity_trend", "runs": trend, "threshold": 0})
    doc["scenario"] = {"rabi_transmon": "q", "runs": runs, "checks": checks}
    return doc


def single_transmon_fidelity():
    doc = single_qubit(4.6, 6)
    doc["description"] = ("Infidelity of the back-action gate against the no-back-action gate for "
                          "the three single-qubit devices and four pulse areas.")
    runs, trend = [], []
    for tag, area in AREAS:
        p = [area_patch(area)]
        runs += [run(f"{tag}_noba_0", "ms_no_backaction", "0", p),
                 run(f"{tag}_noba_1", "ms_no_backaction", "1", p),
                 run(f"{tag}_ms_0", "ms", "0", p), run(f"{tag}_ms_1", "ms", "1", p)]
        trend += [f"{tag}_noba_0", f"{tag}_noba_1", f"{tag}_ms_0", f"{tag}_ms_1"]
    doc["scenario"] = {"rabi_transmon": "q", "runs": runs,
                       "checks": [{"type": "infidelity_trend", "runs": trend, "threshold": 0}]}
    doc["sweep"] = {"parameters": ["/lines/0/taps/0/coupling_ff", "/transmons/0/target/q01_ghz"],
                    "points": [[6, 4.6], [8, 4.6], [6, 4.7]],
                    "labels": ["q46_c6", "q46_c8", "q47_c6"]}
    return doc


def main():
    docs = {"fig3a": fig3a(), "fig3b": fig3b(), "fig4": fig4()}
    for name in SWEEPS:
        docs.update(sweep_docs(name))
    docs["appC_fig6"] = single_transmon(4.6, 6, "Single transmon, q01 = 4.6 GHz, C_R = 6 fF, four pulse areas.")
    docs["appC_fig7"] = single_transmon(4.6, 8, "Single transmon, q01 = 4.6 GHz, C_R = 8 fF, four pulse areas.")
    docs["appC_fig8"] = single_transmon_fidelity()
    docs["appC_fig9"] = single_transmon(4.7, 6, "Single transmon, q01 = 4.7 GHz, C_R = 6 fF, four pulse areas.")
    OUT.mkdir(exist_ok=True)
    for name, doc in docs.items():
        doc = {"name": name, **doc}
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {len(docs)} scenarios to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
