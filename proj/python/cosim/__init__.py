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

"""Python access to the cosim simulation core.

Configurations may be passed as JSON text, a dict, or a path to a file.
"""

import json
import os

from . import _cosim
from ._cosim import ConfigError, DomainError, SolverError, fem_frequencies, scale_decimal

__all__ = [
    "ConfigError",
    "DomainError",
    "SolverError",
    "config_hash",
    "couplings",
    "fem_frequencies",
    "normalize_config",
    "run_scenario",
    "scale_decimal",
    "simulate",
    "spectrum",
]


def _text(config):
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, (str, os.PathLike)) and os.path.isfile(config):
        with open(config) as f:
            return f.read()
    return str(config)


def normalize_config(config):
    """SI-suffixed dict equivalent to ``config``."""
    return json.loads(_cosim.normalize_config(_text(config)))


def config_hash(config):
    return _cosim.config_hash(_text(config))


def spectrum(config):
    """Per transmon: E_J, E_C, level frequencies (Hz) and n_{j,j+1}."""
    return json.loads(_cosim.spectrum(_text(config)))


def couplings(config):
    """Exchange matrices J/2pi (Hz) and Lamb-shifted levels (Hz)."""
    return json.loads(_cosim.couplings(_text(config)))


def simulate(config):
    """Trajectory of the configured backend as a dict of arrays."""
    return _cosim.simulate(_text(config))


def run_scenario(name, out_dir="", backend=""):
    """Runs a shipped scenario (or a scenario file) and returns run and check results."""
    return _cosim.run_scenario(os.fspath(name), os.fspath(out_dir), backend)
