# Copyright 2026 The padmm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Differentially private decentralized ADMM simulator.

Thin Python layer over the C++ core: privacy accounting, budget planning,
synthetic data and the experiment runner.
"""

import json

from padmm._core import (
    SolverError,
    config_keys,
    dp_to_zcdp,
    gaussian_zcdp,
    logistic_loss,
    svt_split_ratio,
    svt_zcdp,
    synthetic_blobs,
    zcdp_for_dp_target,
    zcdp_to_dp,
)
from padmm import _core

__all__ = [
    "SolverError",
    "config_keys",
    "config_text",
    "dp_to_zcdp",
    "gaussian_zcdp",
    "logistic_loss",
    "plan_budget",
    "run_experiment",
    "svt_split_ratio",
    "svt_zcdp",
    "synthetic_blobs",
    "zcdp_for_dp_target",
    "zcdp_to_dp",
]


def _as_text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    if value is None:
        return "auto"
    return repr(value) if isinstance(value, float) else str(value)


def _overrides(options):
    return {key: _as_text(value) for key, value in options.items()}


def config_text(**options):
    """Returns the validated config, with `options` applied, as text."""
    return _core.config_text(_overrides(options))


def run_experiment(**options):
    """Runs an experiment and returns its report records as dicts.

    Keyword arguments are config keys (see `config_keys()`), e.g.
    `run_experiment(algorithm="pp_admm", epsilon=10, seeds=[0, 1])`.
    """
    text = _core.run_experiment_ndjson(_overrides(options))
    return [json.loads(line) for line in text.splitlines() if line]


def plan_budget(epsilon, delta, rounds, dataset_sizes, degrees, *,
                algorithm="pp_admm", eta=0.5, beta=10 ** -3.5, splits=0.001,
                max_broadcasts=None, svt_epsilons=None,
                calibration="dp_to_zcdp"):
    """Returns the privacy budget plan as a dict."""
    return json.loads(_core.plan_budget_json(
        algorithm, epsilon, delta, rounds, list(dataset_sizes), list(degrees),
        eta, beta, splits, max_broadcasts, svt_epsilons, calibration))
