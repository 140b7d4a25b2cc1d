"""Python front end for the retrodiff C++ library."""

import json
import os

from ._core import (
    ConfigError,
    CoverageError,
    DomainError,
    RetrodiffError,
    StepSizeError,
    SupportError,
    UnsupportedModelError,
    __version__,
    amplifier_density,
    guidance_drift,
    husimi_coherent,
    ks_two_sample,
    simulate,
    wasserstein1,
    wasserstein1_to_normal,
)
from . import _core


def run_scenario(config):
    """Run one scenario; returns {"metrics", "manifest", "outputs"}."""
    return json.loads(_core.run_scenario_json(json.dumps(_normalize(config))))


def run_chaos(config):
    """Run the propagation-of-chaos sweep and return its metrics."""
    return json.loads(_core.run_chaos_json(json.dumps(_normalize(config))))


def _normalize(config):
    out = dict(config)
    if "out_dir" in out:
        out["out_dir"] = os.fspath(out["out_dir"])
    return out


__all__ = [
    "ConfigError",
    "CoverageError",
    "DomainError",
    "RetrodiffError",
    "StepSizeError",
    "SupportError",
    "UnsupportedModelError",
    "__version__",
    "amplifier_density",
    "guidance_drift",
    "husimi_coherent",
    "ks_two_sample",
    "run_chaos",
    "run_scenario",
    "simulate",
    "wasserstein1",
    "wasserstein1_to_normal",
]
