"""Python access to the WASEP simulator, Gaussian theory and rate functions."""

import json as _json

from ._core import (
    ConfigError,
    DegenerateRegime,
    DomainError,
    SingularMatrix,
    covariance_matrix,
    f_drift,
    fbm_cov,
    field_cov_increment,
    hypergeom_F,
    kernel_K,
    kernel_cov_integral,
    rate_finite_dim,
    rate_path_sub,
    rate_tagged,
    sample_paths,
    suite_names,
    variance_a,
)
from ._core import simulate as _simulate
from ._core import verify_suite as _verify_suite


def simulate(config, seed=None):
    """Run an ensemble. `config` is a dict in the JSON config schema.

    Returns a dict mapping each observable to a list (per sample time) of
    per-replica values, plus "sample_times" and the parsed "summary".
    """
    out = _simulate(_json.dumps(config), seed)
    out["summary"] = _json.loads(out["summary"])
    return out


def verify(suite, quick=True):
    """Run a verification suite and return its report as a dict."""
    return _json.loads(_verify_suite(suite, quick))


__all__ = [
    "ConfigError",
    "DegenerateRegime",
    "DomainError",
    "SingularMatrix",
    "covariance_matrix",
    "f_drift",
    "fbm_cov",
    "field_cov_increment",
    "hypergeom_F",
    "kernel_K",
    "kernel_cov_integral",
    "rate_finite_dim",
    "rate_path_sub",
    "rate_tagged",
    "sample_paths",
    "simulate",
    "suite_names",
    "variance_a",
    "verify",
]
