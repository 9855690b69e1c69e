import math

import numpy as np
import pytest

import wasep_mdp as w


def test_variance_function():
    assert w.variance_a(1.0, 1.0) == pytest.approx(0.21 * math.sqrt(2.0 / math.pi), rel=1e-12)
    assert w.variance_a(0.5, 1.0, beta=0.5) == pytest.approx(0.084 * 0.5, rel=1e-12)
    assert w.variance_a(0.7, 0.3) == w.variance_a(0.3, 0.7)


def test_kernel_matches_fbm():
    assert w.kernel_cov_integral(1.0, 0.5) == pytest.approx(w.fbm_cov(1.0, 0.5), abs=1e-8)
    with pytest.raises(ValueError):
        w.kernel_K(0.5, 1.0)


def test_covariance_and_sampler():
    times = [0.5, 1.0]
    A = w.covariance_matrix(times)
    assert A.shape == (2, 2)
    assert np.allclose(A, A.T)
    paths = w.sample_paths(times, 20000, seed=3)
    emp = np.cov(paths.T)
    assert np.allclose(emp, A, atol=0.01)


def test_rates():
    assert w.rate_finite_dim([1.0], np.array([1.0])) == pytest.approx(math.sqrt(math.pi / 2) / 0.42, rel=1e-12)
    assert w.rate_path_sub([0.0, 1.0], [0.0, 1.0]) == pytest.approx(1.0 / (2 * 0.21 * 0.4), rel=1e-12)
    with pytest.raises(ValueError):
        w.rate_finite_dim([1.0], np.array([1.0]), beta=0.5, rho=0.5)


def test_simulate_is_deterministic():
    config = {
        "process": {"n": 20, "alpha": 1.0, "beta": 2.0, "rho": 0.3, "horizon": 0.2},
        "replicas": 8,
        "master_seed": 11,
        "sample_times": [0.1, 0.2],
        "observables": {"current": True, "tagged": True},
    }
    a = w.simulate(config)
    b = w.simulate(config)
    assert a["current"] == b["current"]
    assert len(a["tagged"]) == 2 and len(a["tagged"][0]) == 8
    assert a["summary"]["breaches"] == 0
    with pytest.raises(ValueError):
        w.simulate({"process": {}})


def test_verify_suite():
    assert "kernel" in w.suite_names()
    report = w.verify("kernel", quick=True)
    assert report["pass"] is True
    with pytest.raises(ValueError):
        w.verify("nope")
