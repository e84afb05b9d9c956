"""Backend parity: the compiled kernels must match the numpy fallback to
rounding on identical inputs."""

import numpy as np
import pytest

from ttforms._kernels import fallback

compiled = pytest.importorskip(
    "ttforms._kernels._core", reason="compiled kernels not built"
)


@pytest.fixture(scope="module")
def data():
    rng = np.random.default_rng(7)
    n = 300
    return {
        "lam": np.sort(rng.uniform(0.01, 30.0, n)),
        "coef": rng.normal(size=n) + 1j * rng.normal(size=n),
        "spin": np.round(rng.uniform(-8, 8, n)),
        "nu": rng.uniform(-20.0, 20.0, n),
        "d1s": rng.uniform(0.5, 2.0, 32),
        "d2s": rng.uniform(-1.0, 1.0, 32),
    }


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / (np.abs(b) + 1e-300)))


DELTA = 1.1 + 0.3j


def test_deformed_holo_terms(data):
    for k in (0.5, -0.5, 12.0):
        got = compiled.deformed_holo_terms(data["lam"], data["coef"], 0.17, DELTA, k)
        ref = fallback.deformed_holo_terms(data["lam"], data["coef"], 0.17, DELTA, k)
        assert rel(got, ref) < 1e-12


def test_plain_terms(data):
    got = compiled.plain_holo_terms(data["lam"], data["coef"], DELTA)
    ref = fallback.plain_holo_terms(data["lam"], data["coef"], DELTA)
    assert rel(got, ref) < 1e-13
    got = compiled.plain_real_terms(data["lam"], data["spin"], data["coef"], 1.1, 0.3)
    ref = fallback.plain_real_terms(data["lam"], data["spin"], data["coef"], 1.1, 0.3)
    assert rel(got, ref) < 1e-13


def test_deformed_real_terms(data):
    for weighted, k in ((True, 1.0), (True, 24.0), (False, 0.0)):
        got = compiled.deformed_real_terms(
            data["lam"], data["spin"], data["coef"], 0.1, 1.1, 0.3, k, weighted)
        ref = fallback.deformed_real_terms(
            data["lam"], data["spin"], data["coef"], 0.1, 1.1, 0.3, k, weighted)
        assert rel(got, ref) < 1e-12


def test_shifted_theta_terms(data):
    got = compiled.shifted_theta_terms(data["nu"], 0.2, DELTA, 0.5)
    ref = fallback.shifted_theta_terms(data["nu"], 0.2, DELTA, 0.5)
    assert rel(got, ref) < 1e-12


def test_real_grid_eval(data):
    got = compiled.real_grid_eval(data["lam"], data["spin"], data["coef"],
                                  data["d1s"], data["d2s"])
    ref = fallback.real_grid_eval(data["lam"], data["spin"], data["coef"],
                                  data["d1s"], data["d2s"])
    assert rel(got, ref) < 1e-12


@pytest.mark.parametrize("s", [2.0 + 0.0j, 3.0 + 0.0j, 2.5 + 1.0j])
def test_eisenstein_real_grid(data, s):
    got = compiled.eisenstein_real_grid(s, data["d1s"], data["d2s"], 25)
    ref = fallback.eisenstein_real_grid(s, data["d1s"], data["d2s"], 25)
    assert rel(got, ref) < 1e-12


def test_eisenstein_sums():
    t, w = np.polynomial.hermite.hermgauss(60)
    for d in (1.2 + 0.0j, 1.1 + 0.4j):
        assert rel(compiled.eisenstein_holo_sum(4.0, d, 20),
                   fallback.eisenstein_holo_sum(4.0, d, 20)) < 1e-13
        assert rel(compiled.eisenstein_deformed_sum(4.0, 0.1, d, 12, t, w),
                   fallback.eisenstein_deformed_sum(4.0, 0.1, d, 12, t, w)) < 1e-13


def test_backend_env_override():
    import subprocess
    import sys

    for choice, expect in (("python", "python"), ("compiled", "compiled")):
        out = subprocess.run(
            [sys.executable, "-c", "import ttforms; print(ttforms.kernel_backend)"],
            env={"TTFORMS_KERNELS": choice, "PATH": "/usr/bin:/bin"},
            capture_output=True, text=True, timeout=120,
        )
        assert out.stdout.strip() == expect
