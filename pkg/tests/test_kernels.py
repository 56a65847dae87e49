"""Backend parity: the numba kernels and the pure-numpy fallback must agree."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from rydsurf import _kernels

_CHILD = r"""
import json
from rydsurf import _kernels, oracle
eig, = oracle.solve_bound_states(oracle.GridSpec(60.0, 2000), 0.0237)
print(json.dumps({
    "use_numba": _kernels.USE_NUMBA,
    "gamma": _kernels.gamma_upper_scalar(2.9526, 1.0),
    "eigenvalue": eig.eigenvalue,
}))
"""


def _run_child(no_numba):
    env = dict(os.environ)
    if no_numba:
        env["RYDSURF_NO_NUMBA"] = "1"
    else:
        env.pop("RYDSURF_NO_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", _CHILD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_gamma_upper_scalar_both_branches():
    assert _kernels.gamma_upper_scalar(2.9526, 1.0) == pytest.approx(
        1.7515334935826166, rel=1e-13)
    assert _kernels.gamma_upper_scalar(2.9526, 4.0) == pytest.approx(
        0.4399593459470028, rel=1e-13)


def test_gamma_upper_array_matches_scalar():
    z = np.geomspace(0.01, 20.0, 25)
    values = _kernels.gamma_upper_array(1.9526, z)
    for zi, vi in zip(z, values):
        assert vi == pytest.approx(_kernels.gamma_upper_scalar(1.9526, zi), rel=1e-14)


def test_sturm_count_on_laplacian():
    # free discrete Laplacian: eigenvalues 2 - 2 cos(k pi / (m+1))
    m = 50
    d = np.full(m, 2.0)
    e2 = np.full(m - 1, 1.0)
    exact = 2.0 - 2.0 * np.cos(np.arange(1, m + 1) * math.pi / (m + 1))
    for k in (1, 10, 25, 50):
        x = 0.5 * (exact[k - 1] + (exact[k] if k < m else 4.0))
        assert _kernels.sturm_count(d, e2, x) == k


def test_kth_eigenvalue_on_laplacian():
    m = 50
    d = np.full(m, 2.0)
    e2 = np.full(m - 1, 1.0)
    exact = 2.0 - 2.0 * np.cos(np.arange(1, m + 1) * math.pi / (m + 1))
    for k in (0, 3, 49):
        value = _kernels.kth_eigenvalue(d, e2, k, -1.0, 5.0)
        assert value == pytest.approx(exact[k], rel=1e-12, abs=1e-12)


def test_inverse_iteration_recovers_eigenvector():
    # Dirichlet FD Laplacian (diag 2, off-diag -1): lowest mode is sin(k pi/(m+1))
    m = 80
    d = np.full(m, 2.0)
    e = np.full(m - 1, -1.0)
    lam = 2.0 - 2.0 * math.cos(math.pi / (m + 1))
    v = _kernels.inverse_iteration(d, e, lam, 4)
    exact = np.sin(np.arange(1, m + 1) * math.pi / (m + 1))
    exact /= np.linalg.norm(exact)
    assert float(np.max(np.abs(v / np.linalg.norm(v) - exact))) < 1e-10


def test_backends_agree():
    fast = _run_child(no_numba=False)
    slow = _run_child(no_numba=True)
    assert fast["use_numba"] is True
    assert slow["use_numba"] is False
    assert slow["gamma"] == pytest.approx(fast["gamma"], rel=1e-14)
    assert slow["eigenvalue"] == pytest.approx(fast["eigenvalue"], rel=1e-12)
