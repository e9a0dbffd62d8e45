import sys

import numpy as np
import pytest

from spinkron import kernels


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel path by patching the dispatch names."""
    suffix = request.param
    for name in ("kron", "jacobi", "faddeev_leverrier"):
        monkeypatch.setattr(kernels, name, getattr(kernels, f"{name}_{suffix}"))
    return suffix


def random_hermitian(rng, n, scale=1.0):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (x + x.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    report = getattr(mod, "REPORT", None)
    if report:
        terminalreporter.section("acceptance")
        for n in sorted(report):
            terminalreporter.write_line(report[n])
