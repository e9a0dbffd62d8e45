"""Invariant self-test run by ``spinkron check``.

A compact, dependency-free subset of the test suite that can be run on an
installed package: operator algebra, Kronecker identities, the closed-form
Breit-Rabi matrices, the basis-set oracle, characteristic polynomials, block
structure and the eigensolver.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

from spinkron.hamiltonian_builder import BreitRabiParams, build_breit_rabi
from spinkron.matrix_core import ComplexMatrix, commutator, identity, kron
from spinkron.oracle_basis import build_breit_rabi_basis
from spinkron.spectral import (
    Permutation,
    block_structure,
    char_poly,
    eigen_hermitian,
    isospectral,
    permutation_conjugate,
)
from spinkron.spin_operators import spin_matrices

CHECKS: list[tuple[str, Callable[[np.random.Generator], tuple[float, float]]]] = []


def check(name: str, tol: float):
    def register(fn):
        CHECKS.append((name, lambda rng: (fn(rng), tol)))
        return fn

    return register


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


@check("spin commutators [Jx,Jy]=iJz (2j=0..10)", 1e-13)
def _commutators(rng):
    worst = 0.0
    for tj in range(11):
        jx, jy, jz = spin_matrices(tj)
        for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
            worst = max(worst, _max_abs(commutator(a, b), 1j * c))
    return worst


@check("Casimir J^2 = j(j+1) (2j=0..10)", 1e-13)
def _casimir(rng):
    worst = 0.0
    for tj in range(11):
        jx, jy, jz = spin_matrices(tj)
        j = tj / 2
        total = jx @ jx + jy @ jy + jz @ jz
        worst = max(worst, _max_abs(total, j * (j + 1) * identity(tj + 1)))
    return worst


def _random_matrix(rng, n):
    return ComplexMatrix(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


@check("kron mixed-product identity", 1e-12)
def _mixed_product(rng):
    worst = 0.0
    for _ in range(20):
        a, c = _random_matrix(rng, 2), _random_matrix(rng, 2)
        b, d = _random_matrix(rng, 3), _random_matrix(rng, 3)
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        worst = max(worst, _max_abs(lhs, rhs) / max(1.0, lhs.maxnorm()))
    return worst


def _eq7(A, B, a, b):
    return 0.25 * np.array(
        [
            [A + 2 * B * (a + b), 0, 0, 0],
            [0, 2 * B * (b - a) - A, 2 * A, 0],
            [0, 2 * A, 2 * B * (a - b) - A, 0],
            [0, 0, 0, A - 2 * B * (a + b)],
        ]
    )


@check("Breit-Rabi I=1/2 closed form", 1e-13)
def _golden(rng):
    worst = 0.0
    for _ in range(10):
        A, B, a, b = rng.uniform(-5, 5, 4)
        H = build_breit_rabi(BreitRabiParams(1, A, B, a, b))
        ref = _eq7(A, B, a, b)
        worst = max(worst, _max_abs(H, ref) / max(1.0, np.max(np.abs(ref))))
    return worst


@check("basis-set oracle agrees with kron builder (2I=1..7)", 1e-13)
def _oracle(rng):
    worst = 0.0
    for tj in range(1, 8):
        for _ in range(5):
            p = BreitRabiParams(tj, *rng.uniform(-5, 5, 4))
            H1, H2 = build_breit_rabi(p), build_breit_rabi_basis(p)
            worst = max(worst, _max_abs(H1, H2) / max(1.0, H1.maxnorm()))
    return worst


@check("characteristic polynomial factorization (I=1/2)", 1e-9)
def _charpoly(rng):
    worst = 0.0
    for _ in range(5):
        A, B, a, b = rng.uniform(-5, 5, 4)
        cp = char_poly(build_breit_rabi(BreitRabiParams(1, A, B, a, b)))
        for E in np.linspace(-5, 5, 11):
            ref = (
                (4 * E - A - 2 * B * (a + b))
                * (4 * E - A + 2 * B * (a + b))
                * (16 * E * E + 8 * A * E - 3 * A * A - 4 * B * B * (a - b) ** 2)
                / 256
            )
            worst = max(worst, abs(cp(E) - ref) / max(abs(ref), cp.abs_scale(E)))
    return worst


@check("block structure [1,2,1] and [1,2,2,2,1]", 0.0)
def _blocks(rng):
    A, B, a, b = 1.3, 0.7, 2.1, -0.4
    s1 = block_structure(build_breit_rabi(BreitRabiParams(1, A, B, a, b))).block_sizes
    s3 = block_structure(build_breit_rabi(BreitRabiParams(3, A, B, a, b))).block_sizes
    return 0.0 if (s1, s3) == ((1, 2, 1), (1, 2, 2, 2, 1)) else 1.0


@check("permutation-conjugated matrices are isospectral", 0.0)
def _isospectral(rng):
    H = build_breit_rabi(BreitRabiParams(3, *rng.uniform(-5, 5, 4)))
    ok = isospectral(H, permutation_conjugate(H, Permutation.reversal(8)))
    return 0.0 if ok else 1.0


@check("eigensolver residuals and trace sum rules", 1e-11)
def _eigen(rng):
    worst = 0.0
    for tj in (1, 3, 5, 7):
        H = build_breit_rabi(BreitRabiParams(tj, *rng.uniform(-5, 5, 4)))
        spec = eigen_hermitian(H, want_vectors=True)
        h, w, v = H.data, spec.eigenvalues, spec.eigenvectors.data
        norm = np.linalg.norm(h)
        res = np.linalg.norm(h @ v - v * w, axis=0).max() / norm
        tr1 = abs(w.sum() - np.trace(h).real) / max(1.0, norm)
        tr2 = abs((w * w).sum() - np.trace(h @ h).real) / max(1.0, norm * norm)
        worst = max(worst, res, tr1, tr2)
    return worst


def run_checks(seed: int = 20240101) -> Iterator[tuple[str, bool, float, float]]:
    """Yield ``(name, passed, value, tolerance)`` for every registered check."""
    for name, fn in CHECKS:
        rng = np.random.default_rng(seed)
        try:
            value, tol = fn(rng)
        except Exception:  # report, do not abort the remaining checks
            yield name, False, math.nan, math.nan
            continue
        yield name, bool(value <= tol), value, tol
