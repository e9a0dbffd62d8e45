"""Spin matrices ``J_x, J_y, J_z`` for arbitrary spin quantum number.

Basis order is **descending** in ``m``: row 0 is ``m = +j`` and the last row is
``m = -j``. Many references use the ascending order instead; the descending
order is what makes ``kron`` reproduce the textbook Breit-Rabi matrices
literally. Units are hbar = 1.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from spinkron.matrix_core import ComplexMatrix


@dataclass(frozen=True, order=True)
class SpinQuantum:
    """Spin quantum number stored as the integer ``two_j = 2j``."""

    two_j: int

    def __post_init__(self):
        if isinstance(self.two_j, bool) or not isinstance(self.two_j, numbers.Integral):
            raise TypeError(f"two_j must be an integer, got {self.two_j!r}")
        if self.two_j < 0:
            raise ValueError(f"two_j must be non-negative, got {self.two_j}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @classmethod
    def from_j(cls, j) -> SpinQuantum:
        """Build from ``j`` given as int, float, str or Fraction (``"3/2"`` works)."""
        twice = Fraction(j) * 2
        if twice.denominator != 1:
            raise ValueError(f"j must be an integer or half-integer, got {j!r}")
        return cls(int(twice))

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def two_m_values(self) -> list[int]:
        """``2m`` for each basis state, in basis (descending) order."""
        return list(range(self.two_j, -self.two_j - 1, -2))

    def __str__(self) -> str:
        return str(self.j)


@dataclass(frozen=True)
class SpinMatrices:
    jx: ComplexMatrix
    jy: ComplexMatrix
    jz: ComplexMatrix

    def __iter__(self):
        return iter((self.jx, self.jy, self.jz))

    def __getitem__(self, k: int) -> ComplexMatrix:
        return (self.jx, self.jy, self.jz)[k]


def _spin(s) -> SpinQuantum:
    return s if isinstance(s, SpinQuantum) else SpinQuantum(s)


def _raising_array(two_j: int) -> np.ndarray:
    n = two_j + 1
    jp = np.zeros((n, n), dtype=np.complex128)
    # column k holds m = j - k; J+ maps it to row k - 1 (m + 1)
    for k in range(1, n):
        two_m = two_j - 2 * k
        jp[k - 1, k] = math.sqrt((two_j * (two_j + 2) - two_m * (two_m + 2)) / 4.0)
    return jp


def raising(s: SpinQuantum | int) -> ComplexMatrix:
    """``J+`` with elements ``sqrt(j(j+1) - m(m+1))`` on the first superdiagonal."""
    return ComplexMatrix._wrap(_raising_array(_spin(s).two_j))


def lowering(s: SpinQuantum | int) -> ComplexMatrix:
    return ComplexMatrix._wrap(_raising_array(_spin(s).two_j).T.copy())


@lru_cache(maxsize=64)
def _spin_matrices(two_j: int) -> SpinMatrices:
    jp = _raising_array(two_j)
    jm = jp.T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    jz = np.diag(np.arange(two_j, -two_j - 1, -2) / 2.0).astype(np.complex128)
    return SpinMatrices(ComplexMatrix._wrap(jx), ComplexMatrix._wrap(jy), ComplexMatrix._wrap(jz))


def spin_matrices(s: SpinQuantum | int) -> SpinMatrices:
    """Return ``(J_x, J_y, J_z)`` for spin ``s`` (a SpinQuantum or its ``two_j``).

    ``J_x = (J+ + J-)/2`` and ``J_y = (J+ - J-)/(2i)``, so ``two_j=1`` gives half
    the Pauli matrices exactly.
    """
    return _spin_matrices(_spin(s).two_j)
