"""Breit-Rabi matrix from explicit matrix elements over the product basis.

This is an independent route to the matrix produced by
``hamiltonian_builder.build_breit_rabi``: it enumerates the product states
``|m_I, m_S>`` and fills in ``<m_I', m_S'| H |m_I, m_S>`` using

    I.S = I_z S_z + (I+ S- + I- S+) / 2

with the ladder elements ``<j, m+-1| J+- |j, m> = sqrt(j(j+1) - m(m+-1))``.
No Kronecker product and no spin-matrix generator is involved; the only thing
shared with the rest of the package is the matrix container. All ``m`` values
are carried as the integers ``2m`` so the enumeration is exact.
"""

from __future__ import annotations

import math

import numpy as np

from spinkron.matrix_core import ComplexMatrix


def product_basis(two_j_I: int, two_j_S: int = 1) -> list[tuple[int, int]]:
    """``(2 m_I, 2 m_S)`` pairs, descending ``m_I`` outer, descending ``m_S`` inner.

    This is the order the nucleus-first Kronecker product induces.
    """
    return [
        (two_m_i, two_m_s)
        for two_m_i in range(two_j_I, -two_j_I - 1, -2)
        for two_m_s in range(two_j_S, -two_j_S - 1, -2)
    ]


def ladder_element(two_j: int, two_m: int, step: int) -> float:
    """``<j, m+step| J_step |j, m>`` for ``step`` = +1 (raise) or -1 (lower).

    Zero when ``m + step`` leaves the multiplet.
    """
    two_m_new = two_m + 2 * step
    if abs(two_m_new) > two_j:
        return 0.0
    # j(j+1) - m(m+step) with everything doubled: (2j(2j+2) - 2m(2m+2step)) / 4
    return math.sqrt((two_j * (two_j + 2) - two_m * (two_m + 2 * step)) / 4.0)


def build_breit_rabi_basis(p) -> ComplexMatrix:
    """Breit-Rabi matrix by explicit matrix elements (cross-validation oracle).

    Args:
        p: a ``BreitRabiParams`` (only its attributes are read).
    """
    two_j_i = int(p.two_j_I)
    two_j_s = int(getattr(p, "two_j_S", 1))
    basis = product_basis(two_j_i, two_j_s)
    index = {state: k for k, state in enumerate(basis)}
    h = np.zeros((len(basis), len(basis)), dtype=np.complex128)

    for col, (mi, ms) in enumerate(basis):
        # diagonal: A m_I m_S + B (a m_S + b m_I)
        h[col, col] += p.A * (mi * ms) / 4.0 + p.B * (p.a * ms + p.b * mi) / 2.0

        # flip-flop: (A/2)(I+ S- + I- S+)
        for step in (1, -1):
            target = (mi + 2 * step, ms - 2 * step)
            row = index.get(target)
            if row is None:
                continue
            amp = ladder_element(two_j_i, mi, step) * ladder_element(two_j_s, ms, -step)
            h[row, col] += p.A * amp / 2.0

    return ComplexMatrix._wrap(h)
