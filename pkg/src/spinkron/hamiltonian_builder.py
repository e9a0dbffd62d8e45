"""Hamiltonians for one nucleus coupled to one electron, built only from ``kron``.

Factor order is nucleus first: operators act on ``C^(2I+1) (x) C^(2S+1)``, so a
nuclear operator enters as ``I_u (x) 1_S`` and an electronic one as
``1_I (x) S_u``. Some references order the electron first; their matrices are
permutation-similar to these.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from spinkron.matrix_core import ComplexMatrix, identity, kron, linear_combination
from spinkron.spin_operators import SpinQuantum, spin_matrices


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _finite_array(name: str, value: ArrayLike, shape: tuple[int, ...]) -> NDArray[np.float64]:
    arr = np.array(value, dtype=np.float64, copy=True)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


def _as_spin(s) -> SpinQuantum:
    return s if isinstance(s, SpinQuantum) else SpinQuantum(s)


@dataclass(frozen=True)
class BreitRabiParams:
    """Isotropic model ``A I.S + B (a S_z + b I_z)``.

    Attributes:
        two_j_I: twice the nuclear spin.
        A: hyperfine coupling.
        B: field intensity.
        a: electronic Zeeman coefficient.
        b: nuclear Zeeman coefficient, taken with its sign as given.
        two_j_S: twice the electron spin; 1 for the usual one-electron atom.
    """

    two_j_I: int
    A: float
    B: float
    a: float
    b: float
    two_j_S: int = 1

    def __post_init__(self):
        object.__setattr__(self, "two_j_I", _as_spin(self.two_j_I).two_j)
        object.__setattr__(self, "two_j_S", _as_spin(self.two_j_S).two_j)
        for name in ("A", "B", "a", "b"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))

    @property
    def dim(self) -> int:
        return (self.two_j_I + 1) * (self.two_j_S + 1)

    def with_field(self, B: float) -> BreitRabiParams:
        return BreitRabiParams(self.two_j_I, self.A, B, self.a, self.b, self.two_j_S)


@dataclass(frozen=True)
class CouplingCoefficients:
    """Linear and bilinear coefficients of a general two-spin Hamiltonian.

    ``H = sum_u a[u] I_u + sum_u b[u] S_u + sum_{k,l} c[k, l] I_k S_l`` with
    ``u, k, l`` running over ``x, y, z`` as 0, 1, 2.
    """

    a: NDArray[np.float64] = field(default_factory=lambda: np.zeros(3))
    b: NDArray[np.float64] = field(default_factory=lambda: np.zeros(3))
    c: NDArray[np.float64] = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        object.__setattr__(self, "a", _finite_array("a", self.a, (3,)))
        object.__setattr__(self, "b", _finite_array("b", self.b, (3,)))
        object.__setattr__(self, "c", _finite_array("c", self.c, (3, 3)))

    def __add__(self, other: CouplingCoefficients) -> CouplingCoefficients:
        if not isinstance(other, CouplingCoefficients):
            return NotImplemented
        return CouplingCoefficients(self.a + other.a, self.b + other.b, self.c + other.c)

    def __eq__(self, other):
        if not isinstance(other, CouplingCoefficients):
            return NotImplemented
        return (
            np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None


@dataclass(frozen=True)
class TensorParams:
    """Anisotropic model ``beta_e S.g.B + S.A.I - beta_n I.g_n.B``."""

    beta_e: float
    beta_n: float
    g: NDArray[np.float64]
    g_n: NDArray[np.float64]
    A_tensor: NDArray[np.float64]
    B_vec: NDArray[np.float64]

    def __post_init__(self):
        object.__setattr__(self, "beta_e", _finite("beta_e", self.beta_e))
        object.__setattr__(self, "beta_n", _finite("beta_n", self.beta_n))
        for name in ("g", "g_n", "A_tensor"):
            object.__setattr__(self, name, _finite_array(name, getattr(self, name), (3, 3)))
        object.__setattr__(self, "B_vec", _finite_array("B_vec", self.B_vec, (3,)))

    def with_field(self, B_vec: ArrayLike) -> TensorParams:
        return TensorParams(self.beta_e, self.beta_n, self.g, self.g_n, self.A_tensor, B_vec)

    def __eq__(self, other):
        if not isinstance(other, TensorParams):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("beta_e", "beta_n", "g", "g_n", "A_tensor", "B_vec")
        )

    __hash__ = None


def build_breit_rabi(p: BreitRabiParams) -> ComplexMatrix:
    """Breit-Rabi matrix on the nucleus-first product space.

    ``H = A (Ix(x)Sx + Iy(x)Sy + Iz(x)Sz) + B [a 1_I(x)Sz + b Iz(x)1_S]``.
    """
    nuc = spin_matrices(p.two_j_I)
    ele = spin_matrices(p.two_j_S)
    one_i = identity(p.two_j_I + 1)
    one_s = identity(p.two_j_S + 1)
    return linear_combination(
        [
            (p.A, kron(nuc.jx, ele.jx)),
            (p.A, kron(nuc.jy, ele.jy)),
            (p.A, kron(nuc.jz, ele.jz)),
            (p.B * p.a, kron(one_i, ele.jz)),
            (p.B * p.b, kron(nuc.jz, one_s)),
        ]
    )


def build_general(
    two_j_I: SpinQuantum | int, two_j_S: SpinQuantum | int, coeffs: CouplingCoefficients
) -> ComplexMatrix:
    """General bilinear two-spin Hamiltonian from linear and coupling coefficients.

    Zero coefficients are skipped, so an all-zero input returns the zero matrix
    of dimension ``(2I+1)(2S+1)``.
    """
    spin_i = _as_spin(two_j_I)
    spin_s = _as_spin(two_j_S)
    nuc = spin_matrices(spin_i)
    ele = spin_matrices(spin_s)
    one_i = identity(spin_i.dim)
    one_s = identity(spin_s.dim)

    # Same summation order as build_breit_rabi, so the isotropic reduction is bitwise equal.
    terms = [(0.0, identity(spin_i.dim * spin_s.dim))]
    for k in range(3):
        for l in range(3):
            if coeffs.c[k, l] != 0.0:
                terms.append((coeffs.c[k, l], kron(nuc[k], ele[l])))
    for u in range(3):
        if coeffs.b[u] != 0.0:
            terms.append((coeffs.b[u], kron(one_i, ele[u])))
    for u in range(3):
        if coeffs.a[u] != 0.0:
            terms.append((coeffs.a[u], kron(nuc[u], one_s)))
    return linear_combination(terms)


def tensor_to_coefficients(t: TensorParams) -> CouplingCoefficients:
    """Rewrite the tensor form as linear and bilinear coefficients.

    ``S^T A I = sum_{l,k} A[l, k] S_l I_k``, and ``c[k, l]`` multiplies
    ``I_k S_l``, so ``c`` is the transpose of the hyperfine tensor. The minus
    sign of the nuclear Zeeman term is applied here, not in ``build_general``.
    """
    b = t.beta_e * (t.g @ t.B_vec)
    a = -t.beta_n * (t.g_n @ t.B_vec)
    return CouplingCoefficients(a=a, b=b, c=t.A_tensor.T)


def build_tensor(two_j_I: SpinQuantum | int, two_j_S: SpinQuantum | int, t: TensorParams) -> ComplexMatrix:
    return build_general(two_j_I, two_j_S, tensor_to_coefficients(t))
