"""Immutable dense complex matrices and the Kronecker product.

Index layout follows the block convention of the Kronecker product: in
``kron(A, B)`` the left factor indexes the blocks, so entry
``(n*M + m, i*M + j)`` is ``A[n, i] * B[m, j]`` (0-based, ``M = B.dim``).
"""

from __future__ import annotations

import numbers

import numpy as np
from numpy.typing import ArrayLike, NDArray

from spinkron import kernels


class ComplexMatrix:
    """Square ``complex128`` matrix, read-only after construction.

    Construction copies the input and rejects anything that is not a finite,
    non-empty square 2-D array. Instances support ``@``, ``+``, ``-``, unary
    minus and scalar ``*``; ``np.asarray(m)`` gives a read-only view.
    """

    __slots__ = ("_data",)
    __array_priority__ = 1000

    def __init__(self, data: ArrayLike):
        arr = np.array(data, dtype=np.complex128, copy=True)
        self._data = _checked(arr)

    @classmethod
    def _wrap(cls, arr: NDArray[np.complex128]) -> ComplexMatrix:
        # Takes ownership of a freshly computed array; no copy.
        obj = cls.__new__(cls)
        obj._data = _checked(np.ascontiguousarray(arr, dtype=np.complex128))
        return obj

    @property
    def data(self) -> NDArray[np.complex128]:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None or np.dtype(dtype) == self._data.dtype:
            return self._data.copy() if copy else self._data
        return self._data.astype(dtype)

    def __getitem__(self, key):
        return self._data[key]

    def __len__(self) -> int:
        return self.dim

    def __matmul__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return matmul(self, other)

    def __add__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if not isinstance(other, numbers.Number):
            return NotImplemented
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, numbers.Number):
            return NotImplemented
        return scale(self, 1.0 / other)

    def __eq__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        body = np.array2string(self._data, precision=6, suppress_small=True)
        return f"ComplexMatrix(dim={self.dim},\n{body})"

    @property
    def H(self) -> ComplexMatrix:
        """Conjugate transpose."""
        return ComplexMatrix._wrap(self._data.conj().T.copy())

    @property
    def T(self) -> ComplexMatrix:
        return ComplexMatrix._wrap(self._data.T.copy())

    def trace(self) -> complex:
        return complex(np.trace(self._data))

    def maxnorm(self) -> float:
        """Largest entry magnitude."""
        return float(np.max(np.abs(self._data)))

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self._data))

    def allclose(self, other: ComplexMatrix | ArrayLike, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        """Entrywise comparison scaled by the larger of the two max-norms."""
        b = np.asarray(other, dtype=np.complex128)
        if b.shape != self.shape:
            return False
        ref = max(1.0, float(np.max(np.abs(self._data))), float(np.max(np.abs(b))))
        return bool(np.max(np.abs(self._data - b)) <= rtol * ref + atol)


def _checked(arr: NDArray[np.complex128]) -> NDArray[np.complex128]:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square and 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite (NaN/Inf rejected)")
    arr.setflags(write=False)
    return arr


def as_matrix(m: ComplexMatrix | ArrayLike) -> ComplexMatrix:
    return m if isinstance(m, ComplexMatrix) else ComplexMatrix(m)


def identity(n: int) -> ComplexMatrix:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ValueError(f"identity dimension must be a positive integer, got {n!r}")
    return ComplexMatrix._wrap(np.eye(int(n), dtype=np.complex128))


def zeros(n: int) -> ComplexMatrix:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    return ComplexMatrix._wrap(np.zeros((int(n), int(n)), dtype=np.complex128))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; each entry ``a[i, k]`` is replaced by the block ``a[i, k] * b``."""
    a = as_matrix(a)
    b = as_matrix(b)
    return ComplexMatrix._wrap(kernels.kron(a.data, b.data))


def kron_all(*factors: ComplexMatrix) -> ComplexMatrix:
    """Left-to-right Kronecker product of one or more factors."""
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def _same_dim(a: ComplexMatrix, b: ComplexMatrix, op: str) -> None:
    if a.dim != b.dim:
        raise ValueError(f"{op}: dimension mismatch ({a.dim} vs {b.dim})")


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b, "matmul")
    return ComplexMatrix._wrap(a.data @ b.data)


def add(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b, "add")
    return ComplexMatrix._wrap(a.data + b.data)


def scale(a: ComplexMatrix, c: complex) -> ComplexMatrix:
    a = as_matrix(a)
    return ComplexMatrix._wrap(a.data * complex(c))


def linear_combination(terms) -> ComplexMatrix:
    """Sum of ``coeff * matrix`` over an iterable of ``(coeff, matrix)`` pairs."""
    total = None
    for c, m in terms:
        m = as_matrix(m)
        part = m.data * complex(c)
        if total is None:
            total = part.copy()
        else:
            if part.shape != total.shape:
                raise ValueError(f"linear_combination: dimension mismatch ({part.shape[0]} vs {total.shape[0]})")
            total += part
    if total is None:
        raise ValueError("linear_combination needs at least one term")
    return ComplexMatrix._wrap(total)


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return matmul(a, b) - matmul(b, a)


def is_hermitian(a: ComplexMatrix | ArrayLike, tol: float = 1e-12) -> bool:
    """True iff ``max |a[i,j] - conj(a[j,i])| <= tol * max(1, maxnorm(a))``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    a = as_matrix(a)
    dev = float(np.max(np.abs(a.data - a.data.conj().T)))
    return dev <= tol * max(1.0, a.maxnorm())
