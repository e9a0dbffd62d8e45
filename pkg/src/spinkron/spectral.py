"""Eigenvalues, characteristic polynomials, block structure and permutations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from spinkron import kernels
from spinkron.matrix_core import ComplexMatrix, as_matrix, is_hermitian

MAX_SWEEPS = 50
OFF_NORM_TOL = 1e-13


class NotHermitianError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    """The Jacobi iteration did not reach the off-norm target within its sweep budget."""

    def __init__(self, message: str, sweeps: int):
        super().__init__(message)
        self.sweeps = sweeps


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: NDArray[np.float64]
    eigenvectors: ComplexMatrix | None = None
    sweeps: int = 0

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigen_hermitian(
    H: ComplexMatrix | ArrayLike, tol: float = 1e-12, want_vectors: bool = False
) -> Spectrum:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        H: Hermitian matrix.
        tol: Hermiticity tolerance, relative to ``max(1, maxnorm(H))``.
        want_vectors: also return the eigenvectors as columns.

    Returns:
        Spectrum with ascending eigenvalues. Eigenvector columns are aligned
        with them; within a degenerate eigenspace the basis is arbitrary.

    Raises:
        NotHermitianError: if ``H`` fails the Hermiticity check.
        ConvergenceError: if the off-diagonal Frobenius norm is still above
            ``1e-13 * ||H||_F`` after 50 sweeps.
    """
    H = as_matrix(H)
    if not is_hermitian(H, tol):
        raise NotHermitianError(f"matrix is not Hermitian within tol={tol:g}")
    w, v, sweeps, converged = kernels.jacobi(H.data, OFF_NORM_TOL, MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (dim={H.dim})", sweeps
        )
    w.setflags(write=False)
    vectors = ComplexMatrix._wrap(v) if want_vectors else None
    return Spectrum(eigenvalues=w, eigenvectors=vectors, sweeps=int(sweeps))


def eigenvalues(H: ComplexMatrix | ArrayLike, tol: float = 1e-12) -> NDArray[np.float64]:
    return eigen_hermitian(H, tol).eigenvalues


@dataclass(frozen=True)
class CharPoly:
    """``det(H - E*I)`` stored as a monic polynomial in E times a sign.

    ``coeffs`` are highest degree first (``numpy.polyval`` order) with
    ``coeffs[0] == 1``, i.e. the coefficients of ``det(E*I - H)``;
    ``sign = (-1)**n`` converts to ``det(H - E*I)``. For even dimension the two
    agree.
    """

    coeffs: NDArray
    sign: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, E):
        """Evaluate ``det(H - E*I)`` at scalar or array ``E``."""
        return self.sign * np.polyval(self.coeffs, E)

    def monic(self, E):
        """Evaluate ``det(E*I - H)``."""
        return np.polyval(self.coeffs, E)

    def abs_scale(self, E) -> float:
        """``sum |c_k| |E|^k``: magnitude scale for relative error checks at E."""
        return float(np.polyval(np.abs(self.coeffs), abs(E)))

    def __mul__(self, other: CharPoly) -> CharPoly:
        if not isinstance(other, CharPoly):
            return NotImplemented
        return CharPoly(np.polymul(self.coeffs, other.coeffs), self.sign * other.sign)


def char_poly(H: ComplexMatrix | ArrayLike) -> CharPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier trace recursion.

    Coefficients are returned real when ``H`` is Hermitian, complex otherwise.
    """
    H = as_matrix(H)
    coeffs = kernels.faddeev_leverrier(H.data)
    if is_hermitian(H, 1e-12):
        coeffs = coeffs.real.copy()
    coeffs.setflags(write=False)
    return CharPoly(coeffs=coeffs, sign=-1 if H.dim % 2 else 1)


class Permutation:
    """A bijection ``p`` on ``{0, ..., n-1}``, stored as the tuple ``(p(0), ..., p(n-1))``.

    Its matrix has ``U[p(k), k] = 1``, so ``U @ H @ U.T`` is
    ``permutation_conjugate(H, p)``.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(int(x) for x in mapping)
        if not mapping:
            raise ValueError("permutation must act on at least one index")
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError(f"not a bijection on 0..{len(mapping) - 1}: {mapping}")
        self.mapping = mapping

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @classmethod
    def reversal(cls, n: int) -> Permutation:
        return cls(range(n - 1, -1, -1))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> Permutation:
        m = list(range(n))
        m[i], m[j] = m[j], m[i]
        return cls(m)

    @classmethod
    def from_matrix(cls, U: ComplexMatrix | ArrayLike) -> Permutation:
        """Recover ``p`` from a 0/1 permutation matrix with ``U[p(k), k] = 1``."""
        u = np.asarray(U)
        n = u.shape[0]
        ok = (
            u.shape == (n, n)
            and bool(np.all((u == 0) | (u == 1)))
            and bool(np.all(u.sum(axis=0) == 1))
            and bool(np.all(u.sum(axis=1) == 1))
        )
        if not ok:
            raise ValueError("not a permutation matrix")
        return cls(int(np.flatnonzero(u[:, k])[0]) for k in range(n))

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, k: int) -> int:
        return self.mapping[k]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self) -> str:
        return f"Permutation({list(self.mapping)})"

    def inverse(self) -> Permutation:
        inv = [0] * len(self.mapping)
        for k, pk in enumerate(self.mapping):
            inv[pk] = k
        return Permutation(inv)

    def compose(self, other: Permutation) -> Permutation:
        """``self o other``: apply ``other`` first."""
        if len(other) != len(self):
            raise ValueError("permutation size mismatch")
        return Permutation(self.mapping[k] for k in other.mapping)

    def is_involution(self) -> bool:
        return self.compose(self) == Permutation.identity(len(self))

    def matrix(self) -> ComplexMatrix:
        n = len(self.mapping)
        u = np.zeros((n, n), dtype=np.complex128)
        u[list(self.mapping), list(range(n))] = 1.0
        return ComplexMatrix._wrap(u)


def permutation_conjugate(H: ComplexMatrix | ArrayLike, p: Permutation) -> ComplexMatrix:
    """``result[i, j] = H[p^-1(i), p^-1(j)]``, the same as ``U H U^T``."""
    H = as_matrix(H)
    if len(p) != H.dim:
        raise ValueError(f"permutation size {len(p)} does not match matrix dimension {H.dim}")
    inv = np.array(p.inverse().mapping)
    return ComplexMatrix._wrap(H.data[np.ix_(inv, inv)])


def isospectral(H1: ComplexMatrix | ArrayLike, H2: ComplexMatrix | ArrayLike, tol: float = 1e-11) -> bool:
    """Sorted spectra agree entrywise within ``tol * max(1, largest |eigenvalue|)``."""
    H1, H2 = as_matrix(H1), as_matrix(H2)
    if H1.dim != H2.dim:
        raise ValueError(f"dimension mismatch ({H1.dim} vs {H2.dim})")
    w1 = eigen_hermitian(H1).eigenvalues
    w2 = eigen_hermitian(H2).eigenvalues
    scale = max(1.0, float(np.max(np.abs(w1))), float(np.max(np.abs(w2))))
    return bool(np.max(np.abs(w1 - w2)) <= tol * scale)


@dataclass(frozen=True)
class BlockStructure:
    """``permutation_conjugate(H, perm)`` is block-diagonal with ``block_sizes``."""

    perm: Permutation
    block_sizes: tuple[int, ...]

    @property
    def order(self) -> tuple[int, ...]:
        """Original indices in their new positions: ``order[i] = perm^-1(i)``."""
        return self.perm.inverse().mapping

    def index_groups(self) -> list[tuple[int, ...]]:
        out, start = [], 0
        order = self.order
        for size in self.block_sizes:
            out.append(tuple(order[start : start + size]))
            start += size
        return out

    def blocks(self, H: ComplexMatrix | ArrayLike) -> list[ComplexMatrix]:
        H = as_matrix(H)
        return [ComplexMatrix._wrap(H.data[np.ix_(g, g)]) for g in self.index_groups()]


def block_structure(H: ComplexMatrix | ArrayLike, tol: float = 1e-12) -> BlockStructure:
    """Find the finest symmetric-permutation block-diagonal form of ``H``.

    Indices ``i, j`` are linked when ``|H[i,j]|`` or ``|H[j,i]|`` exceeds
    ``tol * maxnorm(H)``; blocks are the connected components, ordered by their
    smallest index, each listed in ascending index order.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    H = as_matrix(H)
    n = H.dim
    mag = np.abs(H.data)
    threshold = tol * float(mag.max())
    linked = (mag > threshold) | (mag.T > threshold)

    seen = [False] * n
    groups = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.flatnonzero(linked[i]):
                j = int(j)
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        groups.append(sorted(comp))

    order = [i for g in groups for i in g]
    perm = Permutation(order).inverse()
    return BlockStructure(perm=perm, block_sizes=tuple(len(g) for g in groups))


def block_spectrum(H: ComplexMatrix | ArrayLike, tol: float = 1e-12) -> NDArray[np.float64]:
    """Spectrum assembled from independent per-block solves."""
    H = as_matrix(H)
    bs = block_structure(H, tol)
    parts = [eigen_hermitian(b).eigenvalues for b in bs.blocks(H)]
    return np.sort(np.concatenate(parts), kind="mergesort")

