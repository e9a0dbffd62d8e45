import numpy as np
import pytest
from fractions import Fraction

from spinkron.matrix_core import commutator, identity
from spinkron.spin_operators import SpinQuantum, lowering, raising, spin_matrices

from closed_forms import pauli_half, spin_three_halves


def test_spin_half_is_half_pauli():
    for got, ref in zip(spin_matrices(1), pauli_half()):
        assert np.max(np.abs(got.data - ref)) <= 1e-15


def test_spin_three_halves():
    sm = spin_matrices(3)
    for got, ref in zip(sm, spin_three_halves()):
        assert np.max(np.abs(got.data - ref)) <= 1e-15
    assert sm.jx[0, 1] == pytest.approx(np.sqrt(3) / 2, abs=1e-15)
    assert sm.jx[1, 2] == pytest.approx(1.0, abs=1e-15)
    assert np.array_equal(sm.jz.data, np.diag([1.5, 0.5, -0.5, -1.5]))


def test_spin_zero():
    for m in spin_matrices(0):
        assert m.shape == (1, 1) and m[0, 0] == 0


def test_spin_one():
    jx, jy, jz = spin_matrices(2)
    assert np.array_equal(jz.data, np.diag([1.0, 0.0, -1.0]))
    # J+ elements sqrt(1*2 - m(m+1)) = sqrt(2) for m = 0, -1; jx = J+/2 + J-/2
    r = 1 / np.sqrt(2)
    expected = np.array([[0, r, 0], [r, 0, r], [0, r, 0]])
    assert np.max(np.abs(jx.data - expected)) <= 1e-15


def test_accepts_spin_quantum():
    assert spin_matrices(SpinQuantum(3)) is spin_matrices(3)


@pytest.mark.parametrize("two_j", range(11))
def test_commutators(two_j):
    jx, jy, jz = spin_matrices(two_j)
    for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
        assert np.max(np.abs((commutator(a, b) - 1j * c).data)) <= 1e-13


@pytest.mark.parametrize("two_j", range(11))
def test_casimir(two_j):
    jx, jy, jz = spin_matrices(two_j)
    j = two_j / 2
    total = jx @ jx + jy @ jy + jz @ jz
    assert np.max(np.abs((total - j * (j + 1) * identity(two_j + 1)).data)) <= 1e-13


@pytest.mark.parametrize("two_j", range(11))
def test_hermitian_traceless_and_reality(two_j):
    jx, jy, jz = spin_matrices(two_j)
    assert np.array_equal(jz.data, jz.data.conj().T)
    for m in (jx, jy):
        assert np.max(np.abs(m.data - m.data.conj().T)) <= 1e-15
    for m in (jx, jy, jz):
        assert abs(m.trace()) <= 1e-15
    assert not np.any(jx.data.imag) and not np.any(jz.data.imag)
    assert not np.any(jy.data.real)
    assert not np.any(np.diag(jy.data))


@pytest.mark.parametrize("two_j", range(1, 8))
def test_ladder_relations(two_j):
    jx, jy, _ = spin_matrices(two_j)
    assert np.allclose((jx + 1j * jy).data, raising(two_j).data, atol=1e-15)
    assert np.allclose((jx - 1j * jy).data, lowering(two_j).data, atol=1e-15)
    assert np.all(raising(two_j).data.real >= 0)


class TestSpinQuantum:
    def test_fields(self):
        s = SpinQuantum(3)
        assert s.j == Fraction(3, 2) and s.dim == 4
        assert s.two_m_values() == [3, 1, -1, -3]

    @pytest.mark.parametrize("j,two_j", [(0, 0), (0.5, 1), ("3/2", 3), (Fraction(7, 2), 7), (2, 4)])
    def test_from_j(self, j, two_j):
        assert SpinQuantum.from_j(j) == SpinQuantum(two_j)

    def test_rejects(self):
        with pytest.raises(ValueError):
            SpinQuantum(-1)
        with pytest.raises(TypeError):
            SpinQuantum(1.5)
        with pytest.raises(ValueError):
            SpinQuantum.from_j(0.25)
