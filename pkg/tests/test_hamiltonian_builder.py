import numpy as np
import pytest

from spinkron.hamiltonian_builder import (
    BreitRabiParams,
    CouplingCoefficients,
    TensorParams,
    build_breit_rabi,
    build_general,
    build_tensor,
    tensor_to_coefficients,
)
from spinkron.matrix_core import ComplexMatrix, commutator, identity, kron
from spinkron.spectral import eigen_hermitian
from spinkron.spin_operators import spin_matrices

from closed_forms import anisotropic_half, breit_rabi_half, breit_rabi_three_halves


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b)))


class TestBreitRabi:
    def test_half_entries(self):
        A, B, a, b = 1.7, -0.6, 2.3, 0.4
        H = build_breit_rabi(BreitRabiParams(1, A, B, a, b))
        assert H[0, 0] == pytest.approx((A + 2 * B * (a + b)) / 4, abs=1e-15)
        assert H[1, 2] == H[2, 1] == pytest.approx(A / 2, abs=1e-15)
        assert H[1, 1] == pytest.approx((2 * B * (b - a) - A) / 4, abs=1e-15)
        assert H[3, 3] == pytest.approx((A - 2 * B * (a + b)) / 4, abs=1e-15)

    def test_three_halves_entries(self):
        A, B, a, b = 1.7, -0.6, 2.3, 0.4
        H = build_breit_rabi(BreitRabiParams(3, A, B, a, b))
        assert H.dim == 8
        assert H[0, 0] == pytest.approx((3 * A + 2 * B * (a + 3 * b)) / 4, abs=1e-15)
        assert H[1, 2] == pytest.approx(np.sqrt(3) * A / 2, abs=1e-15)
        assert H[3, 4] == pytest.approx(A, abs=1e-15)
        assert H[7, 7] == pytest.approx((3 * A - 2 * B * (a + 3 * b)) / 4, abs=1e-15)

    @pytest.mark.parametrize("two_j_i,ref", [(1, breit_rabi_half), (3, breit_rabi_three_halves)])
    def test_full_closed_forms(self, rng, two_j_i, ref):
        for _ in range(20):
            A, B, a, b = rng.uniform(-5, 5, 4)
            H = build_breit_rabi(BreitRabiParams(two_j_i, A, B, a, b))
            assert rel(H, ref(A, B, a, b)) <= 1e-13

    @pytest.mark.parametrize("two_j_i", [1, 2, 3, 5])
    def test_zero_couplings_give_zero(self, two_j_i):
        H = build_breit_rabi(BreitRabiParams(two_j_i, 0.0, 3.0, 0.0, 0.0))
        assert H == ComplexMatrix(np.zeros((H.dim, H.dim)))
        assert H.dim == 2 * (two_j_i + 1)

    def test_zero_field_triplet_singlet(self):
        A = 1.3
        w = eigen_hermitian(build_breit_rabi(BreitRabiParams(1, A, 0.0, 2.0, 0.1))).eigenvalues
        assert np.allclose(w, [-3 * A / 4, A / 4, A / 4, A / 4], atol=1e-14)

    @pytest.mark.parametrize("two_j_i", range(0, 8))
    def test_hermitian_traceless(self, rng, two_j_i):
        for _ in range(10):
            p = BreitRabiParams(two_j_i, *rng.uniform(-5, 5, 4))
            H = build_breit_rabi(p)
            scale = max(1.0, H.maxnorm())
            assert np.array_equal(H.data, H.data.conj().T)
            assert abs(H.trace()) <= 1e-13 * scale

    @pytest.mark.parametrize("two_j_i", range(1, 8))
    def test_total_fz_conserved(self, rng, two_j_i):
        _, _, iz = spin_matrices(two_j_i)
        _, _, sz = spin_matrices(1)
        fz = kron(iz, identity(2)) + kron(identity(two_j_i + 1), sz)
        H = build_breit_rabi(BreitRabiParams(two_j_i, *rng.uniform(-5, 5, 4)))
        assert np.max(np.abs(commutator(H, fz).data)) <= 1e-13

    def test_electron_spin_one(self):
        p = BreitRabiParams(1, 1.0, 0.5, 2.0, 0.0, two_j_S=2)
        H = build_breit_rabi(p)
        assert H.dim == 6 and p.dim == 6
        # stretched state |m_I=1/2, m_S=1>: A*1/2*1 + B*a*1
        assert H[0, 0] == pytest.approx(0.5 + 1.0)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            BreitRabiParams(1, float("nan"), 0, 0, 0)
        with pytest.raises(ValueError):
            BreitRabiParams(-1, 1, 0, 0, 0)


def _coeffs(a=(0, 0, 0), b=(0, 0, 0), c=None):
    return CouplingCoefficients(a=a, b=b, c=np.zeros((3, 3)) if c is None else c)


class TestGeneral:
    def test_anisotropic_closed_form(self, rng):
        for _ in range(20):
            a1, a2, a3, b1, b2, b3, c11, c12, c13, c23 = rng.uniform(-5, 5, 10)
            c = np.zeros((3, 3))
            c[0, 0], c[0, 1], c[0, 2], c[1, 2] = c11, c12, c13, c23
            H = build_general(1, 1, _coeffs((a1, a2, a3), (b1, b2, b3), c))
            ref = anisotropic_half(a1, a2, a3, b1, b2, b3, c11, c12, c13, c23)
            assert rel(H, ref) <= 1e-13

    def test_named_entries(self):
        a, b = (0.3, -0.2, 1.1), (0.7, 0.9, -0.4)
        c = np.zeros((3, 3))
        c[0, 0], c[0, 1] = 1.5, -2.5
        H = build_general(1, 1, _coeffs(a, b, c))
        assert H[0, 0] == pytest.approx((a[2] + b[2]) / 2)
        assert H[0, 1] == pytest.approx((b[0] - 1j * b[1]) / 2)
        assert H[0, 3] == pytest.approx((c[0, 0] - 1j * c[0, 1]) / 4)

    @pytest.mark.parametrize("two_j_i", [1, 3, 5])
    def test_reduces_to_breit_rabi_exactly(self, rng, two_j_i):
        for _ in range(10):
            A, B, a, b = rng.uniform(-5, 5, 4)
            coeffs = _coeffs(a=(0, 0, B * b), b=(0, 0, B * a), c=A * np.eye(3))
            assert build_general(two_j_i, 1, coeffs) == build_breit_rabi(BreitRabiParams(two_j_i, A, B, a, b))

    def test_zero_coefficients(self):
        H = build_general(3, 2, CouplingCoefficients())
        assert H == ComplexMatrix(np.zeros((12, 12)))

    @pytest.mark.parametrize("two_j_i,two_j_s", [(1, 1), (3, 1), (2, 2), (1, 3)])
    def test_hermitian_for_full_tensor(self, rng, two_j_i, two_j_s):
        for _ in range(20):
            cc = CouplingCoefficients(rng.uniform(-5, 5, 3), rng.uniform(-5, 5, 3), rng.uniform(-5, 5, (3, 3)))
            H = build_general(two_j_i, two_j_s, cc)
            assert np.max(np.abs(H.data - H.data.conj().T)) <= 1e-14 * max(1.0, H.maxnorm())

    def test_linear_in_coefficients(self, rng):
        for _ in range(10):
            c1 = CouplingCoefficients(rng.normal(size=3), rng.normal(size=3), rng.normal(size=(3, 3)))
            c2 = CouplingCoefficients(rng.normal(size=3), rng.normal(size=3), rng.normal(size=(3, 3)))
            lhs = build_general(3, 1, c1 + c2)
            rhs = build_general(3, 1, c1) + build_general(3, 1, c2)
            assert rel(lhs, rhs) <= 1e-14

    def test_bilinear_terms_match_term_by_term(self, rng):
        c = rng.normal(size=(3, 3))
        nuc, ele = spin_matrices(3), spin_matrices(1)
        ref = np.zeros((8, 8), dtype=complex)
        for k in range(3):
            for l in range(3):
                ref += c[k, l] * np.kron(nuc[k].data, ele[l].data)
        assert rel(build_general(3, 1, _coeffs(c=c)), ref) <= 1e-14


class TestTensor:
    def test_isotropic_reduction(self):
        A, B, a, b = 1.2, 0.8, 2.0, -0.3
        t = TensorParams(beta_e=a, beta_n=-b, g=np.eye(3), g_n=np.eye(3), A_tensor=A * np.eye(3), B_vec=(0, 0, B))
        cc = tensor_to_coefficients(t)
        assert np.allclose(cc.b, [0, 0, a * B]) and np.allclose(cc.a, [0, 0, b * B])
        assert np.array_equal(cc.c, A * np.eye(3))
        assert rel(build_tensor(1, 1, t), build_breit_rabi(BreitRabiParams(1, A, B, a, b))) <= 1e-15

    def test_hyperfine_transposed(self):
        A_t = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=float)
        t = TensorParams(1.0, 1.0, np.eye(3), np.eye(3), A_t, np.zeros(3))
        cc = tensor_to_coefficients(t)
        expected = np.zeros((3, 3))
        expected[1, 0] = 1.0  # S_x A_xy I_y multiplies I_y S_x
        assert np.array_equal(cc.c, expected)

    def test_zero_field(self, rng):
        t = TensorParams(2.0, 0.5, rng.normal(size=(3, 3)), rng.normal(size=(3, 3)), rng.normal(size=(3, 3)), np.zeros(3))
        cc = tensor_to_coefficients(t)
        assert not np.any(cc.a) and not np.any(cc.b)

    @pytest.mark.parametrize("two_j_i", [1, 2, 3])
    def test_matches_term_by_term_tensor_form(self, rng, two_j_i):
        for _ in range(10):
            be, bn = rng.uniform(0.1, 3, 2)
            g, gn, A_t = rng.normal(size=(3, 3, 3))
            Bv = rng.normal(size=3)
            nuc, ele = spin_matrices(two_j_i), spin_matrices(1)
            one_i, one_s = np.eye(two_j_i + 1), np.eye(2)
            ref = np.zeros((2 * (two_j_i + 1),) * 2, dtype=complex)
            for i in range(3):
                for k in range(3):
                    ref += be * g[i, k] * Bv[k] * np.kron(one_i, ele[i].data)
                    ref -= bn * gn[i, k] * Bv[k] * np.kron(nuc[i].data, one_s)
                    ref += A_t[i, k] * np.kron(nuc[k].data, ele[i].data)
            H = build_tensor(two_j_i, 1, TensorParams(be, bn, g, gn, A_t, Bv))
            assert rel(H, ref) <= 1e-13

    def test_shape_validation(self):
        with pytest.raises(ValueError, match="shape"):
            TensorParams(1, 1, np.eye(2), np.eye(3), np.eye(3), np.zeros(3))
