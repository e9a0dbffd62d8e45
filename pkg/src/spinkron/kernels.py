"""Dense numeric kernels: Kronecker product, Hermitian Jacobi, trace recursion.

Every kernel exists twice, as a numba ``@njit`` loop nest (``*_numba``) and as a
vectorized numpy routine (``*_numpy``). The module-level names without suffix
point at whichever path ``spinkron._accel`` selected. Both variants perform the
same arithmetic in the same order where it matters for results (rotation
sequence, pivot order), so they agree to rounding.

All kernels take and return plain ``complex128`` arrays; validation lives in
the callers.
"""

import math

import numpy as np

from spinkron._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Kronecker product


@njit(cache=True, nogil=True)
def kron_numba(a, b):
    n = a.shape[0]
    m = b.shape[0]
    out = np.empty((n * m, n * m), dtype=np.complex128)
    for i in range(n):
        for k in range(n):
            aik = a[i, k]
            for j in range(m):
                row = i * m + j
                for l in range(m):
                    out[row, k * m + l] = aik * b[j, l]
    return out


def kron_numpy(a, b):
    n = a.shape[0]
    m = b.shape[0]
    # out[i*m + j, k*m + l] = a[i, k] * b[j, l]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(n * m, n * m)


# ---------------------------------------------------------------------------
# Cyclic Jacobi for complex Hermitian matrices
#
# Each rotation zeroes a[p, q] with U = D @ G, where D = diag(1, exp(-i phi))
# on (p, q) makes the pivot real and G is the real symmetric Jacobi rotation.
# A <- U^H A U and V <- V U.


def _rotation_py(app, aqq, r):
    zeta = (aqq - app) / (2.0 * r)
    if abs(zeta) > 1e150:
        t = 0.5 / zeta
    else:
        t = 1.0 / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
        if zeta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    return t, c, t * c


_rotation = njit(cache=True, nogil=True)(_rotation_py)


@njit(cache=True, nogil=True)
def jacobi_numba(h, tol, max_sweeps):
    n = h.shape[0]
    a = h.copy()
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    threshold = tol * math.sqrt(fro)

    sweeps = 0
    converged = False
    while True:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real ** 2 + a[p, q].imag ** 2)
        if math.sqrt(off) <= threshold:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                phase_c = phase.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation(app, aqq, r)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phase_c * akq
                    a[k, q] = s * akp + c * phase_c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * phase * aqk
                    a[q, k] = s * apk + c * phase * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * phase_c * vkq
                    v[k, q] = s * vkp + c * phase_c * vkq

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w, kind="mergesort")
    return w[order], v[:, order], sweeps, converged


def jacobi_numpy(h, tol, max_sweeps):
    n = h.shape[0]
    a = np.array(h, dtype=np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * np.linalg.norm(a)
    upper = np.triu_indices(n, 1)

    sweeps = 0
    converged = False
    while True:
        off = math.sqrt(2.0 * float(np.sum(np.abs(a[upper]) ** 2)))
        if off <= threshold:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                phase_c = phase.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation_py(app, aqq, r)
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * phase_c * col_q
                a[:, q] = s * col_p + c * phase_c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * phase_c * vq
                v[:, q] = s * vp + c * phase_c * vq

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="mergesort")
    return w[order], v[:, order], sweeps, converged


# ---------------------------------------------------------------------------
# Faddeev-LeVerrier: coefficients of det(x I - A), highest degree first.


@njit(cache=True, nogil=True)
def faddeev_leverrier_numba(a):
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    m = np.zeros((n, n), dtype=np.complex128)
    am = np.zeros((n, n), dtype=np.complex128)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I, with A M_{k-1} held in am
        for i in range(n):
            for j in range(n):
                m[i, j] = am[i, j]
            m[i, i] += coeffs[k - 1]
        tr = 0.0j
        for i in range(n):
            for j in range(n):
                acc = 0.0j
                for l in range(n):
                    acc += a[i, l] * m[l, j]
                am[i, j] = acc
            tr += am[i, i]
        coeffs[k] = -tr / k
    return coeffs


def faddeev_leverrier_numpy(a):
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    am = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        m = am + coeffs[k - 1] * eye
        am = a @ m
        coeffs[k] = -np.trace(am) / k
    return coeffs


if USE_NUMBA:
    kron = kron_numba
    jacobi = jacobi_numba
    faddeev_leverrier = faddeev_leverrier_numba
else:
    kron = kron_numpy
    jacobi = jacobi_numpy
    faddeev_leverrier = faddeev_leverrier_numpy
