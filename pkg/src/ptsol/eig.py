"""Dense eigenvalues of general complex matrices.

The in-repo route is the textbook pipeline: diagonal balancing, Householder
reduction to upper Hessenberg form, then single-shift complex QR sweeps
(Wilkinson shift, Givens rotations) with deflation on negligible
subdiagonals. Only the active window is updated, since the Schur form itself
is never needed. Eigenvectors are produced on request by inverse iteration on
the Hessenberg matrix and transformed back.

``backend="lapack"`` hands the same matrix to LAPACK's zgeev instead; it is
used for the large 2D collocation matrices where a compiled single-threaded
sweep is too slow.
"""

from dataclasses import dataclass

import numba
import numpy as np

from .errors import NoConvergence, NonFinite

_EPS = np.finfo(float).eps
_RADIX = 2.0


@dataclass
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray | None = None
    iterations: int = 0
    deflations: int = 0
    backend: str = "qr"

    def __len__(self):
        return len(self.values)


@numba.njit(cache=True)
def _balance(A):
    # Parlett-Reinsch scaling by powers of two; modifies A, returns D
    n = A.shape[0]
    d = np.ones(n)
    done = False
    while not done:
        done = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += abs(A[j, i].real) + abs(A[j, i].imag)
                    r += abs(A[i, j].real) + abs(A[i, j].imag)
            if c == 0.0 or r == 0.0:
                continue
            g = r / _RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= _RADIX
                c *= _RADIX * _RADIX
            g = r * _RADIX
            while c > g:
                f /= _RADIX
                c /= _RADIX * _RADIX
            if (c + r) / f < 0.95 * s:
                done = False
                d[i] *= f
                for j in range(n):
                    A[i, j] /= f
                for j in range(n):
                    A[j, i] *= f
    return d


@numba.njit(cache=True)
def _hessenberg(A):
    # Householder reduction in place; reflector k lives in V[k+1:, k]
    n = A.shape[0]
    V = np.zeros((n, n), dtype=np.complex128)
    for k in range(n - 2):
        alpha = 0.0
        for i in range(k + 1, n):
            alpha += A[i, k].real ** 2 + A[i, k].imag ** 2
        alpha = np.sqrt(alpha)
        if alpha == 0.0:
            continue
        x0 = A[k + 1, k]
        phase = x0 / abs(x0) if abs(x0) > 0.0 else 1.0 + 0.0j
        # v = x + phase*|x| e1, normalised
        for i in range(k + 1, n):
            V[i, k] = A[i, k]
        V[k + 1, k] += phase * alpha
        vn = 0.0
        for i in range(k + 1, n):
            vn += V[i, k].real ** 2 + V[i, k].imag ** 2
        vn = np.sqrt(vn)
        for i in range(k + 1, n):
            V[i, k] /= vn
        # A <- (I - 2vv*) A
        for j in range(k, n):
            s = 0.0j
            for i in range(k + 1, n):
                s += V[i, k].conjugate() * A[i, j]
            s *= 2.0
            for i in range(k + 1, n):
                A[i, j] -= V[i, k] * s
        # A <- A (I - 2vv*)
        for i in range(n):
            s = 0.0j
            for j in range(k + 1, n):
                s += A[i, j] * V[j, k]
            s *= 2.0
            for j in range(k + 1, n):
                A[i, j] -= s * V[j, k].conjugate()
        for i in range(k + 2, n):
            A[i, k] = 0.0j
    return V


@numba.njit(cache=True)
def _cabs1(z):
    return abs(z.real) + abs(z.imag)


@numba.njit(cache=True)
def _wilkinson(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    tr = 0.5 * (a - d)
    disc = np.sqrt(tr * tr + b * c)
    l1 = d + tr + disc
    l2 = d + tr - disc
    return l1 if abs(l1 - d) < abs(l2 - d) else l2


@numba.njit(cache=True)
def _hqr(H, max_sweeps):
    """Eigenvalues of an upper Hessenberg matrix (destroys H)."""
    n = H.shape[0]
    w = np.zeros(n, dtype=np.complex128)
    cs = np.zeros(n)
    sn = np.zeros(n, dtype=np.complex128)
    hi = n - 1
    sweeps = 0
    its = 0
    deflations = 0
    while hi >= 0:
        # locate the start of the unreduced block ending at hi
        lo = hi
        while lo > 0:
            tst = _cabs1(H[lo - 1, lo - 1]) + _cabs1(H[lo, lo])
            if tst == 0.0:
                tst = 1.0
            if _cabs1(H[lo, lo - 1]) <= _EPS * tst:
                H[lo, lo - 1] = 0.0j
                break
            lo -= 1
        if lo == hi:
            w[hi] = H[hi, hi]
            hi -= 1
            its = 0
            deflations += 1
            continue
        if sweeps >= max_sweeps:
            return w, sweeps, deflations, hi + 1
        sweeps += 1
        its += 1
        if its % 10 == 0:
            # exceptional shift to break cycles
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1].real)
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        for k in range(lo, hi + 1):
            H[k, k] -= mu
        # H - mu = QR, rotations applied from the left
        for k in range(lo, hi):
            a = H[k, k]
            b = H[k + 1, k]
            aa = abs(a)
            r = np.hypot(aa, abs(b))
            if r == 0.0:
                c = 1.0
                s = 0.0j
            elif aa == 0.0:
                c = 0.0
                s = b.conjugate() / abs(b)
            else:
                c = aa / r
                s = (a / aa) * b.conjugate() / r
            cs[k] = c
            sn[k] = s
            for j in range(k, hi + 1):
                x = H[k, j]
                y = H[k + 1, j]
                H[k, j] = c * x + s * y
                H[k + 1, j] = -s.conjugate() * x + c * y
        # RQ: apply G_k^H from the right
        for k in range(lo, hi):
            c = cs[k]
            s = sn[k]
            top = min(k + 2, hi)
            for i in range(lo, top + 1):
                x = H[i, k]
                y = H[i, k + 1]
                H[i, k] = c * x + s.conjugate() * y
                H[i, k + 1] = -s * x + c * y
        for k in range(lo, hi + 1):
            H[k, k] += mu
    return w, sweeps, deflations, 0


@numba.njit(cache=True)
def _hess_solve(H, lam, b):
    # (H - lam I) y = b for upper Hessenberg H, LU with partial pivoting
    n = H.shape[0]
    A = H.copy()
    for i in range(n):
        A[i, i] -= lam
    y = b.copy()
    for k in range(n - 1):
        if abs(A[k + 1, k]) > abs(A[k, k]):
            for j in range(k, n):
                t = A[k, j]
                A[k, j] = A[k + 1, j]
                A[k + 1, j] = t
            t = y[k]
            y[k] = y[k + 1]
            y[k + 1] = t
        piv = A[k, k]
        if piv == 0.0:
            piv = _EPS
            A[k, k] = piv
        f = A[k + 1, k] / piv
        if f != 0.0:
            for j in range(k + 1, n):
                A[k + 1, j] -= f * A[k, j]
            y[k + 1] -= f * y[k]
        A[k + 1, k] = 0.0j
    for i in range(n - 1, -1, -1):
        s = y[i]
        for j in range(i + 1, n):
            s -= A[i, j] * y[j]
        piv = A[i, i]
        if piv == 0.0:
            piv = _EPS
        y[i] = s / piv
    return y


@numba.njit(cache=True)
def _apply_q(V, y):
    # x = Q y with Q = H_0 H_1 ... H_{n-3}
    n = V.shape[0]
    x = y.copy()
    for k in range(n - 3, -1, -1):
        s = 0.0j
        for i in range(k + 1, n):
            s += V[i, k].conjugate() * x[i]
        s *= 2.0
        for i in range(k + 1, n):
            x[i] -= V[i, k] * s
    return x


def _prepare(M):
    A = np.array(M, dtype=np.complex128, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"square matrix required, got shape {A.shape}")
    if A.shape[0] == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix has non-finite entries")
    return A


def eigenvalues(M, backend="qr", vectors=False, sweeps_per_order=30):
    """All eigenvalues of a square complex matrix, with multiplicity."""
    A = _prepare(M)
    n = A.shape[0]
    if backend == "lapack":
        if vectors:
            w, v = np.linalg.eig(A)
            return EigenResult(w, v, backend="lapack")
        return EigenResult(np.linalg.eigvals(A), backend="lapack")
    if backend != "qr":
        raise ValueError(f"unknown backend {backend!r}")
    if n == 1:
        return EigenResult(A[0].copy(), np.ones((1, 1), complex) if vectors else None)
    Ab = A.copy()
    d = _balance(Ab)
    Vh = _hessenberg(Ab)
    H = Ab.copy()
    w, sweeps, deflations, left = _hqr(Ab, sweeps_per_order * n)
    if left:
        raise NoConvergence(f"QR stalled with {left} eigenvalues unresolved after {sweeps} sweeps")
    if not np.all(np.isfinite(w)):
        raise NonFinite("eigenvalue overflow")
    vecs = _inverse_iteration(H, Vh, d, w) if vectors else None
    return EigenResult(w, vecs, iterations=int(sweeps), deflations=int(deflations))


def _inverse_iteration(H, Vh, d, lams, steps=3):
    n = H.shape[0]
    hnorm = np.abs(H).sum(axis=0).max()
    rng = np.random.default_rng(12345)
    out = np.empty((n, len(lams)), dtype=np.complex128)
    for j, lam in enumerate(lams):
        shift = lam + 1e3 * _EPS * max(hnorm, 1.0) * (1 + 1j)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for _ in range(steps):
            y = _hess_solve(H, shift, y)
            y /= np.linalg.norm(y)
        x = y if Vh is None else d * _apply_q(Vh, y)
        out[:, j] = x / np.linalg.norm(x)
    return out


def eigenvectors(M, lams, backend="qr"):
    """Right eigenvectors (columns) of M for the given eigenvalue estimates.

    Inverse iteration on the Hessenberg form; with ``backend="lapack"`` the
    reduction itself is done by LAPACK (zgehrd), the iteration stays here.
    """
    A = _prepare(M)
    lams = np.atleast_1d(np.asarray(lams, complex))
    if backend == "lapack":
        import scipy.linalg

        H, Q = scipy.linalg.hessenberg(A, calc_q=True)
        out = _inverse_iteration(np.ascontiguousarray(H), None, None, lams)
        out = Q @ out
        return out / np.linalg.norm(out, axis=0)
    d = _balance(A)
    Vh = _hessenberg(A)
    return _inverse_iteration(A, Vh, d, lams)


def max_real_part(result):
    values = result.values if isinstance(result, EigenResult) else np.asarray(result)
    return float(np.max(values.real))
