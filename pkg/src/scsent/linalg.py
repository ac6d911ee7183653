"""Small dense complex linear algebra.

Everything here works on ``numpy`` complex arrays of modest size (the
package never needs more than a few dozen rows).  The eigensolver is a
cyclic Jacobi iteration written with plain Python scalars, which for 4x4
to 20x20 Hermitian matrices is several times faster than driving numpy
one rotation at a time.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotAntiHermitian, NotHermitian, NotPSD

MAX_SWEEPS = 100
OFF_DIAGONAL_TOL = 1e-13
PSD_CLAMP = 1e-10
NEGLIGIBLE_PAIR = 1e-18


class HermitianEigen(NamedTuple):
    eigenvalues: np.ndarray  # real, descending
    eigenvectors: np.ndarray  # columns


def as_matrix(A) -> np.ndarray:
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def max_norm(A) -> float:
    A = np.asarray(A)
    return float(np.abs(A).max()) if A.size else 0.0


def adjoint(A) -> np.ndarray:
    return as_matrix(A).conj().T


def matmul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def tensor(A, B) -> np.ndarray:
    """Kronecker product; row index of the result is ``i_A * rows_B + i_B``."""
    return np.kron(as_matrix(A), as_matrix(B))


def _jacobi(a: list, n: int):
    """Cyclic Jacobi on a nested list with unit Frobenius norm, in place.

    Returns (diag, V, sweeps).
    """
    v = [[1.0 + 0j if i == k else 0j for k in range(n)] for i in range(n)]
    target = OFF_DIAGONAL_TOL
    for sweep in range(MAX_SWEEPS + 1):
        off = 0.0
        for i in range(n):
            row = a[i]
            for k in range(n):
                if i != k:
                    x = row[k]
                    off += x.real * x.real + x.imag * x.imag
        if math.sqrt(off) <= target:
            return [a[i][i].real for i in range(n)], v, sweep
        if sweep == MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = abs(apq)
                if r <= NEGLIGIBLE_PAIR:
                    # Too small to matter, and its phase apq / r is unreliable.
                    a[p][q] = a[q][p] = 0j
                    continue
                # Phase-rotate the pair so the off-diagonal entry is real,
                # then apply the classical real symmetric rotation.
                phc = (apq / r).conjugate()
                app = a[p][p].real
                aqq = a[q][q].real
                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g10 = -s * phc
                g11 = c * phc
                for k in range(n):
                    rk = a[k]
                    x = rk[p]
                    y = rk[q]
                    rk[p] = c * x + g10 * y
                    rk[q] = s * x + g11 * y
                rp = a[p]
                rq = a[q]
                g10c = g10.conjugate()
                g11c = g11.conjugate()
                for k in range(n):
                    x = rp[k]
                    y = rq[k]
                    rp[k] = c * x + g10c * y
                    rq[k] = s * x + g11c * y
                rp[q] = 0j
                rq[p] = 0j
                rp[p] = complex(app - t * r)
                rq[q] = complex(aqq + t * r)
                for k in range(n):
                    rk = v[k]
                    x = rk[p]
                    y = rk[q]
                    rk[p] = c * x + g10 * y
                    rk[q] = s * x + g11 * y
    raise NoConvergence(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def hermitian_eigen(A, tol: float = 1e-12) -> HermitianEigen:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like
        Square complex matrix with ``max|A - A^H| <= tol``.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    HermitianEigen
        Eigenvalues in descending order (ties keep their original order)
        and the matching orthonormal eigenvectors as columns.
    """
    M = as_matrix(A)
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"eigensolver needs a square matrix, got {M.shape}")
    asym = max_norm(M - M.conj().T)
    if asym > tol:
        raise NotHermitian(f"max|A - A^H| = {asym:.3e} exceeds {tol:.1e}")
    M = 0.5 * (M + M.conj().T)
    peak = max_norm(M)
    if peak == 0.0:
        return HermitianEigen(np.zeros(n), np.eye(n, dtype=complex))
    # Exact power-of-two rescaling keeps subnormal and huge inputs in range.
    e = math.frexp(peak)[1]
    M = np.ldexp(M.real, -e) + 1j * np.ldexp(M.imag, -e)
    fro = float(np.sqrt(np.sum(np.abs(M) ** 2)))
    w, v, _ = _jacobi((M / fro).tolist(), n)
    w = np.ldexp(np.array(w) * fro, e)
    order = np.argsort(-w, kind="stable")
    return HermitianEigen(w[order], np.array(v, dtype=complex)[:, order])


def psd_sqrt(A) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero.
    """
    w, V = hermitian_eigen(A)
    if w.size and w[-1] < -PSD_CLAMP:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} is below -{PSD_CLAMP:.0e}")
    S = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
    return 0.5 * (S + S.conj().T)


def antihermitian_exp(A) -> np.ndarray:
    """``exp(A)`` for anti-Hermitian ``A`` via the eigenbasis of ``iA``."""
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"matrix exponential needs a square matrix, got {M.shape}")
    if max_norm(M + M.conj().T) > 1e-12:
        raise NotAntiHermitian("A + A^H is not zero")
    w, V = hermitian_eigen(1j * M)
    return (V * np.exp(-1j * w)) @ V.conj().T


def singular_values(M) -> np.ndarray:
    """Singular values (descending) from the Hermitian dilation [[0, M], [M^H, 0]].

    Small singular values come out with absolute accuracy near machine
    epsilon, unlike square roots of the eigenvalues of ``M M^H``.
    """
    M = as_matrix(M)
    r, c = M.shape
    H = np.zeros((r + c, r + c), dtype=complex)
    H[:r, r:] = M
    H[r:, :r] = M.conj().T
    w = hermitian_eigen(H).eigenvalues
    return np.clip(w[: min(r, c)], 0.0, None)
