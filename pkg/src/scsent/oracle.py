"""Brute-force checks in the full ``(2j1+1)(2j2+1)``-dimensional space.

Nothing here uses the two-qubit embedding or the closed-form concurrence.
States are assembled from coherent-state amplitudes, reduced by partial
trace and measured through the purity of the reduced state.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateState, DimensionMismatch
from .linalg import hermitian_eigen, singular_values
from .pure import EntangledParams
from .su2 import CoherentParam, coherent_amplitudes, tensor_state

SCHMIDT_TOL = 1e-10


def _branch_overlap(z: complex, two_j: int) -> float:
    r2 = abs(z) ** 2
    return ((1.0 - r2) / (1.0 + r2)) ** two_j


def fock_state(params: EntangledParams) -> np.ndarray:
    """``N (|Z1>|-Z2> + e^{i phi}|-Z1>|Z2>)`` as a full tensor-product vector.

    ``N`` comes from the analytic normalization, so the norm of the result
    is a check on that formula rather than being forced to one.
    """
    s1, s2 = params.j1, params.j2
    u1 = coherent_amplitudes(CoherentParam(s1, params.z1))
    m1 = coherent_amplitudes(CoherentParam(s1, -params.z1))
    u2 = coherent_amplitudes(CoherentParam(s2, params.z2))
    m2 = coherent_amplitudes(CoherentParam(s2, -params.z2))
    raw = tensor_state(u1, m2) + np.exp(1j * params.phi) * tensor_state(m1, u2)
    denom = 1.0 + math.cos(params.phi) * _branch_overlap(params.z1, s1.two_j) * _branch_overlap(
        params.z2, s2.two_j
    )
    if denom <= 1e-12:
        raise DegenerateState("branches cancel")
    return raw / math.sqrt(2.0 * denom)


def coefficient_matrix(state, dim1: int, dim2: int) -> np.ndarray:
    state = np.asarray(state, dtype=complex).ravel()
    if state.size != dim1 * dim2:
        raise DimensionMismatch(f"state of length {state.size} is not {dim1}x{dim2}")
    return state.reshape(dim1, dim2)


def reduced_density(state, dim1: int, dim2: int) -> np.ndarray:
    """Partial trace over the second factor."""
    M = coefficient_matrix(state, dim1, dim2)
    return M @ M.conj().T


def schmidt_coefficients(state, dim1: int, dim2: int) -> np.ndarray:
    return singular_values(coefficient_matrix(state, dim1, dim2))


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho) ** 2).real)


def mixedness(M) -> float:
    """``1 - Tr(rho_A^2)`` for the state with coefficient matrix ``M``.

    Uses ``(Tr rho)^2 - Tr(rho^2) = 2 sum_{i<j, k<l} |M_ik M_jl - M_il M_jk|^2``
    (Cauchy-Binet), a sum of squares that keeps near-product states at
    round-off level instead of the ``1 - (1 - eps)`` of the direct purity.
    """
    M = np.asarray(M, dtype=complex)
    outer = M[:, None, :, None] * M[None, :, None, :]
    minors = outer - outer.transpose(0, 1, 3, 2)
    # the full sum visits each unordered (i<j, k<l) minor four times
    total = float(np.sum(np.abs(minors) ** 2)) / 2.0
    return total / float(np.sum(np.abs(M) ** 2)) ** 2


def oracle_concurrence(params: EntangledParams) -> float:
    """``sqrt(2 (1 - Tr rho_A^2))`` on the exact state.

    This equals the concurrence only for Schmidt rank at most two, so the
    rank is checked on the smaller reduced state first.
    """
    d1, d2 = params.j1.dim, params.j2.dim
    psi = fock_state(params)
    M = coefficient_matrix(psi, d1, d2)
    if min(d1, d2) > 2:
        small = M @ M.conj().T if d1 <= d2 else M.T @ M.conj()
        small = small / np.trace(small).real
        third = hermitian_eigen(small).eigenvalues[2]
        if third > SCHMIDT_TOL:
            raise ValueError(f"Schmidt rank exceeds two (third weight {third:.3e})")
    return min(math.sqrt(2.0 * mixedness(M)), 1.0)


def entropy_bits(rho) -> float:
    """Von Neumann entropy in bits."""
    w = hermitian_eigen(rho).eigenvalues
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def exact_mixture_density(m) -> np.ndarray:
    """``p1 |Psi1><Psi1| + p2 |Psi2><Psi2|`` with the exact Fock vectors."""
    v1 = fock_state(m.comp1)
    v2 = fock_state(m.comp2)
    return m.p1 * np.outer(v1, v1.conj()) + m.p2 * np.outer(v2, v2.conj())
