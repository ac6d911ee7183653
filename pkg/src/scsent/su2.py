"""SU(2) ladder operators and spin coherent states.

Basis vectors are ordered by ascending magnetic quantum number, so index
``k`` holds ``|j, m = -j + k>`` and index 0 is the lowest-weight state that
the coherent states are rotated from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SpinMismatch, ThetaNearPi
from .linalg import antihermitian_exp


@dataclass(frozen=True, order=True)
class Spin:
    """A spin quantum number stored as the integer ``2j``."""

    two_j: int

    def __post_init__(self):
        if not isinstance(self.two_j, (int, np.integer)) or self.two_j < 0:
            raise ValueError(f"two_j must be a non-negative integer, got {self.two_j!r}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @classmethod
    def from_value(cls, j) -> "Spin":
        """Build from ``j`` given as int, float, str or Fraction (0.5, "3/2", 2 ...)."""
        twice = Fraction(str(j)) * 2 if isinstance(j, (str, float)) else Fraction(j) * 2
        if twice.denominator != 1:
            raise ValueError(f"spin must be a multiple of 1/2, got {j!r}")
        return cls(int(twice))

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def __str__(self):
        return str(self.two_j // 2) if self.two_j % 2 == 0 else f"{self.two_j}/2"


@dataclass(frozen=True)
class CoherentParam:
    spin: Spin
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"coherent-state label must be finite, got {self.z!r}")
        object.__setattr__(self, "z", z)

    def negate(self) -> "CoherentParam":
        return CoherentParam(self.spin, -self.z)


def _spin(s) -> Spin:
    return s if isinstance(s, Spin) else Spin.from_value(s)


def raising_radicands(spin) -> list[int]:
    """Integers under the square roots of the raising operator.

    Entry ``k`` is ``(j - m)(j + m + 1)`` for ``m = -j + k``, the squared
    matrix element connecting basis index ``k`` to ``k + 1``.
    """
    n = _spin(spin).two_j
    return [(n - k) * (k + 1) for k in range(n)]


def ladder_matrices(spin) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(J+, J-, Jz)`` in the ascending-m basis."""
    spin = _spin(spin)
    dim = spin.dim
    jp = np.zeros((dim, dim), dtype=complex)
    for k, rad in enumerate(raising_radicands(spin)):
        jp[k + 1, k] = math.sqrt(rad)
    jz = np.diag(np.arange(dim) - spin.j).astype(complex)
    return jp, jp.conj().T.copy(), jz


def coherent_amplitudes(p: CoherentParam) -> np.ndarray:
    """Expansion coefficients of ``|Z, j>`` over ``|j, m>``, ascending m.

    Binomial weights and powers of ``|Z|`` are combined in log space, so
    large spins and large labels never overflow.
    """
    n = p.spin.two_j
    r = abs(p.z)
    if r == 0.0:
        out = np.zeros(n + 1, dtype=complex)
        out[0] = 1.0
        return out
    log_norm = 0.5 * n * math.log1p(r * r)
    log_r = math.log(r)
    logs = np.array([0.5 * math.log(math.comb(n, k)) + k * log_r - log_norm for k in range(n + 1)])
    phase = np.exp(1j * math.atan2(p.z.imag, p.z.real) * np.arange(n + 1))
    return np.exp(logs) * phase


def overlap(p1: CoherentParam, p2: CoherentParam) -> complex:
    """``<Z1, j | Z2, j>`` in closed form."""
    if p1.spin != p2.spin:
        raise SpinMismatch(f"spins differ: {p1.spin} vs {p2.spin}")
    z1, z2 = p1.z, p2.z
    base = (1 + z1.conjugate() * z2) / math.sqrt((1 + abs(z1) ** 2) * (1 + abs(z2) ** 2))
    return base ** p1.spin.two_j


def overlap_minus(p: CoherentParam) -> float:
    """``<Z, j | -Z, j> = ((1 - |Z|^2) / (1 + |Z|^2))^(2j)``, always real."""
    r2 = p.z.real * p.z.real + p.z.imag * p.z.imag
    return ((1.0 - r2) / (1.0 + r2)) ** p.spin.two_j


def rotation_coherent(spin, theta: float, phi: float) -> np.ndarray:
    """Coherent state obtained by rotating ``|j, -j>`` with a matrix exponential.

    Evaluates ``exp[(theta/2)(J+ e^{i phi} - J- e^{-i phi})] |j, -j>``, which
    equals :func:`coherent_amplitudes` at ``Z = tan(theta/2) e^{i phi}``.
    """
    spin = _spin(spin)
    if abs(theta - math.pi) < 1e-8:
        raise ThetaNearPi(f"theta = {theta!r} maps to an infinite label")
    jp, jm, _ = ladder_matrices(spin)
    zeta = 0.5 * theta * complex(math.cos(phi), math.sin(phi))
    u = antihermitian_exp(zeta * jp - zeta.conjugate() * jm)
    return u[:, 0].copy()


def tensor_state(v1, v2) -> np.ndarray:
    return np.kron(np.asarray(v1, dtype=complex), np.asarray(v2, dtype=complex))
