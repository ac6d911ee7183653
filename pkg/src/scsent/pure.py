"""Entangled spin coherent states and their pure-state concurrence.

The state is ``N (|Z1> |-Z2> + e^{i phi} |-Z1> |Z2>)``.  Each factor lives
in the two-dimensional span of ``|Z>`` and ``|-Z>``, so the pair can be
rewritten exactly as a two-qubit state using the orthonormal basis

    |0> = |Z>,    |1> = (|-Z> - P |Z>) / sqrt(1 - P^2),   P = <Z|-Z>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateState, SpinMismatch
from .su2 import CoherentParam, Spin, overlap_minus

DEGENERACY_TOL = 1e-12
BELL_TOL = 1e-9


def _as_spin(s) -> Spin:
    return s if isinstance(s, Spin) else Spin.from_value(s)


@dataclass(frozen=True)
class EntangledParams:
    """Parameters ``(j1, j2, Z1, Z2, phi)`` of an entangled spin coherent state.

    ``j1``/``j2`` accept :class:`Spin` or anything :meth:`Spin.from_value`
    understands.  Construction fails with :class:`DegenerateState` when the
    two branches cancel (only possible at ``Z1 = Z2 = 0, phi = pi``).
    """

    j1: Spin
    j2: Spin
    z1: complex
    z2: complex
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "j1", _as_spin(self.j1))
        object.__setattr__(self, "j2", _as_spin(self.j2))
        object.__setattr__(self, "phi", float(self.phi))
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        # CoherentParam validates finiteness of the labels.
        object.__setattr__(self, "z1", self.side1.z)
        object.__setattr__(self, "z2", self.side2.z)
        if self.norm_denominator <= DEGENERACY_TOL:
            raise DegenerateState(
                f"1 + cos(phi) P1 P2 = {self.norm_denominator:.3e}; the superposition vanishes"
            )

    @property
    def side1(self) -> CoherentParam:
        return CoherentParam(self.j1, self.z1)

    @property
    def side2(self) -> CoherentParam:
        return CoherentParam(self.j2, self.z2)

    @property
    def norm_denominator(self) -> float:
        return 1.0 + math.cos(self.phi) * overlap_minus(self.side1) * overlap_minus(self.side2)


class Embedding(NamedTuple):
    """Overlaps ``P1, P2``, basis weights ``N1, N2`` and the normalization ``N``."""

    p1: float
    p2: float
    n1: float
    n2: float
    norm: float


@dataclass(frozen=True)
class TwoQubitPure:
    """Amplitudes of ``|00>, |01>, |10>, |11>``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        norm2 = sum(abs(x) ** 2 for x in self.vector)
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"two-qubit state is not normalized (|psi|^2 = {norm2!r})")

    @classmethod
    def from_vector(cls, v) -> "TwoQubitPure":
        v = np.asarray(v, dtype=complex).ravel()
        if v.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got {v.shape}")
        return cls(*v)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)


def _orthogonal_weight(side: CoherentParam) -> float:
    """``sqrt(1 - P^2)`` evaluated from ``|Z|`` rather than from ``P``.

    With ``q = (1 - r^2) / (1 + r^2)`` one has ``1 - |q| = 2 min(r^2, 1) / (1 + r^2)``
    exactly, so ``1 - q^(4j)`` keeps full relative accuracy even where
    ``P`` itself has rounded to +-1 (``|Z|`` near 0 or very large).
    """
    z = side.z
    r2 = z.real * z.real + z.imag * z.imag
    if math.isinf(r2):
        return 0.0
    gap = 2.0 * min(r2, 1.0) / (1.0 + r2)
    if gap >= 1.0:
        return 1.0
    return math.sqrt(-math.expm1(2 * side.spin.two_j * math.log1p(-gap)))


def embedding(params: EntangledParams) -> Embedding:
    p1 = overlap_minus(params.side1)
    p2 = overlap_minus(params.side2)
    denom = 1.0 + math.cos(params.phi) * p1 * p2
    if denom <= DEGENERACY_TOL:
        raise DegenerateState(f"normalization denominator {denom:.3e} vanishes")
    n1, n2 = _orthogonal_weight(params.side1), _orthogonal_weight(params.side2)
    return Embedding(p1, p2, n1, n2, 1.0 / math.sqrt(2.0 * denom))


def to_two_qubit(params: EntangledParams) -> TwoQubitPure:
    """Coordinates of the state in the product of the two orthonormal bases.

    Close to the cancelling configuration ``Z1, Z2 -> 0, phi -> pi`` the
    analytic ``N`` leaves a round-off norm defect well above 1e-12, so the
    vector is rescaled by its computed norm.
    """
    e = embedding(params)
    phase = cmath.exp(1j * params.phi)
    v = np.array([e.p2 + phase * e.p1, e.n2, phase * e.n1, 0.0], dtype=complex)
    v *= e.norm
    v /= np.linalg.norm(v)
    return TwoQubitPure(*v)


def _clamp_unit(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def concurrence_two_qubit(s: TwoQubitPure) -> float:
    """``C = 2 |ad - bc|`` clamped to ``[0, 1]``."""
    return _clamp_unit(2.0 * abs(s.a * s.d - s.b * s.c))


def concurrence_pure(params: EntangledParams) -> float:
    """Closed-form concurrence ``2 N^2 N1 N2``."""
    e = embedding(params)
    return _clamp_unit(2.0 * e.norm * e.norm * e.n1 * e.n2)


def is_bell(params: EntangledParams, tol: float = BELL_TOL) -> bool:
    """True when both labels sit on the unit circle, where C = 1."""
    return abs(abs(params.z1) - 1.0) <= tol and abs(abs(params.z2) - 1.0) <= tol


def check_same_spins(a: EntangledParams, b: EntangledParams) -> None:
    if a.j1 != b.j1 or a.j2 != b.j2:
        raise SpinMismatch(f"components use different spins: ({a.j1}, {a.j2}) vs ({b.j1}, {b.j2})")
