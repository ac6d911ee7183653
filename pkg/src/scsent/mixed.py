"""Two-component mixtures of entangled spin coherent states.

Each component is mapped to two-qubit coordinates by its own embedding and
the two projectors are then added in one shared ``{|00>, |01>, |10>, |11>}``
basis.  On that 4x4 matrix we evaluate

* the Wootters concurrence ``max(l1 - l2 - l3 - l4, 0)``,
* the rank-two squared concurrence written with complex concurrences
  ``c = 2(ad - bc)`` of two decomposition vectors and of their sum and
  difference, both for the spectral decomposition and for the mixture
  weights directly,
* the squared-concurrence bounds ``(p1 C1 -/+ p2 C2)^2`` and the case
  analysis telling which closed form applies.
"""

from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotDensityMatrix, RankExceeded
from .linalg import hermitian_eigen, singular_values
from .pure import (
    EntangledParams,
    TwoQubitPure,
    check_same_spins,
    embedding,
    to_two_qubit,
)

log = logging.getLogger(__name__)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

RANK_TOL = 1e-10
# Eigenvalues of rho at or below this are dropped when forming the
# spin-flip matrix; their effect on the lambdas is of the same order.
NEGLIGIBLE_WEIGHT = 1e-14
REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class RankTwoMixture:
    comp1: EntangledParams
    comp2: EntangledParams
    p1: float
    p2: float | None = None

    def __post_init__(self):
        p1 = float(self.p1)
        p2 = 1.0 - p1 if self.p2 is None else float(self.p2)
        if not (0.0 <= p1 <= 1.0 and 0.0 <= p2 <= 1.0):
            raise ValueError(f"probabilities must lie in [0, 1], got {p1}, {p2}")
        if abs(p1 + p2 - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {p1} + {p2}")
        check_same_spins(self.comp1, self.comp2)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)


class SpectralPair(NamedTuple):
    mu1: float
    mu2: float
    vec1: TwoQubitPure
    vec2: TwoQubitPure


class ConcurrenceBounds(NamedTuple):
    lower: float
    upper: float


class MixtureQuantities(NamedTuple):
    C1: float
    C2: float
    c1: complex
    c2: complex
    cplus: complex
    cminus: complex
    overlap: complex  # <psi1|psi2>; nonzero means psi_+/- are not unit vectors


class CaseLabel(enum.Enum):
    UPPER_BOUND = "UpperBound"
    INTERMEDIATE = "Intermediate"
    LOWER_BOUND_NEG_PRODUCT = "LowerBoundNegProduct"
    LOWER_BOUND_EQUAL_C = "LowerBoundEqualC"
    UNCLASSIFIED = "Unclassified"

    def __str__(self):
        return self.value


class Classification(NamedTuple):
    label: CaseLabel
    value: float

    @property
    def classified(self) -> bool:
        return self.label is not CaseLabel.UNCLASSIFIED


def _validated_eigen(rho, rank_two: bool = False):
    try:
        rho = np.asarray(rho, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise NotDensityMatrix(str(exc)) from None
    if rho.shape != (4, 4):
        raise NotDensityMatrix(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NotDensityMatrix("non-finite entries")
    if np.abs(rho - rho.conj().T).max() > 1e-12:
        raise NotDensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-12:
        raise NotDensityMatrix(f"trace is {np.trace(rho).real!r}, not 1")
    eig = hermitian_eigen(rho)
    w = eig.eigenvalues
    if w[-1] < -1e-10:
        raise NotDensityMatrix(f"negative eigenvalue {w[-1]:.3e}")
    if rank_two and w[2] > RANK_TOL:
        raise NotDensityMatrix(f"rank exceeds two (third eigenvalue {w[2]:.3e})")
    return rho, eig


def check_density_matrix(rho, rank_two: bool = False) -> np.ndarray:
    """Validate a two-qubit density matrix and return it as an array.

    Hermiticity and unit trace are checked to 1e-12, positivity to -1e-10.
    With ``rank_two`` the third eigenvalue must not exceed 1e-10.
    """
    return _validated_eigen(rho, rank_two)[0]


def _vec(s) -> np.ndarray:
    return s.vector if isinstance(s, TwoQubitPure) else np.asarray(s, dtype=complex).ravel()


def density_matrix(m: RankTwoMixture) -> np.ndarray:
    """``p1 |psi1><psi1| + p2 |psi2><psi2|`` in the shared two-qubit basis."""
    v1 = to_two_qubit(m.comp1).vector
    v2 = to_two_qubit(m.comp2).vector
    return m.p1 * np.outer(v1, v1.conj()) + m.p2 * np.outer(v2, v2.conj())


def wootters_lambdas(rho) -> np.ndarray:
    """The four ``lambda_i`` of the Wootters formula, descending.

    The lambdas are the singular values of ``sqrt(rho) S sqrt(rho)^*`` with
    ``S = sigma_y x sigma_y``; their squares are the eigenvalues of
    ``rho S rho^* S``.  Writing ``rho = V diag(mu) V^H`` they equal the
    singular values of the small symmetric matrix
    ``diag(sqrt mu) V^H S V^* diag(sqrt mu)``, which are read off a Hermitian
    dilation so that vanishing lambdas stay at round-off level.
    """
    _, (mu, V) = _validated_eigen(rho)
    keep = mu > NEGLIGIBLE_WEIGHT
    out = np.zeros(4)
    if not keep.any():
        return out
    root = np.sqrt(mu[keep])
    Vk = V[:, keep]
    tau = root[:, None] * (Vk.conj().T @ SIGMA_YY @ Vk.conj()) * root[None, :]
    sv = singular_values(tau)
    out[: sv.size] = sv
    return out


def wootters_concurrence(rho) -> float:
    lam = wootters_lambdas(rho)
    return min(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0), 1.0)


def complex_concurrence(s) -> complex:
    """``2(ad - bc)``; accepts a :class:`TwoQubitPure` or any 4-vector."""
    a, b, c, d = _vec(s)
    return 2.0 * (a * d - b * c)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-9))[0])
    return v * (abs(v[k]) / v[k])


def _degenerate_basis(Q: np.ndarray, candidates) -> list[np.ndarray]:
    """Orthonormal basis of span(Q) from projected candidates, in order."""
    chosen: list[np.ndarray] = []
    for x in candidates:
        y = Q @ (Q.conj().T @ x)
        for u in chosen:
            y = y - u * np.vdot(u, y)
        nrm = np.linalg.norm(y)
        if nrm > 1e-8:
            chosen.append(y / nrm)
        if len(chosen) == 2:
            break
    return chosen


def spectral_rank2(rho, components=None) -> SpectralPair:
    """Two leading eigenpairs of a rank-two density matrix.

    When the two weights coincide the eigenvectors are not unique.  The
    pair is then built by orthonormalizing ``components`` (if given) inside
    the eigenspace, followed by the standard basis vectors in index order.
    Every returned vector has its largest entry made real and positive.
    """
    rho = np.asarray(rho, dtype=complex)
    w, V = hermitian_eigen(rho)
    if w.size != 4:
        raise NotDensityMatrix("spectral_rank2 needs a 4x4 matrix")
    if w[2] > RANK_TOL:
        raise RankExceeded(f"third eigenvalue {w[2]:.3e} exceeds {RANK_TOL:.0e}")
    v1, v2 = V[:, 0], V[:, 1]
    if w[0] - w[1] <= RANK_TOL:
        candidates = [_vec(c) for c in (components or ())] + list(np.eye(4, dtype=complex))
        v1, v2 = _degenerate_basis(V[:, :2], candidates)
    v1 = _fix_phase(v1 / np.linalg.norm(v1))
    v2 = _fix_phase(v2 / np.linalg.norm(v2))
    return SpectralPair(float(w[0]), float(w[1]), TwoQubitPure.from_vector(v1), TwoQubitPure.from_vector(v2))


def _rank_two_formula(w1, w2, c1, c2, cplus, cminus) -> float:
    diff = cplus - cminus
    value = (
        w1 * w1 * abs(c1) ** 2
        + w2 * w2 * abs(c2) ** 2
        + 0.5 * w1 * w2 * abs(diff) ** 2
        - 0.5 * w1 * w2 * abs(diff * diff - 4.0 * c1 * c2)
    )
    return max(value, 0.0)


def simplified_concurrence_sq(sp: SpectralPair) -> float:
    """Squared concurrence of a rank-two state from its spectral pair."""
    v1, v2 = sp.vec1.vector, sp.vec2.vector
    s = 1.0 / math.sqrt(2.0)
    return _rank_two_formula(
        sp.mu1,
        sp.mu2,
        complex_concurrence(v1),
        complex_concurrence(v2),
        complex_concurrence(s * (v1 + v2)),
        complex_concurrence(s * (v1 - v2)),
    )


def mixture_quantities(m: RankTwoMixture) -> MixtureQuantities:
    """Pure-component concurrences and the complex concurrences of the sum/difference.

    ``c_+/-`` are taken from the unnormalized combinations
    ``(psi1 +/- psi2)/sqrt(2)``, which is what the product form
    ``-(b1 +/- b2)(c1 +/- c2)`` of the two-qubit coordinates evaluates.
    """
    e1, e2 = embedding(m.comp1), embedding(m.comp2)
    ph1, ph2 = cmath.exp(1j * m.comp1.phi), cmath.exp(1j * m.comp2.phi)
    # two-qubit coordinates b = N N2, c = N e^{i phi} N1 (d = 0)
    b1, b2 = e1.norm * e1.n2, e2.norm * e2.n2
    g1, g2 = e1.norm * e1.n1 * ph1, e2.norm * e2.n1 * ph2
    c1, c2 = -2.0 * b1 * g1, -2.0 * b2 * g2
    cplus = -(b1 + b2) * (g1 + g2)
    cminus = -(b1 - b2) * (g1 - g2)
    a1 = e1.norm * (e1.p2 + ph1 * e1.p1)
    a2 = e2.norm * (e2.p2 + ph2 * e2.p1)
    ov = a1.conjugate() * a2 + b1 * b2 + g1.conjugate() * g2
    if abs(ov) > 1e-12 and log.isEnabledFor(logging.DEBUG):
        log.debug(
            "components overlap %.3e; |psi_+|^2 = %.6f, |psi_-|^2 = %.6f",
            abs(ov), 1.0 + ov.real, 1.0 - ov.real,
        )
    return MixtureQuantities(
        min(2.0 * e1.norm**2 * e1.n1 * e1.n2, 1.0),
        min(2.0 * e2.norm**2 * e2.n1 * e2.n2, 1.0),
        c1, c2, cplus, cminus, ov,
    )


def simplified_concurrence_sq_direct(m: RankTwoMixture) -> float:
    """Rank-two formula fed with the mixture weights and components themselves."""
    q = mixture_quantities(m)
    return _rank_two_formula(m.p1, m.p2, q.c1, q.c2, q.cplus, q.cminus)


def bounds(m: RankTwoMixture) -> ConcurrenceBounds:
    q = mixture_quantities(m)
    return _bounds(m, q)


def _bounds(m: RankTwoMixture, q: MixtureQuantities) -> ConcurrenceBounds:
    lo = m.p1 * q.C1 - m.p2 * q.C2
    hi = m.p1 * q.C1 + m.p2 * q.C2
    return ConcurrenceBounds(lo * lo, hi * hi)


def _is_real(z: complex) -> bool:
    return abs(z.imag) <= REALNESS_TOL * (1.0 + abs(z))


def classify_case(m: RankTwoMixture) -> Classification:
    """Decide which closed form for the squared concurrence applies.

    The ordering conditions compare ``(c+ - c-)^2`` with ``4 c1 c2`` and are
    only evaluated when both are real (to within 1e-9 relative); the
    ``c+ = c-`` test is an equality of complex numbers and needs no
    ordering.  Anything else is reported as unclassified with a NaN value.
    """
    q = mixture_quantities(m)
    bnd = _bounds(m, q)
    diff = q.cplus - q.cminus
    x = diff * diff
    y = q.c1 * q.c2
    if _is_real(x) and _is_real(y):
        X, Y = x.real, 4.0 * y.real
        tol = 1e-12 * (1.0 + abs(X) + abs(Y))
        if X >= Y - tol and Y >= -tol:
            return Classification(CaseLabel.UPPER_BOUND, bnd.upper)
        if -tol <= X <= Y + tol:
            return Classification(CaseLabel.INTERMEDIATE, _intermediate_value(m))
        if Y <= tol:
            return Classification(CaseLabel.LOWER_BOUND_NEG_PRODUCT, bnd.lower)
    if abs(diff) <= 1e-12 * (1.0 + abs(q.cplus) + abs(q.cminus)):
        return Classification(CaseLabel.LOWER_BOUND_EQUAL_C, bnd.lower)
    return Classification(CaseLabel.UNCLASSIFIED, math.nan)


def _intermediate_value(m: RankTwoMixture) -> float:
    e1, e2 = embedding(m.comp1), embedding(m.comp2)
    k1 = m.p1 * e1.norm**2 * e1.n1 * e1.n2
    k2 = m.p2 * e2.norm**2 * e2.n1 * e2.n2
    cross = (
        e1.norm * e1.n2 * e2.norm * e2.n1 * cmath.exp(1j * m.comp2.phi)
        + e2.norm * e2.n2 * e1.norm * e1.n1 * cmath.exp(1j * m.comp1.phi)
    )
    return 4.0 * ((k1 - k2) ** 2 + m.p1 * m.p2 * abs(cross) ** 2)


def equal_c_residual(m: RankTwoMixture) -> float:
    """``|N2' N1'' e^{i phi2} + N2'' N1' e^{i phi1}|``: zero exactly when c+ = c-."""
    e1, e2 = embedding(m.comp1), embedding(m.comp2)
    return abs(e1.n2 * e2.n1 * cmath.exp(1j * m.comp2.phi) + e2.n2 * e1.n1 * cmath.exp(1j * m.comp1.phi))
