"""Randomized invariant suites behind ``scsent verify``.

Each check draws its own inputs from a generator seeded by the suite seed
and the check identifier, so suites are reproducible and independent of
the order they run in.
"""

from __future__ import annotations

import math
import sys
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import DegenerateState
from .linalg import antihermitian_exp, hermitian_eigen, psd_sqrt, singular_values, tensor
from .mixed import (
    CaseLabel,
    RankTwoMixture,
    bounds,
    classify_case,
    density_matrix,
    simplified_concurrence_sq,
    simplified_concurrence_sq_direct,
    spectral_rank2,
    wootters_concurrence,
)
from .oracle import (
    coefficient_matrix,
    entropy_bits,
    fock_state,
    oracle_concurrence,
    reduced_density,
)
from .pure import EntangledParams, concurrence_pure, concurrence_two_qubit, to_two_qubit
from .scan import ScanConfig, mixed_point
from .su2 import (
    CoherentParam,
    Spin,
    coherent_amplitudes,
    ladder_matrices,
    overlap,
    overlap_minus,
    rotation_coherent,
)

SUITES = ("su2", "pure", "mixed", "oracle")
TWO_PI = 2.0 * math.pi


@dataclass
class CheckResult:
    ident: str
    n: int
    max_resid: float
    tol: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.ident} n={self.n} max_resid={self.max_resid:.3e} tol={self.tol:.0e}"
        return f"{text} {self.note}" if self.note else text


def _residual_check(ident: str, tol: float, residuals: Iterable[float], note: str = "") -> CheckResult:
    vals = list(residuals)
    worst = max(vals) if vals else 0.0
    return CheckResult(ident, len(vals), worst, tol, bool(worst <= tol), note)


def rng_for(seed: int, ident: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(ident.encode())])


# -- random inputs ---------------------------------------------------------


def random_label(rng, rmax: float = 5.0) -> complex:
    return complex(rng.uniform(0.0, rmax) * np.exp(1j * rng.uniform(0.0, TWO_PI)))


def random_params(rng, max_two_j: int = 8, rmax: float = 5.0) -> EntangledParams:
    """Uniform twoJ in 1..max_two_j, |Z| <= rmax, all phases uniform."""
    while True:
        try:
            return EntangledParams(
                Spin(int(rng.integers(1, max_two_j + 1))),
                Spin(int(rng.integers(1, max_two_j + 1))),
                random_label(rng, rmax),
                random_label(rng, rmax),
                rng.uniform(0.0, TWO_PI),
            )
        except DegenerateState:
            continue


def random_mixture(rng, max_two_j: int = 8, rmax: float = 5.0) -> RankTwoMixture:
    a = random_params(rng, max_two_j, rmax)
    while True:
        try:
            b = EntangledParams(a.j1, a.j2, random_label(rng, rmax), random_label(rng, rmax), rng.uniform(0.0, TWO_PI))
            break
        except DegenerateState:
            continue
    return RankTwoMixture(a, b, float(rng.uniform()))


def random_hermitian(rng, n: int, scale: float = 10.0) -> np.ndarray:
    A = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    A = (A + A.conj().T) / 2
    return A * (scale / np.abs(A).max())


def bell_mixture(two_j1: int, two_j2: int, alpha1: float, alpha2: float, phi1: float, phi2: float, p1: float):
    """Mixture of two components whose labels sit on the unit circle."""
    j1, j2 = Spin(two_j1), Spin(two_j2)
    return RankTwoMixture(
        EntangledParams(j1, j2, np.exp(1j * alpha1), np.exp(1j * alpha2), phi1),
        EntangledParams(j1, j2, np.exp(1j * alpha2), np.exp(1j * alpha1), phi2),
        p1,
    )


# -- su2 (with the linear-algebra kernel) ------------------------------------


def check_eigen_reconstruction(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "linalg.eigen")
    rec, gram = [], []
    for _ in range(150):
        n = int(rng.integers(1, 21))
        A = random_hermitian(rng, n, rng.uniform(0.1, 10.0))
        w, V = hermitian_eigen(A)
        scale = np.abs(A).max()
        rec.append(np.abs(V @ np.diag(w) @ V.conj().T - A).max() / scale)
        gram.append(np.abs(V.conj().T @ V - np.eye(n)).max())
    return [
        _residual_check("linalg.eigen_reconstruction", 1e-11, rec),
        _residual_check("linalg.eigen_orthonormal", 1e-11, gram),
    ]


def check_psd_sqrt(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "linalg.psd_sqrt")
    res = []
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        k = int(rng.integers(1, n + 1))
        B = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
        A = B @ B.conj().T
        S = psd_sqrt(A)
        res.append(np.abs(S @ S - A).max())
    return [_residual_check("linalg.psd_sqrt_square", 1e-9, res)]


def check_antihermitian_exp(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "linalg.expm")
    res = []
    for _ in range(200):
        n = int(rng.integers(1, 11))
        A = 1j * random_hermitian(rng, n, rng.uniform(0.1, 10.0))
        res.append(np.abs(antihermitian_exp(A) @ antihermitian_exp(-A) - np.eye(n)).max())
    return [_residual_check("linalg.expm_inverse", 1e-10, res)]


def check_tensor_associative(seed: int) -> list[CheckResult]:
    # Entries are Gaussian integers so every product is exact in floating point.
    rng = rng_for(seed, "linalg.tensor")
    res = []
    for _ in range(100):
        A, B, C = (
            rng.integers(-9, 10, (r, c)) + 1j * rng.integers(-9, 10, (r, c))
            for r, c in rng.integers(1, 4, (3, 2))
        )
        left = tensor(tensor(A, B), C)
        right = tensor(A, tensor(B, C))
        res.append(0.0 if np.array_equal(left, right) else float(np.abs(left - right).max()))
    return [_residual_check("linalg.tensor_associative", 0.0, res)]


def check_unit_norm(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "su2.unit_norm")
    res = []
    for two_j in range(0, 51):
        for _ in range(20):
            v = coherent_amplitudes(CoherentParam(Spin(two_j), random_label(rng, 10.0)))
            res.append(abs(np.linalg.norm(v) - 1.0))
    return [_residual_check("su2.unit_norm", 1e-12, res)]


def _label_grid():
    for k in range(1, 31):
        for l in range(14):
            yield 0.1 * k * np.exp(1j * math.pi * l / 7)


def check_overlap_minus(seed: int) -> list[CheckResult]:
    res = []
    for two_j in range(1, 17):
        s = Spin(two_j)
        for z in _label_grid():
            p = CoherentParam(s, z)
            res.append(abs(overlap_minus(p) - overlap(p, p.negate())))
    return [_residual_check("su2.overlap_minus", 1e-13, res)]


def check_overlap_symmetries(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "su2.overlap_symmetry")
    inv, phase = [], []
    for two_j in range(1, 17):
        s = Spin(two_j)
        for _ in range(30):
            r = float(rng.uniform(0.05, 20.0))
            a = float(rng.uniform(0.0, TWO_PI))
            inv.append(abs(abs(overlap_minus(CoherentParam(s, r * np.exp(1j * a))))
                           - abs(overlap_minus(CoherentParam(s, np.exp(1j * a) / r)))))
        # On the shared label grid; for arbitrary r the rounding of r e^{i a}
        # alone moves |Z| by an amount that can exceed the tolerance.
        for k in range(1, 31):
            ref = overlap_minus(CoherentParam(s, 0.1 * k))
            phase.append(max(abs(overlap_minus(CoherentParam(s, 0.1 * k * np.exp(1j * math.pi * l / 7))) - ref)
                             for l in range(14)))
    return [
        _residual_check("su2.overlap_inversion", 1e-12, inv),
        _residual_check("su2.overlap_phase_free", 1e-15, phase),
    ]


def check_commutators(seed: int) -> list[CheckResult]:
    res = []
    for two_j in range(0, 41):
        Jp, Jm, Jz = ladder_matrices(Spin(two_j))
        scale = max(1.0, two_j)
        res.append(max(
            np.abs(Jp @ Jm - Jm @ Jp - 2 * Jz).max(),
            np.abs(Jz @ Jp - Jp @ Jz - Jp).max(),
            np.abs(Jz @ Jm - Jm @ Jz + Jm).max(),
        ) / scale)
    return [_residual_check("su2.ladder_commutators", 1e-12, res)]


def check_rotation(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "su2.rotation")
    res = []
    thetas = np.linspace(0.0, math.pi - 0.1, 52)[1:-1]
    for two_j in range(0, 9):
        s = Spin(two_j)
        for theta in thetas:
            phi = float(rng.uniform(0.0, TWO_PI))
            z = math.tan(theta / 2) * np.exp(1j * phi)
            res.append(np.abs(rotation_coherent(s, theta, phi) - coherent_amplitudes(CoherentParam(s, z))).max())
    return [_residual_check("su2.rotation_consistency", 1e-9, res)]


# -- pure --------------------------------------------------------------------


def check_pure_consistency(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "pure.draws")
    cons, orc = [], []
    for _ in range(10_000):
        p = random_params(rng)
        c = concurrence_pure(p)
        cons.append(abs(c - concurrence_two_qubit(to_two_qubit(p))))
        orc.append(abs(c - oracle_concurrence(p)))
    return [
        _residual_check("pure.two_qubit_consistency", 1e-13, cons),
        _residual_check("pure.oracle_equivalence", 1e-10, orc),
    ]


def check_phase_invariance(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "pure.phase_invariance")
    res = []
    for _ in range(500):
        p = random_params(rng)
        ref = concurrence_pure(EntangledParams(p.j1, p.j2, abs(p.z1), abs(p.z2), p.phi))
        res.append(abs(concurrence_pure(p) - ref))
    return [_residual_check("pure.phase_invariance", 1e-14, res)]


def check_boundary(seed: int) -> list[CheckResult]:
    """Decay for large |Z1| and vanishing for |Z1| -> 0, inf.

    Monotone decay is checked where it holds for every r >= 3: second label
    on the unit circle (C reduces to N1) and the diagonal |Z1| = |Z2| with
    cos(phi) >= 0.  For other second labels C can rise to 1 on a ridge
    beyond r = 3.
    """
    rng = rng_for(seed, "pure.boundary")
    radii = np.linspace(3.0, 50.0, 95)
    increases, tails = [], []
    for _ in range(100):
        s1, s2 = Spin(int(rng.integers(1, 9))), Spin(int(rng.integers(1, 9)))
        a1, a2 = rng.uniform(0.0, TWO_PI, 2)
        phi = float(rng.uniform(0.0, TWO_PI))
        phi_diag = float(rng.uniform(-math.pi / 2, math.pi / 2))
        for seq in (
            [concurrence_pure(EntangledParams(s1, s2, r * np.exp(1j * a1), np.exp(1j * a2), phi)) for r in radii],
            [concurrence_pure(EntangledParams(s1, s1, r * np.exp(1j * a1), r * np.exp(1j * a2), phi_diag))
             for r in radii],
        ):
            increases.append(max(0.0, max(b - a for a, b in zip(seq, seq[1:]))))
        z2 = random_label(rng, 3.0)
        try:
            small = concurrence_pure(EntangledParams(s1, s2, 1e-9, z2, phi))
        except DegenerateState:
            continue
        tails.append(max(small, concurrence_pure(EntangledParams(s1, s2, 1e9, z2, phi))))
    return [
        _residual_check("pure.boundary_monotone_decay", 1e-12, increases),
        _residual_check("pure.boundary_limits", 1e-6, tails),
    ]


def check_bell_plateau(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "pure.bell_plateau")
    res = []
    for t1 in range(1, 9):
        for t2 in range(1, 9):
            a1, a2 = rng.uniform(0.0, TWO_PI, 2)
            for k in range(32):
                p = EntangledParams(Spin(t1), Spin(t2), np.exp(1j * a1), np.exp(1j * a2), TWO_PI * k / 32)
                res.append(abs(concurrence_pure(p) - 1.0))
    return [_residual_check("pure.bell_plateau", 1e-12, res)]


def check_spin_monotonicity(seed: int) -> list[CheckResult]:
    res = []
    for k in range(1, 10):
        r = k / 10
        seq = [concurrence_pure(EntangledParams(Spin(t), Spin(t), r, r, 0.0)) for t in range(1, 9)]
        res.append(max(0.0, max(a - b for a, b in zip(seq, seq[1:]))))
    return [_residual_check("pure.spin_monotonicity", 1e-12, res)]


def check_inversion(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "pure.inversion")
    res = []
    for _ in range(500):
        s1, s2 = Spin(int(rng.integers(1, 9))), Spin(int(rng.integers(1, 9)))
        r1, r2 = rng.uniform(0.05, 10.0, 2)
        a = concurrence_pure(EntangledParams(s1, s2, r1, r2, math.pi / 2))
        b = concurrence_pure(EntangledParams(s1, s2, 1 / r1, 1 / r2, math.pi / 2))
        res.append(abs(a - b))
    return [_residual_check("pure.inversion_symmetry", 1e-12, res)]


# -- mixed -------------------------------------------------------------------


def check_pure_reduction(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "mixed.pure_reduction")
    res = []
    for _ in range(1000):
        m = random_mixture(rng)
        m = RankTwoMixture(m.comp1, m.comp2, 1.0)
        res.append(abs(wootters_concurrence(density_matrix(m)) - concurrence_pure(m.comp1)))
    return [_residual_check("mixed.pure_reduction", 1e-10, res)]


def check_bounds(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "mixed.bounds")
    upper, order, lower = [], [], []
    for _ in range(10_000):
        m = random_mixture(rng)
        c = wootters_concurrence(density_matrix(m))
        b = bounds(m)
        upper.append(max(0.0, c - math.sqrt(b.upper)))
        order.append(max(0.0, b.lower - b.upper))
        lower.append(max(0.0, b.lower - c * c))
    violations = sum(x > 1e-9 for x in lower)
    return [
        _residual_check("mixed.upper_bound", 1e-9, upper),
        _residual_check("mixed.bounds_ordering", 0.0, order),
        _residual_check("mixed.lower_bound", 1e-9, lower, note=f"violations={violations}"),
    ]


def check_spectral(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "mixed.spectral")
    tr, rec = [], []
    for _ in range(1000):
        m = random_mixture(rng)
        rho = density_matrix(m)
        sp = spectral_rank2(rho)
        v1, v2 = sp.vec1.vector, sp.vec2.vector
        tr.append(abs(sp.mu1 + sp.mu2 - 1.0))
        rebuilt = sp.mu1 * np.outer(v1, v1.conj()) + sp.mu2 * np.outer(v2, v2.conj())
        rec.append(np.abs(rebuilt - rho).max())
    return [
        _residual_check("mixed.spectral_trace", 1e-12, tr),
        _residual_check("mixed.spectral_reconstruction", 1e-11, rec),
    ]


def bell_suite(seed: int, orthogonal: bool):
    """Bell-condition mixtures; ``orthogonal`` forces ``phi2 = phi1 + pi``."""
    rng = rng_for(seed, "mixed.bell_suite")
    for _ in range(300):
        t1, t2 = (int(x) for x in rng.integers(1, 9, 2))
        a1, a2, phi1 = rng.uniform(0.0, TWO_PI, 3)
        phi2 = phi1 + math.pi if orthogonal else float(rng.uniform(0.0, TWO_PI))
        yield bell_mixture(t1, t2, a1, a2, phi1, phi2, float(rng.uniform()))


def check_bell_mixtures(seed: int) -> list[CheckResult]:
    spectral, direct = [], []
    for orthogonal in (True, False):
        for m in bell_suite(seed, orthogonal):
            rho = density_matrix(m)
            w2 = wootters_concurrence(rho) ** 2
            sp = spectral_rank2(rho, components=[to_two_qubit(m.comp1), to_two_qubit(m.comp2)])
            spectral.append(abs(simplified_concurrence_sq(sp) - w2))
            direct.append(abs(simplified_concurrence_sq_direct(m) - w2))
    return [
        _residual_check("mixed.simplified_spectral_vs_wootters", 1e-8, spectral),
        _residual_check("mixed.simplified_direct_vs_wootters", 1e-8, direct),
    ]


def check_classification(seed: int) -> list[CheckResult]:
    res = []
    labels: dict[str, int] = {}
    for m in bell_suite(seed, orthogonal=True):
        case = classify_case(m)
        labels[str(case.label)] = labels.get(str(case.label), 0) + 1
        if case.label is CaseLabel.UNCLASSIFIED:
            continue
        res.append(abs(case.value - simplified_concurrence_sq_direct(m)))
    note = " ".join(f"{k}={v}" for k, v in sorted(labels.items()))
    return [_residual_check("mixed.case_value_orthogonal", 1e-10, res, note=note)]


def check_figure_families(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "mixed.figures")
    peak = []
    for two_j in range(1, 5):
        phi = float(rng.uniform(0.0, TWO_PI))
        cfg = ScanConfig(mode="mixed", j1=Spin(two_j), j2=Spin(two_j), phi=phi, phi2=phi, z1b=1.0, z2b=1.0)
        peak.append(1.0 - mixed_point(cfg, 1.0, 1.0)["concurrence"])
    # Coarser grid than the published preset keeps the suite fast.
    cfg = ScanConfig(mode="mixed", z1b=4.0, z2b=4.0, steps=41)
    best = max(mixed_point(cfg, a, b)["concurrence"] for a in cfg.grid() for b in cfg.grid())
    inside = 1e-3 < best < 1.0 - 1e-6
    return [
        _residual_check("mixed.fig3_peak", 1e-9, peak),
        CheckResult("mixed.fig4_interior", 41 * 41, best, 1e-6, inside, note=f"max_concurrence={best:.9g}"),
    ]


# -- oracle ------------------------------------------------------------------


def check_oracle_equivalence(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "oracle.draws")
    eq, rank = [], []
    for _ in range(10_000):
        p = random_params(rng)
        eq.append(abs(oracle_concurrence(p) - concurrence_pure(p)))
        if len(rank) < 2000 and min(p.j1.dim, p.j2.dim) > 2:
            sv = singular_values(coefficient_matrix(fock_state(p), p.j1.dim, p.j2.dim))
            rank.append(float(sv[2]))
    return [
        _residual_check("oracle.closed_form_equivalence", 1e-10, eq),
        _residual_check("oracle.schmidt_rank_two", 1e-10, rank),
    ]


def check_oracle_overlap(seed: int) -> list[CheckResult]:
    res = []
    for two_j in range(1, 17):
        s = Spin(two_j)
        for z in _label_grid():
            u = coherent_amplitudes(CoherentParam(s, z))
            w = coherent_amplitudes(CoherentParam(s, -z))
            res.append(abs(np.vdot(u, w) - overlap_minus(CoherentParam(s, z))))
    return [_residual_check("oracle.overlap_dot_product", 1e-12, res)]


def check_bell_entropy(seed: int) -> list[CheckResult]:
    rng = rng_for(seed, "oracle.entropy")
    res = []
    for _ in range(200):
        t1, t2 = (int(x) for x in rng.integers(1, 9, 2))
        a1, a2, phi = rng.uniform(0.0, TWO_PI, 3)
        p = EntangledParams(Spin(t1), Spin(t2), np.exp(1j * a1), np.exp(1j * a2), phi)
        rho = reduced_density(fock_state(p), p.j1.dim, p.j2.dim)
        res.append(abs(entropy_bits(rho) - 1.0))
    return [_residual_check("oracle.bell_entropy_one_bit", 1e-9, res)]


CHECKS: dict[str, list[Callable[[int], list[CheckResult]]]] = {
    "su2": [
        check_eigen_reconstruction, check_psd_sqrt, check_antihermitian_exp, check_tensor_associative,
        check_unit_norm, check_overlap_minus, check_overlap_symmetries, check_commutators, check_rotation,
    ],
    "pure": [
        check_pure_consistency, check_phase_invariance, check_boundary, check_bell_plateau,
        check_spin_monotonicity, check_inversion,
    ],
    "mixed": [
        check_pure_reduction, check_bounds, check_spectral, check_bell_mixtures,
        check_classification, check_figure_families,
    ],
    "oracle": [check_oracle_equivalence, check_oracle_overlap, check_bell_entropy],
}


def collect(suite: str, seed: int) -> list[CheckResult]:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in CHECKS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    out: list[CheckResult] = []
    for name in names:
        for check in CHECKS[name]:
            out.extend(check(seed))
    return out


def run_suite(suite: str, seed: int, stream=None) -> bool:
    """Print one line per invariant and return True when all pass."""
    stream = stream or sys.stdout
    results = []
    for r in collect(suite, seed):
        print(r.line(), file=stream, flush=True)
        results.append(r)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} invariants passed (suite={suite}, seed={seed})", file=stream)
    return failed == 0
