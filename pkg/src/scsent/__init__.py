"""Entanglement of superposed spin coherent states.

Closed forms for the concurrence of ``N(|Z1>|-Z2> + e^{i phi}|-Z1>|Z2>)``,
rank-two mixtures of such states, a brute-force oracle in the full
spin space and grid-scan tooling.
"""

__version__ = "0.1.0"

from .errors import DegenerateState, NotDensityMatrix, RankExceeded, ScsError
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
from .oracle import oracle_concurrence
from .pure import EntangledParams, concurrence_pure, to_two_qubit
from .su2 import CoherentParam, Spin, coherent_amplitudes, overlap, overlap_minus

__all__ = [
    "CaseLabel", "CoherentParam", "DegenerateState", "EntangledParams", "NotDensityMatrix",
    "RankExceeded", "RankTwoMixture", "ScsError", "Spin", "bounds", "classify_case",
    "coherent_amplitudes", "concurrence_pure", "density_matrix", "oracle_concurrence",
    "overlap", "overlap_minus", "simplified_concurrence_sq", "simplified_concurrence_sq_direct",
    "spectral_rank2", "to_two_qubit", "wootters_concurrence",
]
