"""Grid scans over the coherent-state amplitudes, CSV and PGM output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import DegenerateState
from .mixed import (
    RankTwoMixture,
    bounds,
    classify_case,
    density_matrix,
    simplified_concurrence_sq_direct,
    wootters_concurrence,
)
from .pure import EntangledParams, concurrence_pure
from .su2 import Spin

PURE_COLUMNS = ("z1", "z2", "concurrence")
MIXED_COLUMNS = ("z1", "z2", "concurrence", "wootters", "simplified", "lower", "upper", "case_label")

# [0, 3] brackets the |Z| = 1 ridge and the decay on both sides of it.
DEFAULT_ZMIN = 0.0
DEFAULT_ZMAX = 3.0
DEFAULT_STEPS = 151

PRESETS: dict[str, dict] = {
    "fig1a": {"mode": "pure", "j1": 0.5, "j2": 0.5},
    "fig1b": {"mode": "pure", "j1": 1, "j2": 1},
    "fig1c": {"mode": "pure", "j1": 2, "j2": 2},
    "fig1d": {"mode": "pure", "j1": 4, "j2": 4},
    "fig2a": {"mode": "pure", "j1": 0.5, "j2": 1},
    "fig2b": {"mode": "pure", "j1": 0.5, "j2": 4},
    "fig2c": {"mode": "pure", "j1": 1, "j2": 4},
    "fig3": {"mode": "mixed", "z1b": 1.0, "z2b": 1.0, "p1": 0.5},
    "fig4": {"mode": "mixed", "z1b": 4.0, "z2b": 4.0, "p1": 0.5},
}


def fmt(x: float) -> str:
    return f"{x:.9g}"


@dataclass(frozen=True)
class ScanConfig:
    mode: str = "pure"
    j1: Spin = Spin(1)
    j2: Spin = Spin(1)
    phi: float = 0.0
    phi2: float = 0.0
    p1: float = 0.5
    zmin: float = DEFAULT_ZMIN
    zmax: float = DEFAULT_ZMAX
    steps: int = DEFAULT_STEPS
    z1b: complex = 1.0
    z2b: complex = 1.0

    def __post_init__(self):
        if self.mode not in ("pure", "mixed"):
            raise ValueError(f"mode must be 'pure' or 'mixed', got {self.mode!r}")
        if not (math.isfinite(self.zmin) and math.isfinite(self.zmax)):
            raise ValueError("zmin and zmax must be finite")
        if self.zmin < 0 or self.zmax <= self.zmin:
            raise ValueError(f"need 0 <= zmin < zmax, got [{self.zmin}, {self.zmax}]")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1}")

    @property
    def columns(self) -> tuple[str, ...]:
        return PURE_COLUMNS if self.mode == "pure" else MIXED_COLUMNS

    def grid(self) -> list[float]:
        span = self.zmax - self.zmin
        n = self.steps - 1
        return [self.zmin + span * i / n for i in range(self.steps)]

    def second_component(self) -> EntangledParams:
        return EntangledParams(self.j1, self.j2, self.z1b, self.z2b, self.phi2)


def pure_point(cfg: ScanConfig, z1: complex, z2: complex) -> float:
    return concurrence_pure(EntangledParams(cfg.j1, cfg.j2, z1, z2, cfg.phi))


def mixed_point(cfg: ScanConfig, z1: complex, z2: complex, comp2: EntangledParams | None = None) -> dict:
    """All mixed-mode quantities at one grid point (squared values except ``concurrence``)."""
    comp1 = EntangledParams(cfg.j1, cfg.j2, z1, z2, cfg.phi)
    m = RankTwoMixture(comp1, comp2 or cfg.second_component(), cfg.p1)
    c = wootters_concurrence(density_matrix(m))
    bnd = bounds(m)
    return {
        "concurrence": c,
        "wootters": c * c,
        "simplified": simplified_concurrence_sq_direct(m),
        "lower": bnd.lower,
        "upper": bnd.upper,
        "case_label": str(classify_case(m).label),
    }


def scan_rows(cfg: ScanConfig) -> Iterator[tuple[float, float, dict | None]]:
    """Yield ``(z1, z2, values)`` in row-major order; ``values`` is None when degenerate."""
    grid = cfg.grid()
    comp2 = cfg.second_component() if cfg.mode == "mixed" else None
    for z1 in grid:
        for z2 in grid:
            try:
                if cfg.mode == "pure":
                    values = {"concurrence": pure_point(cfg, z1, z2)}
                else:
                    values = mixed_point(cfg, z1, z2, comp2)
            except DegenerateState:
                values = None
            yield z1, z2, values


def write_csv(cfg: ScanConfig, stream) -> int:
    """Write the scan as CSV and return the number of degenerate points."""
    cols = cfg.columns
    stream.write(",".join(cols) + "\n")
    degenerate = 0
    for z1, z2, values in scan_rows(cfg):
        cells = [fmt(z1), fmt(z2)]
        if values is None:
            degenerate += 1
            cells += [""] * (len(cols) - 2)
        else:
            for col in cols[2:]:
                v = values[col]
                cells.append(v if isinstance(v, str) else fmt(v))
        stream.write(",".join(cells) + "\n")
    return degenerate


def scan_csv(cfg: ScanConfig) -> tuple[str, int]:
    buf = io.StringIO()
    n = write_csv(cfg, buf)
    return buf.getvalue(), n


class MalformedCSV(ValueError):
    pass


def read_concurrence_grid(text: str) -> list[list[float]]:
    """Parse scan output back into a square grid indexed ``[z1_index][z2_index]``.

    Empty concurrence cells (degenerate points) become 0.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedCSV("empty file") from None
    try:
        i1, i2, ic = header.index("z1"), header.index("z2"), header.index("concurrence")
    except ValueError:
        raise MalformedCSV("header must contain z1, z2 and concurrence") from None
    rows = [r for r in reader if r]
    steps = math.isqrt(len(rows))
    if steps < 1 or steps * steps != len(rows):
        raise MalformedCSV(f"{len(rows)} data rows do not form a square grid")
    grid: list[list[float]] = []
    z1_prev = None
    for n, row in enumerate(rows):
        try:
            z1, z2 = float(row[i1]), float(row[i2])
            cell = row[ic].strip()
            value = float(cell) if cell else 0.0
        except (IndexError, ValueError):
            raise MalformedCSV(f"bad data row {n + 2}: {row!r}") from None
        if not (0.0 <= value <= 1.0):
            raise MalformedCSV(f"concurrence {value} outside [0, 1] on row {n + 2}")
        if n % steps == 0:
            if z1_prev is not None and z1 <= z1_prev:
                raise MalformedCSV("rows are not ordered by z1")
            z1_prev = z1
            grid.append([])
        elif z1 != z1_prev:
            raise MalformedCSV(f"z1 changes inside a block on row {n + 2}")
        grid[-1].append(value)
    return grid


def pixel(value: float) -> int:
    return int(math.floor(255.0 * value + 0.5))


def heatmap_pgm(grid: list[list[float]]) -> bytes:
    """Binary PGM, one pixel per grid point, z2 along x and z1 down the rows."""
    h = len(grid)
    w = len(grid[0]) if grid else 0
    body = bytes(pixel(v) for row in grid for v in row)
    return f"P5\n{w} {h}\n255\n".encode("ascii") + body
