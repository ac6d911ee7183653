"""Command-line front end: ``point``, ``scan``, ``heatmap`` and ``verify``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import DegenerateState
from .mixed import (
    RankTwoMixture,
    bounds,
    classify_case,
    density_matrix,
    mixture_quantities,
    simplified_concurrence_sq,
    simplified_concurrence_sq_direct,
    spectral_rank2,
    wootters_lambdas,
)
from .oracle import oracle_concurrence
from .pure import EntangledParams, concurrence_pure, embedding, is_bell, to_two_qubit
from .scan import PRESETS, MalformedCSV, ScanConfig, heatmap_pgm, read_concurrence_grid, write_csv
from .su2 import Spin

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

DEFAULTS = {
    "mode": "pure", "j1": Spin(1), "j2": Spin(1), "z1": 1.0 + 0j, "z2": 1.0 + 0j,
    "phi": 0.0, "phi2": 0.0, "p1": 0.5, "z1b": 1.0 + 0j, "z2b": 1.0 + 0j,
    "zmin": 0.0, "zmax": 3.0, "steps": 151,
}


def parse_spin(text: str) -> Spin:
    try:
        return Spin.from_value(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a non-negative multiple of 1/2: {text!r}") from None


def parse_complex(text: str) -> complex:
    """Accept ``re``, ``re+imi``, ``re-imi`` or ``imi`` (``j`` also works)."""
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        z = complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"complex value must be finite: {text!r}")
    return z


def parse_real(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"value must be finite: {text!r}")
    return x


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("pure", "mixed"))
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--j1", type=parse_spin)
    p.add_argument("--j2", type=parse_spin)
    p.add_argument("--phi", type=parse_real, help="relative phase of the (first) component")
    p.add_argument("--phi2", type=parse_real, help="relative phase of the second component")
    p.add_argument("--p1", type=parse_real, help="weight of the first component")
    p.add_argument("--z1b", type=parse_complex, help="Z1 of the second component")
    p.add_argument("--z2b", type=parse_complex, help="Z2 of the second component")
    p.add_argument("--out", type=Path)
    p.add_argument("--seed", type=int, default=0, help="accepted for symmetry; results are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scsent", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate every quantity at one parameter point (JSON)")
    _add_state_flags(point)
    point.add_argument("--z1", type=parse_complex)
    point.add_argument("--z2", type=parse_complex)

    scan = sub.add_parser("scan", help="grid scan over real Z1, Z2 (CSV)")
    _add_state_flags(scan)
    scan.add_argument("--zmin", type=parse_real)
    scan.add_argument("--zmax", type=parse_real)
    scan.add_argument("--steps", type=int)

    heat = sub.add_parser("heatmap", help="render a scan CSV as a binary PGM")
    heat.add_argument("csv", type=Path)
    heat.add_argument("--out", type=Path, required=True)

    ver = sub.add_parser("verify", help="run the invariant suites")
    ver.add_argument("--suite", choices=("su2", "pure", "mixed", "oracle", "all"), default="all")
    ver.add_argument("--seed", type=int, default=0)
    return parser


def resolve(args: argparse.Namespace, keys) -> dict:
    """Explicit flags win over the preset, which wins over the defaults."""
    preset = PRESETS.get(getattr(args, "preset", None) or "", {})
    out = {}
    for k in keys:
        v = getattr(args, k, None)
        if v is None and k in preset:
            v = preset[k]
            if k in ("j1", "j2"):
                v = Spin.from_value(v)
            elif k in ("z1b", "z2b"):
                v = complex(v)
        out[k] = DEFAULTS[k] if v is None else v
    return out


def _c(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _num(x: float):
    return None if math.isnan(x) else x


def _pure_block(p: EntangledParams) -> dict:
    e = embedding(p)
    s = to_two_qubit(p)
    return {
        "j1": p.j1.j, "j2": p.j2.j, "z1": _c(p.z1), "z2": _c(p.z2), "phi": p.phi,
        "P1": e.p1, "P2": e.p2, "N": e.norm, "N1": e.n1, "N2": e.n2,
        "amplitudes": {"00": _c(s.a), "01": _c(s.b), "10": _c(s.c), "11": _c(s.d)},
        "concurrence": concurrence_pure(p),
        "oracle_concurrence": oracle_concurrence(p),
        "is_bell": is_bell(p),
    }


def point_document(opts: dict) -> dict:
    comp1 = EntangledParams(opts["j1"], opts["j2"], opts["z1"], opts["z2"], opts["phi"])
    if opts["mode"] == "pure":
        return {"mode": "pure", **_pure_block(comp1)}
    comp2 = EntangledParams(opts["j1"], opts["j2"], opts["z1b"], opts["z2b"], opts["phi2"])
    m = RankTwoMixture(comp1, comp2, opts["p1"])
    rho = density_matrix(m)
    lam = wootters_lambdas(rho)
    c = min(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0), 1.0)
    sp = spectral_rank2(rho, components=[to_two_qubit(comp1), to_two_qubit(comp2)])
    q = mixture_quantities(m)
    bnd = bounds(m)
    case = classify_case(m)
    return {
        "mode": "mixed",
        "p1": m.p1,
        "p2": m.p2,
        "components": [_pure_block(comp1), _pure_block(comp2)],
        "concurrence": c,
        "wootters_lambdas": [float(x) for x in lam],
        "concurrence_sq_wootters": c * c,
        "concurrence_sq_spectral": simplified_concurrence_sq(sp),
        "concurrence_sq_direct": simplified_concurrence_sq_direct(m),
        "eigenvalues": [sp.mu1, sp.mu2],
        "C1": q.C1, "C2": q.C2,
        "c1": _c(q.c1), "c2": _c(q.c2), "cplus": _c(q.cplus), "cminus": _c(q.cminus),
        "component_overlap": _c(q.overlap),
        "bounds": {"lower": bnd.lower, "upper": bnd.upper},
        "case": {"label": str(case.label), "value": _num(case.value)},
    }


def _emit(text: str | bytes, out: Path | None) -> None:
    if out is None:
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)
    elif isinstance(text, bytes):
        out.write_bytes(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def cmd_point(args, parser) -> int:
    opts = resolve(args, ("mode", "j1", "j2", "z1", "z2", "phi", "phi2", "p1", "z1b", "z2b"))
    if not 0.0 <= opts["p1"] <= 1.0:
        parser.error("--p1 must lie in [0, 1]")
    try:
        doc = point_document(opts)
    except DegenerateState as exc:
        print(f"degenerate state: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_scan(args, parser) -> int:
    opts = resolve(args, ("mode", "j1", "j2", "phi", "phi2", "p1", "z1b", "z2b", "zmin", "zmax", "steps"))
    try:
        cfg = ScanConfig(**opts)
    except ValueError as exc:
        parser.error(str(exc))
    if cfg.mode == "mixed":
        try:
            cfg.second_component()
        except DegenerateState as exc:
            parser.error(f"second component is degenerate: {exc}")
    if args.out is None:
        n = write_csv(cfg, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            n = write_csv(cfg, fh)
    if n:
        print(f"{n} degenerate grid points left empty", file=sys.stderr)
    return 0


def cmd_heatmap(args, parser) -> int:
    try:
        grid = read_concurrence_grid(args.csv.read_text(encoding="utf-8"))
    except OSError as exc:
        parser.error(f"cannot read {args.csv}: {exc}")
    except MalformedCSV as exc:
        parser.error(f"malformed CSV: {exc}")
    _emit(heatmap_pgm(grid), args.out)
    return 0


def cmd_verify(args, parser) -> int:
    from .verify import run_suite

    ok = run_suite(args.suite, args.seed, stream=sys.stdout)
    return 0 if ok else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    handler = {"point": cmd_point, "scan": cmd_scan, "heatmap": cmd_heatmap, "verify": cmd_verify}[args.command]
    return handler(args, sub)


if __name__ == "__main__":
    sys.exit(main())
