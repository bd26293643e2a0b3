"""Command line entry point: ``radius``, ``verify``, ``experiment``, ``generate``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import instance_io
from .bench import LARGE_CASE, ExperimentConfig, random_instance, run_experiment, sample_generators
from .errors import CauchyRadiusError
from .matrix import MatrixPoly, NormKind, Side, refine_matrix
from .oracle import spectral_max_modulus
from .scalar import ScalarPoly, refine_scalar
from .structure import Strategy
from .trace import BoundTrace

ORACLE_SLACK = 1e-8

_NORMS = {"1": NormKind.INDUCED_1, "inf": NormKind.INDUCED_INF}
_SIDES = {"left": Side.LEFT, "right": Side.RIGHT}
_STRATEGIES = {
    "selected": (Strategy.SELECTED,),
    "rs": (Strategy.RS,),
    "both": (Strategy.SELECTED, Strategy.RS),
}


def _add_bound_flags(p: argparse.ArgumentParser, default_strategy: str) -> None:
    p.add_argument("--levels", type=int, default=5, help="refinement levels (default 5)")
    p.add_argument("--norm", choices=sorted(_NORMS), default="1")
    p.add_argument("--side", choices=sorted(_SIDES), default="left")
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default=default_strategy)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchy-radius",
        description="Cauchy radii of scalar and matrix polynomials and their refinements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="print the Cauchy radius and the refined ladder")
    p.add_argument("file", type=Path)
    _add_bound_flags(p, "selected")

    p = sub.add_parser("verify", help="compare every level against the eigenvalue oracle")
    p.add_argument("file", type=Path)
    _add_bound_flags(p, "selected")

    p = sub.add_parser("experiment", help="random matrix-polynomial ratio study (CSV)")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--m", type=int, default=25)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", dest="ell", type=int, default=1)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--large", action="store_true",
                   help="run the n=4, m=250, k=l=1 case (oracle dimension 1000)")
    p.add_argument("--out", type=Path, help="CSV destination (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true",
                   help="fill mean_seconds (makes the output non-reproducible)")
    p.add_argument("--progress", action="store_true", help="report progress on stderr")
    _add_bound_flags(p, "both")

    p = sub.add_parser("generate", help="write a random monic instance file")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--m", type=int, default=25)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", dest="ell", type=int, default=1)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", type=Path, help="destination (default stdout)")
    return parser


def _fmt(x: float) -> str:
    return f"{x:.10f}"


def _traces(poly: MatrixPoly, args) -> dict[str, BoundTrace]:
    out = {}
    for strategy in _STRATEGIES[args.strategy]:
        if poly.dim == 1:
            trace = refine_scalar(ScalarPoly(poly.coeffs[:, 0, 0]), args.levels, strategy)
        else:
            trace = refine_matrix(poly, args.levels, _NORMS[args.norm], _SIDES[args.side], strategy)
        out[strategy.value] = trace
    return out


def _cmd_radius(args) -> int:
    poly = instance_io.load(args.file)
    traces = _traces(poly, args)
    first = next(iter(traces.values()))
    print(f"cauchy radius: {_fmt(first[0].radius)}")
    for name, trace in traces.items():
        for lv in trace.levels[1:]:
            print(f"level {lv.level} [{name} {lv.kind.value}]: {_fmt(lv.radius)}"
                  f"  degree {lv.degree}  leading zeros {lv.leading_zeros}")
    return 0


def _cmd_verify(args) -> int:
    poly = instance_io.load(args.file)
    lam = spectral_max_modulus(poly)
    traces = _traces(poly, args)
    print(f"oracle max |eigenvalue|: {_fmt(lam)}")
    failed = False
    for name, trace in traces.items():
        for lv in trace.levels:
            ok = lam <= lv.radius * (1.0 + ORACLE_SLACK)
            failed |= not ok
            kind = "cauchy" if lv.kind is None else f"{name} {lv.kind.value}"
            print(f"level {lv.level} [{kind}]: radius {_fmt(lv.radius)}  oracle {_fmt(lam)}  "
                  f"{'PASS' if ok else 'FAIL'}")
    return 1 if failed else 0


def _config(args, samples: int) -> ExperimentConfig:
    n, m, k, ell = args.n, args.m, args.k, args.ell
    if getattr(args, "large", False):
        n, m, k, ell = LARGE_CASE["n"], LARGE_CASE["m"], LARGE_CASE["k"], LARGE_CASE["ell"]
    return ExperimentConfig(
        n=n, m=m, k=k, ell=ell, samples=samples, seed=args.seed,
        levels=getattr(args, "levels", 0),
        norm=_NORMS[getattr(args, "norm", "1")],
        side=_SIDES[getattr(args, "side", "left")],
        strategies=_STRATEGIES[getattr(args, "strategy", "both")],
    )


def _cmd_experiment(args) -> int:
    cfg = _config(args, args.samples)
    progress = None
    if args.progress:
        def progress(done: int, total: int) -> None:
            print(f"\r{done}/{total}", end="" if done < total else "\n", file=sys.stderr)
    report = run_experiment(cfg, jobs=args.jobs, progress=progress)
    text = report.to_csv(timing=args.timing)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_generate(args) -> int:
    cfg = _config(args, 1)
    poly = random_instance(cfg, sample_generators(cfg)[0])
    if args.out:
        instance_io.dump(poly, args.out)
    else:
        print(instance_io.dumps(poly))
    return 0


_COMMANDS = {
    "radius": _cmd_radius,
    "verify": _cmd_verify,
    "experiment": _cmd_experiment,
    "generate": _cmd_generate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "levels", 0) < 0:
        parser.error("--levels must be >= 0")
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError, CauchyRadiusError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
