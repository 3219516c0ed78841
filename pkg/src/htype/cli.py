"""Command-line front end.

Subcommands: spectrum, minpoly, verify, table.  Output is JSON (default),
CSV or plain text; JSON is emitted with sorted keys so identical
arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import minpoly as mp
from . import verify
from .errors import (ClusterAmbiguity, DegenerateDirection, DimensionError, ModelSpecError,
                     NoTermination)
from .geometry import HTypeAlgebra
from .spectral import TAU_CLUSTER, is_admissible, spectrum

SCHEMA = "htype/1"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_AMBIGUITY = 3
EXIT_DEGENERATE = 4
EXIT_NO_TERMINATION = 5


@dataclass(frozen=True)
class RunConfig:
    model: Optional[str]
    seed: int
    samples: Optional[int]
    tol_rank: float
    tol_cluster: float
    fd_step: Optional[float]
    fmt: str
    exact: bool

    def validate(self) -> None:
        for name in ("tol_rank", "tol_cluster", "fd_step"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ModelSpecError(f"--{name.replace('_', '-')} must be positive")
        if self.samples is not None and self.samples < 1:
            raise ModelSpecError("--samples must be >= 1")
        if self.seed < 0:
            raise ModelSpecError("--seed must be non-negative")

    def algebra(self) -> HTypeAlgebra:
        if self.model is None:
            raise ModelSpecError("--model is required")
        return HTypeAlgebra.from_spec(self.model)


def _decimal(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return format(float(x), ".17g")


def parse_vector(text: str, size: int) -> np.ndarray:
    """Comma-separated entries; each may be a fraction such as 7/5."""
    try:
        entries = [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelSpecError(f"cannot parse vector {text!r}: {exc}") from None
    if len(entries) != size:
        raise ModelSpecError(f"expected {size} entries, got {len(entries)}")
    return np.array([float(e) for e in entries])


# ---------------------------------------------------------------- commands

def cmd_spectrum(cfg: RunConfig) -> tuple[dict, list, int]:
    A = cfg.algebra()
    samples = cfg.samples or 10
    reports = []
    for rng in verify.sample_rngs(cfg.seed, samples):
        X = A.random_vector(rng, unit_parts=True)
        try:
            reports.append(spectrum(A, X, cfg.tol_cluster))
        except ClusterAmbiguity:
            continue
    if not reports:
        raise ClusterAmbiguity(f"all {samples} samples fell inside the ambiguity band")
    clean = [r for r in reports if is_admissible(r)]
    first = (clean or reports)[0]
    rows = [{"value": _decimal(val), "multiplicity": m} for val, m in first.nonconstant]
    payload = {"n": A.n, "d": A.d, "m0": first.m0, "has_unit": first.has_unit,
               "branches": rows, "samples_used": len(reports)}
    return payload, rows, EXIT_OK


def cmd_minpoly(cfg: RunConfig, x_text: Optional[str] = None) -> tuple[dict, list, int]:
    A = cfg.algebra()
    if x_text is None:
        X, _ = mp.admissible_point(A, verify.sample_rngs(cfg.seed, 1)[0])
    else:
        X = parse_vector(x_text, A.m)
    result = mp.blueprint_minpoly(A, X, tau_rank=cfg.tol_rank)
    poly = mp.rationalize_poly(result.poly) if cfg.exact else result.poly
    try:
        predicted = mp.predicted_minpoly(A, X)
        predicted_degree = predicted.degree
        reldiff = (verify.coefficient_reldiff(result.poly.to_float(), predicted.to_float())
                   if predicted.degree == result.degree else float("inf"))
    except ClusterAmbiguity:
        predicted_degree, reldiff = None, None
    coeffs = [_decimal(c) for c in poly.ascending()]
    payload = {"degree": result.degree, "coefficients": coeffs, "residual": result.residual,
               "predicted_degree": predicted_degree, "max_coeff_reldiff": reldiff,
               "x": [_decimal(c) for c in X]}
    rows = [{"power": i, "coefficient": c} for i, c in enumerate(coeffs)]
    return payload, rows, EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> tuple[dict, list, int]:
    A = cfg.algebra() if cfg.model is not None else None
    if suite == "all":
        needs_model = {"clifford", "curvature", "c0", "spectrum", "positivity"}
        names = [s for s in verify.SUITES if A is not None or s not in needs_model]
    elif suite in verify.SUITES:
        names = [suite]
    else:
        raise ModelSpecError(f"unknown suite {suite!r}")
    checks = []
    for name in names:
        try:
            found = verify.run_suite(name, A, cfg.samples, cfg.seed, cfg.exact, cfg.fd_step)
        except ValueError as exc:
            raise ModelSpecError(str(exc)) from None
        checks.extend((name, c) for c in found)
    rows = [{"suite": name, **c.to_dict()} for name, c in checks]
    passed = all(c.passed for _, c in checks)
    payload = {"suite": suite, "model": cfg.model, "passed": passed, "checks": rows,
               "failed": [row["name"] for row in rows if not row["passed"]]}
    return payload, rows, EXIT_OK if passed else EXIT_FAILURE


def cmd_table(cfg: RunConfig, extended: bool = False) -> tuple[dict, list, int]:
    table = verify.degree_table(seed=cfg.seed, samples=cfg.samples or 3, extended=extended)
    rows = [{"model": r.model, "n": r.n, "ell": r.ell, "zero_sharp": r.zero_sharp,
             "unit": r.unit, "word": r.word, "degree": r.degree,
             "blueprint_degree": r.blueprint_degree, "matches": r.matches} for r in table]
    passed = all(r.matches for r in table)
    return {"rows": rows, "passed": passed}, rows, EXIT_OK if passed else EXIT_FAILURE


# ---------------------------------------------------------------- output

def render(payload: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if not rows:
            rows = [{k: v for k, v in sorted(payload.items()) if not isinstance(v, list)}]
        if rows[0]:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    lines = [f"{key}: {value}" for key, value in sorted(payload.items()) if not isinstance(value, list)]
    for row in rows:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="module spec, e.g. irr(7) or sum(irr(3,+),irr(3,-))")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int)
    common.add_argument("--exact", action="store_true")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--tol-rank", type=float, default=mp.TAU_RANK)
    common.add_argument("--tol-cluster", type=float, default=TAU_CLUSTER)
    common.add_argument("--fd-step", type=float)
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="htype", description="H-type group spectra and minimal polynomials")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="clustered spectrum of -K_check^2")
    p = sub.add_parser("minpoly", parents=[common], help="minimal polynomial at a point")
    p.add_argument("--x", help="comma-separated vector of length n + d; fractions allowed")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all", choices=verify.SUITES + ("all",))
    p = sub.add_parser("table", parents=[common], help="degree table")
    p.add_argument("--extended", action="store_true", help="include n = 10, 11")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    cfg = RunConfig(args.model, args.seed, args.samples, args.tol_rank, args.tol_cluster,
                    args.fd_step, args.fmt, args.exact)
    try:
        cfg.validate()
        if args.command == "spectrum":
            payload, rows, code = cmd_spectrum(cfg)
        elif args.command == "minpoly":
            payload, rows, code = cmd_minpoly(cfg, args.x)
        elif args.command == "verify":
            payload, rows, code = cmd_verify(cfg, args.suite)
        else:
            payload, rows, code = cmd_table(cfg, args.extended)
    except (ModelSpecError, DimensionError) as exc:
        return _fail(EXIT_PARSE, exc)
    except ClusterAmbiguity as exc:
        return _fail(EXIT_AMBIGUITY, exc)
    except DegenerateDirection as exc:
        return _fail(EXIT_DEGENERATE, exc)
    except NoTermination as exc:
        return _fail(EXIT_NO_TERMINATION, exc)
    text = render(payload, rows, cfg.fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _fail(code: int, exc: Exception) -> int:
    print(f"htype: error: {exc}", file=sys.stderr)
    return code

