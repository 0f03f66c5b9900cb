"""Command line front end.

    interlace-majorize check INSTANCE
    interlace-majorize decompose INSTANCE --direction qp
    interlace-majorize track INSTANCE --grid 1024 --csv traj.csv
    interlace-majorize campaign --theorem ncm --trials 1000 --seed 7

INSTANCE is a JSON file (or ``-`` for stdin) with ``lambda`` and ``mu``
arrays of integers or ``"num/den"`` strings.  Reports are canonical JSON
(sorted keys, newline-terminated) on stdout or ``--json PATH``.

Exit codes: 0 analysis complete, 1 campaign found counterexamples,
2 input or flag error, 3 structural precondition failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    DegenerateEmpty,
    GridTooSmall,
    MajorizeError,
    NoCommonInterlacer,
    NonSimpleRoots,
    SharedRoots,
    SpecInfeasible,
    SpecInvalid,
    TrialsOutOfRange,
)
from .harness import GenSpec, campaign_ncm, campaign_nscm, neighborhood_sweep, search_diffmaj
from .homotopy import DEFAULT_GRID, track
from .interlace import PolyPair, common_interlacer_check, reduce_shared
from .majorize import majorizes
from .poly import DEFAULT_TOL, Interval, format_rational
from .residue import (
    Certificate,
    Direction,
    ResidueReport,
    decompose,
    necessary_condition,
    strong_majorization_certificate,
)

EXIT_OK, EXIT_FOUND, EXIT_INPUT, EXIT_STRUCTURE = 0, 1, 2, 3

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_rational_entry(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{value!r}: use an integer or a 'num/den' string, not a float")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        text = value.replace(" ", "")
        if "/" in text:
            num, den = (int(x) for x in text.split("/"))
            if den == 0:
                raise ParseError(f"{value!r}: zero denominator")
            if math.gcd(num, den) != 1:
                raise ParseError(f"{value!r}: rational not in lowest terms")
            return Fraction(num, den)
        return Fraction(int(text))
    raise ParseError(f"{value!r} is not an exact rational")


def parse_instance(text: str) -> tuple[PolyPair, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "lambda" not in doc or "mu" not in doc:
        raise ParseError("instance needs 'lambda' and 'mu' arrays")
    lam, mu = doc["lambda"], doc["mu"]
    if not isinstance(lam, list) or not isinstance(mu, list):
        raise ParseError("'lambda' and 'mu' must be arrays")
    if not lam or len(lam) != len(mu):
        raise ParseError(f"'lambda' and 'mu' need equal nonzero length, got {len(lam)} and {len(mu)}")
    pair = PolyPair.from_roots([parse_rational_entry(x) for x in lam],
                               [parse_rational_entry(x) for x in mu])
    echo = {"lambda": _strs(pair.lam), "mu": _strs(pair.mu)}
    if "name" in doc:
        echo["name"] = doc["name"]
    return pair, echo


def parse_tol(text: str) -> Fraction:
    m = re.fullmatch(r"\s*2\^(-?\d+)\s*", text)
    if m:
        return Fraction(2) ** int(m.group(1))
    try:
        tol = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from None
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _strs(xs) -> list[str]:
    return [format_rational(x) for x in xs]


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, UTF-8, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def residue_json(rep: ResidueReport) -> dict:
    return {
        "direction": rep.direction.value,
        "residues": _strs(rep.residues),
        "partial_sums": _strs(rep.partial_sums),
        "total": format_rational(rep.total),
        "sums_equal": rep.sums_equal,
        "positions": list(rep.positions),
    }


def certificate_json(cert: Certificate) -> dict:
    return {
        "kind": cert.kind.value,
        "witness_k": cert.witness_k,
        "value": None if cert.witness_value is None else format_rational(cert.witness_value),
        "boundary": cert.boundary,
        "detail": residue_json(cert.detail),
    }


def interval_json(iv: Interval) -> list[str]:
    return [format_rational(iv.lo), format_rational(iv.hi)]


def _emit(report: dict, path: str | None) -> None:
    text = dumps(report)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _certify(fn, pair) -> dict:
    try:
        return certificate_json(fn(pair))
    except (NoCommonInterlacer, DegenerateEmpty, SharedRoots, NonSimpleRoots) as exc:
        return {"error": type(exc).__name__, "message": str(exc)}


def cmd_check(pair: PolyPair, echo: dict) -> tuple[dict, int]:
    inter = common_interlacer_check(pair)
    maj = majorizes(pair.lam, pair.mu)
    try:
        red = reduce_shared(pair)
        reduction = {"kept_positions": list(red.kept), "removed": _strs(red.removed)}
    except DegenerateEmpty:
        reduction = {"kept_positions": [], "removed": _strs(pair.lam)}
    report = {
        "command": "check",
        "input": echo,
        "reduction": reduction,
        "interlace": {
            "has_common_interlacer": inter.has_common_interlacer,
            "first_crossing": list(inter.first_crossing) if inter.first_crossing else None,
            "properly_interlacing": inter.properly_interlacing,
            "pair_intervals": [interval_json(iv) for iv in inter.pair_intervals],
        },
        "majorization": {
            "holds": maj.holds,
            "partial_sum_gaps": _strs(maj.partial_sum_gaps),
            "first_violation": maj.first_violation,
            "sums_equal": maj.sums_equal,
        },
        "ncm": _certify(necessary_condition, pair),
        "nscm": _certify(strong_majorization_certificate, pair),
    }
    return report, EXIT_OK


def cmd_decompose(pair: PolyPair, echo: dict, direction: str) -> tuple[dict, int]:
    report = {"command": "decompose", "input": echo, "notice": None}
    try:
        red = reduce_shared(pair)
    except DegenerateEmpty as exc:
        report["error"] = {"error": "DegenerateEmpty", "message": str(exc)}
        return report, EXIT_STRUCTURE
    if red.removed:
        report["notice"] = f"removed shared roots {_strs(red.removed)} before decomposing"
        print(f"notice: {report['notice']}", file=sys.stderr)
    try:
        rep = decompose(red.pair, Direction(direction))
    except (SharedRoots, NonSimpleRoots) as exc:
        report["error"] = {"error": type(exc).__name__, "message": str(exc)}
        return report, EXIT_STRUCTURE
    report["decomposition"] = residue_json(rep)
    report["decomposition"]["positions"] = list(red.kept)
    return report, EXIT_OK


def decimal_string(x: Fraction, digits: int) -> str:
    """Round-half-up fixed-point rendering of an exact rational."""
    scaled = x * 10**digits
    q = math.floor(scaled + Fraction(1, 2))
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def digits_for(tol: Fraction) -> int:
    return max(1, math.ceil(-math.log10(tol)) + 1) if tol < 1 else 1


def cmd_track(pair: PolyPair, echo: dict, grid: int, tol: Fraction,
              csv_path: str | None, all_points: bool = False) -> tuple[dict, int]:
    report = {"command": "track", "input": echo}
    try:
        bundle = track(pair, grid, tol)
    except NoCommonInterlacer as exc:
        report["error"] = {"error": "NoCommonInterlacer", "message": str(exc)}
        return report, EXIT_STRUCTURE
    n = bundle.n
    digits = digits_for(tol)
    base = set(Fraction(g, grid - 1) for g in range(grid))
    if csv_path:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t"] + [f"lambda_{i}" for i in range(1, n + 1)]
                       + [f"S_{k}" for k in range(1, n + 1)])
            for t, row, lo, hi in zip(bundle.t_grid, bundle.roots_at, bundle.S_lo, bundle.S_hi):
                if not all_points and t not in base:
                    continue
                w.writerow([decimal_string(t, digits)]
                           + [decimal_string(iv.mid, digits) for iv in row]
                           + [decimal_string((a + b) / 2, digits) for a, b in zip(lo, hi)])
    report.update({
        "grid": grid,
        "tol": format_rational(tol),
        "csv": csv_path,
        "csv_digits": digits,
        "root_error_bound": format_rational(tol / 2),
        "partial_sum_error_bound": format_rational(n * tol / 2),
        "points_sampled": len(bundle.t_grid),
        "refined_points": bundle.refined_points,
        "sn_constant": bundle.sn_constant,
        "monotone_verdicts": [
            {
                "k": v.k,
                "verdict": v.kind.value,
                "violated_at": None if v.violated_at is None else _strs(v.violated_at),
                "violation_steps": len(v.violations),
                "last_violation": None if not v.violations else _strs(v.violations[-1]),
            }
            for v in bundle.monotone_verdicts
        ],
    })
    return report, EXIT_OK


def cmd_campaign(args) -> tuple[dict, int]:
    spec = GenSpec(degree=args.degree, max_degree=args.max_degree, seed=args.seed,
                   equalize_sums=not args.no_equalize, construction=args.construction)
    if args.theorem == "ncm":
        rep = campaign_ncm(spec, args.trials, workers=args.workers)
    elif args.theorem == "nscm":
        rep = campaign_nscm(spec, args.trials, grid_size=args.grid, tol=args.tol,
                            workers=args.workers)
    else:
        rep = search_diffmaj(spec, args.trials, workers=args.workers)
    report = {"command": "campaign", **rep.to_dict(include_runtime=not args.no_runtime)}
    if args.theorem == "diffmaj" and args.neighborhood is not None:
        from .harness import generate_diffmaj_pair, trial_rng
        pair, _ = generate_diffmaj_pair(spec, trial_rng(spec.seed, 0))
        sweep = neighborhood_sweep(pair, args.neighborhood, args.neighborhood_samples, spec.seed)
        report["neighborhood"] = {
            "center": {"lambda": _strs(pair.lam), "mu": _strs(pair.mu)},
            "radius": format_rational(args.neighborhood),
            "samples": sweep,
            "not_strong": sum(1 for s in sweep if s["certificate"] == "NotStrongMajorization"),
        }
    return report, (EXIT_OK if rep.ok else EXIT_FOUND)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="interlace-majorize",
                 description="Majorization certificates for real-rooted polynomials with a common interlacer")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", help="instance JSON path, or - for stdin")
        sp.add_argument("--json", dest="json_path", help="write report here instead of stdout")
        return sp

    instance_cmd("check", "interlacing, majorization and both residue certificates")
    dp = instance_cmd("decompose", "exact residues and partial sums")
    dp.add_argument("--direction", choices=["pq", "qp"], default="pq")
    tp = instance_cmd("track", "track roots of t*p+(1-t)*q and check monotonicity of S_k")
    tp.add_argument("--grid", type=int, default=DEFAULT_GRID)
    tp.add_argument("--tol", type=parse_tol, default=DEFAULT_TOL, help="e.g. 2^-60 or 1/1000")
    tp.add_argument("--csv", dest="csv_path")
    tp.add_argument("--all-points", action="store_true", help="also write refinement points to the CSV")

    cp = sub.add_parser("campaign", help="randomized theorem checks")
    cp.add_argument("--theorem", choices=["ncm", "nscm", "diffmaj"], required=True)
    cp.add_argument("--trials", type=int, default=100)
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--degree", type=int, default=4)
    cp.add_argument("--max-degree", type=int, default=None)
    cp.add_argument("--construction", choices=["uniform", "majorizing"], default="uniform")
    cp.add_argument("--no-equalize", action="store_true", help="keep unequal root sums")
    cp.add_argument("--grid", type=int, default=DEFAULT_GRID)
    cp.add_argument("--tol", type=parse_tol, default=DEFAULT_TOL)
    cp.add_argument("--workers", type=int, default=None)
    cp.add_argument("--neighborhood", type=parse_tol, default=None,
                    help="diffmaj only: also sweep random perturbations of this radius (exploratory)")
    cp.add_argument("--neighborhood-samples", type=int, default=50)
    cp.add_argument("--no-runtime", action="store_true", help="omit runtime for byte-stable output")
    cp.add_argument("--json", dest="json_path")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "campaign":
            if args.trials < 1:
                raise TrialsOutOfRange("--trials must be at least 1")
            report, code = cmd_campaign(args)
        else:
            pair, echo = parse_instance(_read_input(args.instance))
            if args.command == "check":
                report, code = cmd_check(pair, echo)
            elif args.command == "decompose":
                report, code = cmd_decompose(pair, echo, args.direction)
            else:
                if args.grid < 2:
                    raise GridTooSmall("--grid must be at least 2")
                report, code = cmd_track(pair, echo, args.grid, args.tol, args.csv_path,
                                         args.all_points)
    except (ParseError, OSError, TrialsOutOfRange, GridTooSmall, SpecInvalid, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpecInfeasible, MajorizeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    _emit(report, args.json_path)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
