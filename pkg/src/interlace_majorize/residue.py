"""Partial fraction residues of p/q and q/p, and the certificates built on them.

For roots mu of q, ``p/q = 1 + sum_i delta_i / (x - mu_i)`` with
``delta_i = p(mu_i) / q'(mu_i)``.  Reading off the 1/x coefficient gives
``sum(delta) = sum(mu) - sum(lam)``.

* ``necessary_condition`` refutes ``p >= q`` when some prefix sum of
  ``p(mu_i)/q'(mu_i)`` with k < n is not strictly negative.
* ``strong_majorization_certificate`` decides strong majorization exactly:
  it holds iff every prefix sum of ``q(lam_i)/p'(lam_i)`` with k < n is
  nonnegative and the root sums agree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .errors import NoCommonInterlacer
from .interlace import (
    PolyPair,
    _require_distinct_simple,
    common_interlacer_check,
    reduce_shared,
    residues_at,
)


class Direction(enum.Enum):
    P_OVER_Q = "pq"
    Q_OVER_P = "qp"


class CertificateKind(enum.Enum):
    NECESSARY_CONDITION_PASSED = "NecessaryConditionPassed"
    NECESSARY_CONDITION_FAILED = "NecessaryConditionFailed"
    STRONG_MAJORIZATION = "StrongMajorization"
    NOT_STRONG_MAJORIZATION = "NotStrongMajorization"


@dataclass(frozen=True)
class ResidueReport:
    direction: Direction
    residues: tuple[Fraction, ...]
    partial_sums: tuple[Fraction, ...]
    total: Fraction
    sums_equal: bool
    # 1-based positions in the caller's pair; differs from 1..n after deflation
    positions: tuple[int, ...] = ()


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    witness_k: int | None
    detail: ResidueReport
    witness_value: Fraction | None = None
    boundary: bool = False  # witness partial sum is exactly zero

    @property
    def passed(self) -> bool:
        return self.kind in (
            CertificateKind.NECESSARY_CONDITION_PASSED,
            CertificateKind.STRONG_MAJORIZATION,
        )


def decompose(pair: PolyPair, direction: Direction | str = Direction.P_OVER_Q) -> ResidueReport:
    direction = Direction(direction)
    _require_distinct_simple(pair)
    if direction is Direction.P_OVER_Q:
        res = residues_at(pair.p, pair.q, pair.mu)
        expected_total = pair.mu.total() - pair.lam.total()
    else:
        res = residues_at(pair.q, pair.p, pair.lam)
        expected_total = pair.lam.total() - pair.mu.total()
    partial = tuple(accumulate(res))
    # the 1/x coefficient identity; cheap, and catches any arithmetic slip
    assert partial[-1] == expected_total
    return ResidueReport(
        direction=direction,
        residues=res,
        partial_sums=partial,
        total=partial[-1],
        sums_equal=pair.lam.total() == pair.mu.total(),
        positions=tuple(range(1, pair.n + 1)),
    )


def _prepare(pair: PolyPair, direction: Direction) -> ResidueReport:
    verdict = common_interlacer_check(pair)
    if not verdict.has_common_interlacer:
        i, j = verdict.first_crossing
        raise NoCommonInterlacer(f"root intervals {i} and {j} cross")
    red = reduce_shared(pair)
    report = decompose(red.pair, direction)
    return ResidueReport(
        direction=report.direction,
        residues=report.residues,
        partial_sums=report.partial_sums,
        total=report.total,
        sums_equal=report.sums_equal,
        positions=red.kept,
    )


def necessary_condition(pair: PolyPair) -> Certificate:
    """Prefix sums of p(mu_i)/q'(mu_i) must be < 0 for k < n if p majorizes q.

    Passing does not prove majorization; failing refutes it.  A zero prefix
    sum fails with ``boundary=True``.
    """
    rep = _prepare(pair, Direction.P_OVER_Q)
    n = len(rep.residues)
    for k, s in enumerate(rep.partial_sums[:-1], start=1):
        if s >= 0:
            return Certificate(CertificateKind.NECESSARY_CONDITION_FAILED, rep.positions[k - 1],
                               rep, s, boundary=s == 0)
    if rep.total != 0:
        return Certificate(CertificateKind.NECESSARY_CONDITION_FAILED, rep.positions[n - 1],
                           rep, rep.total)
    return Certificate(CertificateKind.NECESSARY_CONDITION_PASSED, None, rep)


def strong_majorization_certificate(pair: PolyPair) -> Certificate:
    """Exact decision of strong majorization of p over q."""
    rep = _prepare(pair, Direction.Q_OVER_P)
    n = len(rep.residues)
    for k, s in enumerate(rep.partial_sums[:-1], start=1):
        if s < 0:
            return Certificate(CertificateKind.NOT_STRONG_MAJORIZATION, rep.positions[k - 1], rep, s)
    if not rep.sums_equal:
        return Certificate(CertificateKind.NOT_STRONG_MAJORIZATION, rep.positions[n - 1],
                           rep, rep.total)
    return Certificate(CertificateKind.STRONG_MAJORIZATION, None, rep)
