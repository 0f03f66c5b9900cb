"""Majorization of sorted vectors and Robin-Hood (Dalton) transfers.

Positions are 1-based throughout, matching the usual ``a_1 >= ... >= a_n``
notation, so ``first_violation = 1`` refers to the first partial sum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from .errors import EpsOutOfRange, LengthMismatch
from .poly import RootList, as_rational


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    partial_sum_gaps: tuple[Fraction, ...]
    first_violation: int | None
    sums_equal: bool


def _as_rootlist(a) -> RootList:
    return a if isinstance(a, RootList) else RootList.of(a)


def majorizes(a, b) -> MajorizationVerdict:
    """Does ``a`` majorize ``b``?  Gaps are prefix(a) - prefix(b), exactly."""
    a, b = _as_rootlist(a), _as_rootlist(b)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    gaps = tuple(x - y for x, y in zip(accumulate(a.roots), accumulate(b.roots)))
    n = len(gaps)
    first = None
    for k, g in enumerate(gaps, start=1):
        if (k < n and g < 0) or (k == n and g != 0):
            first = k
            break
    return MajorizationVerdict(
        holds=first is None,
        partial_sum_gaps=gaps,
        first_violation=first,
        sums_equal=gaps[-1] == 0,
    )


def robin_hood(a, i: int, j: int, eps) -> RootList:
    """Move ``eps`` from position ``i`` to the smaller entry at ``j > i``.

    The result is re-sorted and is always majorized by ``a``.
    """
    a = _as_rootlist(a)
    eps = as_rational(eps)
    n = len(a)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"positions ({i}, {j}) outside 1..{n}")
    if not i < j:
        raise IndexError("robin_hood needs i < j")
    spread = a[i - 1] - a[j - 1]
    if not (0 < eps < spread):
        raise EpsOutOfRange(f"eps={eps} not in the open interval (0, {spread})")
    vals = list(a.roots)
    vals[i - 1] -= eps
    vals[j - 1] += eps
    return RootList.of(vals)


def dalton_path(a, b) -> list[tuple[int, int, Fraction]]:
    """Constructive Robin-Hood sequence turning ``a`` into ``b`` (requires a >= b).

    Each step takes the first position ``k`` where ``a`` falls short of ``b``
    and the last position ``j < k`` where ``a`` exceeds ``b``, then moves
    ``min(a_j - b_j, b_k - a_k)``.  Every step zeroes one coordinate
    difference, so the path has at most ``n - 1`` steps, and the vector stays
    sorted without any reordering.
    """
    a, b = _as_rootlist(a), _as_rootlist(b)
    if not majorizes(a, b).holds:
        raise ValueError("dalton_path requires a to majorize b")
    cur = list(a.roots)
    target = list(b.roots)
    steps: list[tuple[int, int, Fraction]] = []
    while cur != target:
        k = next(idx for idx, (x, y) in enumerate(zip(cur, target)) if x < y)
        j = max(idx for idx in range(k) if cur[idx] > target[idx])
        eps = min(cur[j] - target[j], target[k] - cur[k])
        cur = list(robin_hood(RootList(tuple(cur)), j + 1, k + 1, eps).roots)
        steps.append((j + 1, k + 1, eps))
    return steps


def apply_path(a, steps: Sequence[tuple[int, int, Fraction]]) -> RootList:
    a = _as_rootlist(a)
    for i, j, eps in steps:
        a = robin_hood(a, i, j, eps)
    return a
