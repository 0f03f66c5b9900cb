"""Common interlacers, proper interlacing and shared-root deflation."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateEmpty, LengthMismatch, NonSimpleRoots, SharedRoots
from .poly import Interval, Poly, RootList, derivative, evaluate, poly_from_roots, sign


@dataclass(frozen=True)
class PolyPair:
    """Roots ``lam`` of p and ``mu`` of q, with both monic polynomials.

    Build with :meth:`from_roots`, which sorts the roots.
    """

    lam: RootList
    mu: RootList
    p: Poly = field(init=False, repr=False, compare=False)
    q: Poly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.lam, RootList):
            object.__setattr__(self, "lam", RootList.of(self.lam))
        if not isinstance(self.mu, RootList):
            object.__setattr__(self, "mu", RootList.of(self.mu))
        if len(self.lam) != len(self.mu):
            raise LengthMismatch(f"lam has {len(self.lam)} roots, mu has {len(self.mu)}")
        object.__setattr__(self, "p", poly_from_roots(self.lam))
        object.__setattr__(self, "q", poly_from_roots(self.mu))

    @classmethod
    def from_roots(cls, lam, mu) -> PolyPair:
        return cls(RootList.of(lam), RootList.of(mu))

    @property
    def n(self) -> int:
        return len(self.lam)

    def swapped(self) -> PolyPair:
        return PolyPair(self.mu, self.lam)

    def shared_values(self) -> set[Fraction]:
        return set(self.lam.roots) & set(self.mu.roots)


@dataclass(frozen=True)
class InterlaceVerdict:
    has_common_interlacer: bool
    pair_intervals: tuple[Interval, ...]
    first_crossing: tuple[int, int] | None
    properly_interlacing: bool


def strictly_alternate(lam, mu) -> bool:
    """Direct combinatorial test: all 2n roots distinct and alternating."""
    merged = sorted([(x, 0) for x in lam] + [(x, 1) for x in mu], reverse=True)
    values = [x for x, _ in merged]
    if len(set(values)) != len(values):
        return False
    tags = [t for _, t in merged]
    return all(a != b for a, b in zip(tags, tags[1:]))


def common_interlacer_check(pair: PolyPair) -> InterlaceVerdict:
    """Pair the i-th roots into intervals and require them strictly disjoint.

    Touching intervals count as crossing; positional shared roots give
    point intervals, which are fine as long as they stay clear of neighbours.
    """
    intervals = tuple(Interval.hull(a, b) for a, b in zip(pair.lam, pair.mu))
    crossing = None
    # both endpoint sequences are sorted, so adjacent checks suffice
    for i in range(len(intervals) - 1):
        if not intervals[i].lo > intervals[i + 1].hi:
            crossing = (i + 1, i + 2)
            break
    return InterlaceVerdict(
        has_common_interlacer=crossing is None,
        pair_intervals=intervals,
        first_crossing=crossing,
        properly_interlacing=strictly_alternate(pair.lam, pair.mu),
    )


def _require_distinct_simple(pair: PolyPair) -> None:
    if not (pair.lam.simple and pair.mu.simple):
        raise NonSimpleRoots("roots must be simple")
    shared = pair.shared_values()
    if shared:
        raise SharedRoots(f"p and q share roots {sorted(shared, reverse=True)}")


def residues_at(num: Poly, den: Poly, points) -> tuple[Fraction, ...]:
    """num(x)/den'(x) at each x; the simple-pole residues of num/den."""
    dden = derivative(den)
    return tuple(evaluate(num, x) / evaluate(dden, x) for x in points)


def proper_interlacing_check(pair: PolyPair) -> bool:
    """True iff every residue p(mu_i)/q'(mu_i) has the same strict sign."""
    _require_distinct_simple(pair)
    signs = {sign(r) for r in residues_at(pair.p, pair.q, pair.mu)}
    return len(signs) == 1 and 0 not in signs


@dataclass(frozen=True)
class Reduction:
    pair: PolyPair
    kept: tuple[int, ...]  # surviving 1-based positions of the input pair
    removed: tuple[Fraction, ...]


def reduce_shared(pair: PolyPair) -> Reduction:
    kept = tuple(i + 1 for i, (a, b) in enumerate(zip(pair.lam, pair.mu)) if a != b)
    if not kept:
        raise DegenerateEmpty("p == q: every root is shared")
    if len(kept) == pair.n:
        return Reduction(pair, kept, ())
    removed = tuple(pair.lam[i - 1] for i in range(1, pair.n + 1) if i not in kept)
    reduced = PolyPair(
        RootList(tuple(pair.lam[i - 1] for i in kept)),
        RootList(tuple(pair.mu[i - 1] for i in kept)),
    )
    return Reduction(reduced, kept, removed)


def reduce_shared_roots(pair: PolyPair) -> PolyPair:
    """Deflate roots with lam_i == mu_i at the same sorted position.

    Shared values sitting at different positions are left alone; the
    interlacer check reports those as crossings.
    """
    return reduce_shared(pair).pair
