"""Root trajectories of p_t = t*p + (1-t)*q and monotonicity of their partial sums.

When p and q share a common interlacer, the i-th root of p_t stays in the
interval spanned by lam_i and mu_i for every t in [0, 1].  At each rational t
the tracker isolates that root by bisection with exact integer sign
evaluation.  A float Newton step supplies a narrow starting bracket, and that
bracket is accepted only after its endpoint signs are checked exactly.

Partial sums S_k(t) are carried as exact rational enclosures
``[sum lo_i, sum hi_i]``, so each grid step is classified as a proven
increase, a proven decrease, an exact plateau, or inconclusive.
Inconclusive steps are bisected until resolved.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    BracketFailure,
    GridExhausted,
    GridTooSmall,
    NoCommonInterlacer,
    TOutOfOpenRange,
)
from .interlace import PolyPair, common_interlacer_check
from .poly import DEFAULT_TOL, Interval, IntPoly, Poly, as_rational, bisect_scaled, sign

DEFAULT_GRID = 1024
MAX_REFINE_LEVELS = 16


class ConvexPath:
    """The segment t -> t*p + (1-t)*q for one pair with a common interlacer."""

    def __init__(self, pair: PolyPair):
        verdict = common_interlacer_check(pair)
        if not verdict.has_common_interlacer:
            i, j = verdict.first_crossing
            raise NoCommonInterlacer(f"root intervals {i} and {j} cross")
        self.pair = pair
        self.n = pair.n
        self.brackets = verdict.pair_intervals
        self.shared = tuple(a == b for a, b in zip(pair.lam, pair.mu))
        # common integer scaling of p and q (both monic, so one lcm serves)
        den = math.lcm(*(c.denominator for c in pair.p.coefficients + pair.q.coefficients))
        self._P = [int(c * den) for c in pair.p.coefficients]
        self._Q = [int(c * den) for c in pair.q.coefficients]
        self._lam_f = [float(x) for x in pair.lam]
        self._mu_f = [float(x) for x in pair.mu]
        # exact endpoint signs of p_t for 0 < t < 1:
        #   p_t(lam_i) = (1-t) q(lam_i),  p_t(mu_i) = t p(mu_i)
        self._end_signs = []
        for i in range(self.n):
            if self.shared[i]:
                self._end_signs.append(None)
                continue
            s_lam = sign(pair.q(pair.lam[i]))
            s_mu = sign(pair.p(pair.mu[i]))
            if s_lam == 0 or s_mu == 0 or s_lam == s_mu:
                raise BracketFailure(f"no sign change of p_t across root interval {i + 1}")
            br = self.brackets[i]
            if pair.lam[i] == br.lo:
                self._end_signs.append((s_lam, s_mu))
            else:
                self._end_signs.append((s_mu, s_lam))

    def poly_at(self, t) -> Poly:
        t = as_rational(t)
        return self.pair.p.scale(t) + self.pair.q.scale(1 - t)

    def _int_poly(self, t: Fraction) -> IntPoly:
        a, N = t.numerator, t.denominator
        return IntPoly([a * x + (N - a) * y for x, y in zip(self._P, self._Q)])

    def _float_value(self, x: float, t: float) -> tuple[float, float]:
        """p_t and p_t' at x in product form (no coefficient cancellation)."""
        pv, dp = 1.0, 0.0
        for r in self._lam_f:
            dp = dp * (x - r) + pv
            pv *= x - r
        qv, dq = 1.0, 0.0
        for r in self._mu_f:
            dq = dq * (x - r) + qv
            qv *= x - r
        return t * pv + (1 - t) * qv, t * dp + (1 - t) * dq

    def _float_root(self, i: int, t: float, guess: float | None) -> float:
        br = self.brackets[i]
        a, b = float(br.lo), float(br.hi)
        s_a = self._end_signs[i][0]
        x = (a + b) / 2 if guess is None or not a < guess < b else guess
        for _ in range(100):
            f, df = self._float_value(x, t)
            if f == 0:
                return x
            if (f > 0) == (s_a > 0):
                a = x
            else:
                b = x
            step = f / df if df != 0 else math.inf
            nx = x - step
            if not a < nx < b:
                nx = (a + b) / 2
            if abs(nx - x) <= 4e-16 * (1 + abs(x)) or b - a <= 4e-16 * (1 + abs(x)):
                return nx
            x = nx
        return x

    def roots_at(self, t, tol=DEFAULT_TOL, guesses: Sequence[float] | None = None) -> tuple[Interval, ...]:
        """Isolating intervals of width <= tol for every root of p_t, largest first."""
        t = as_rational(t)
        tol = as_rational(tol)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        if t == 0:
            return tuple(Interval(x, x) for x in self.pair.mu)
        if t == 1:
            return tuple(Interval(x, x) for x in self.pair.lam)
        ip = self._int_poly(t)
        tf = float(t)
        out = []
        for i in range(self.n):
            if self.shared[i]:
                x = self.pair.lam[i]
                out.append(Interval(x, x))
                continue
            out.append(self._isolate(ip, i, tf, tol, None if guesses is None else guesses[i]))
        return tuple(out)

    def _isolate(self, ip: IntPoly, i: int, tf: float, tol: Fraction, guess) -> Interval:
        br = self.brackets[i]
        s_lo, s_hi = self._end_signs[i]
        r = self._float_root(i, tf, guess)
        delta = 1e-12 * (1 + abs(r))
        for _ in range(3):
            lo = Fraction(r - delta)
            hi = Fraction(r + delta)
            if br.lo < lo and hi < br.hi:
                if ip.sign_at(lo.numerator, lo.denominator) == s_lo and \
                        ip.sign_at(hi.numerator, hi.denominator) == s_hi:
                    return bisect_scaled(ip, lo, hi, s_lo, s_hi, tol)
            delta *= 1e4
        try:
            return bisect_scaled(ip, br.lo, br.hi, s_lo, s_hi, tol)
        except Exception as exc:  # pragma: no cover - guarded by the sign table
            raise BracketFailure(str(exc)) from exc


class StepKind(enum.IntEnum):
    DECREASE = -1
    PLATEAU = 0  # exact equality, only possible with point enclosures
    INCREASE = 1
    INCONCLUSIVE = 2


class Monotone(enum.Enum):
    INCREASING = "Increasing"
    NONDECREASING = "Nondecreasing"
    VIOLATED = "ViolatedAt"


@dataclass(frozen=True)
class MonotoneVerdict:
    k: int
    kind: Monotone
    violated_at: tuple[Fraction, Fraction] | None = None
    violations: tuple[tuple[Fraction, Fraction], ...] = ()
    inconclusive: int = 0

    def __str__(self):
        if self.kind is Monotone.VIOLATED:
            a, b = self.violated_at
            return f"ViolatedAt({a}, {b})"
        return self.kind.value


@dataclass
class TrajectoryBundle:
    t_grid: tuple[Fraction, ...]
    roots_at: tuple[tuple[Interval, ...], ...]
    S_lo: tuple[tuple[Fraction, ...], ...]
    S_hi: tuple[tuple[Fraction, ...], ...]
    monotone_verdicts: tuple[MonotoneVerdict, ...]
    tol: Fraction
    base_grid_size: int
    sn_constant: bool
    refined_points: int = 0
    exhausted: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.roots_at[0])

    def roots_mid(self) -> np.ndarray:
        return np.array([[float(iv.mid) for iv in row] for row in self.roots_at])

    def S_mid(self) -> np.ndarray:
        return np.array([[float((a + b) / 2) for a, b in zip(lo, hi)]
                         for lo, hi in zip(self.S_lo, self.S_hi)])

    def S_err(self) -> np.ndarray:
        return np.array([[float((b - a) / 2) for a, b in zip(lo, hi)]
                         for lo, hi in zip(self.S_lo, self.S_hi)])

    def index_of(self, t) -> int:
        return self.t_grid.index(as_rational(t))


def _classify(lo_a, hi_a, lo_b, hi_b) -> StepKind:
    if lo_b > hi_a:
        return StepKind.INCREASE
    if hi_b < lo_a:
        return StepKind.DECREASE
    if lo_a == hi_a == lo_b == hi_b:
        return StepKind.PLATEAU
    return StepKind.INCONCLUSIVE


def _partial_bounds(ivs: Sequence[Interval]):
    lo, hi = [], []
    slo = shi = Fraction(0)
    for iv in ivs:
        slo += iv.lo
        shi += iv.hi
        lo.append(slo)
        hi.append(shi)
    return tuple(lo), tuple(hi)


def uniform_grid(grid_size: int) -> list[Fraction]:
    if grid_size < 2:
        raise GridTooSmall("need at least two grid points")
    return [Fraction(g, grid_size - 1) for g in range(grid_size)]


def track(pair: PolyPair, grid_size: int = DEFAULT_GRID, tol=DEFAULT_TOL, *,
          refine: bool = True, endpoint_levels: int = MAX_REFINE_LEVELS,
          max_levels: int = MAX_REFINE_LEVELS, raise_on_exhaust: bool = True) -> TrajectoryBundle:
    """Sample every root trajectory on a uniform rational grid and classify S_k.

    With ``refine`` on, the two end steps get ``endpoint_levels`` dyadic
    points toward t=0 and t=1 (a decrease confined to less than one grid step
    next to an end would otherwise be missed).  Inconclusive steps are then
    bisected, at most ``max_levels`` times.  If a step is still inconclusive
    and no decrease has been proven for that S_k, GridExhausted is raised.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    ts = uniform_grid(grid_size)
    path = ConvexPath(pair)
    n = path.n
    h = ts[1] - ts[0]
    min_step = h / 2**max_levels

    roots: dict[Fraction, tuple[Interval, ...]] = {}
    prev_guess = None
    for t in ts:
        row = path.roots_at(t, tol, prev_guess)
        roots[t] = row
        prev_guess = [float(iv.mid) for iv in row]

    def add(t: Fraction, near: Fraction):
        if t not in roots:
            roots[t] = path.roots_at(t, tol, [float(iv.mid) for iv in roots[near]])

    if refine and grid_size >= 2:
        for j in range(1, endpoint_levels + 1):
            add(h / 2**j, Fraction(0))
            add(1 - h / 2**j, Fraction(1))

    base_points = len(ts)
    exhausted: set[int] = set()
    cache: dict[Fraction, tuple] = {}
    while True:
        grid = sorted(roots)
        for t in grid:
            if t not in cache:
                cache[t] = _partial_bounds(roots[t])
        bounds = [cache[t] for t in grid]
        steps = []
        for g in range(len(grid) - 1):
            (la, ha), (lb, hb) = bounds[g], bounds[g + 1]
            steps.append([_classify(la[k], ha[k], lb[k], hb[k]) for k in range(n - 1)])
        if not refine:
            break
        pending = []
        for g, kinds in enumerate(steps):
            if StepKind.INCONCLUSIVE in kinds:
                a, b = grid[g], grid[g + 1]
                if b - a > min_step:
                    pending.append((a, b))
                else:
                    exhausted.update(k + 1 for k, s in enumerate(kinds) if s is StepKind.INCONCLUSIVE)
        if not pending:
            break
        for a, b in pending:
            add((a + b) / 2, a)

    verdicts = []
    for k in range(1, n + 1):
        if k == n:
            # S_n is affine in t; its exact end values decide constancy
            s0, s1 = bounds[0][0][n - 1], bounds[-1][0][n - 1]
            kinds = [StepKind.PLATEAU if s0 == s1 else
                     (StepKind.INCREASE if s1 > s0 else StepKind.DECREASE)]
            viol = [(grid[0], grid[-1])] if s1 < s0 else []
        else:
            kinds = [row[k - 1] for row in steps]
            viol = [(grid[g], grid[g + 1]) for g, s in enumerate(kinds) if s is StepKind.DECREASE]
        n_inc = sum(1 for s in kinds if s is StepKind.INCONCLUSIVE)
        if viol:
            verdicts.append(MonotoneVerdict(k, Monotone.VIOLATED, viol[0], tuple(viol), n_inc))
        elif all(s is StepKind.INCREASE for s in kinds):
            verdicts.append(MonotoneVerdict(k, Monotone.INCREASING, inconclusive=n_inc))
        else:
            if k in exhausted and raise_on_exhaust:
                raise GridExhausted(f"S_{k} still inconclusive at step width {min_step}")
            verdicts.append(MonotoneVerdict(k, Monotone.NONDECREASING, inconclusive=n_inc))

    s_n = [lo[n - 1] for lo, _ in bounds]
    sn_hi = [hi[n - 1] for _, hi in bounds]
    sn_constant = bounds[0][0][n - 1] == bounds[-1][0][n - 1] and not any(
        sn_hi[g + 1] < s_n[g] or s_n[g + 1] > sn_hi[g] for g in range(len(grid) - 1))

    return TrajectoryBundle(
        t_grid=tuple(grid),
        roots_at=tuple(roots[t] for t in grid),
        S_lo=tuple(b[0] for b in bounds),
        S_hi=tuple(b[1] for b in bounds),
        monotone_verdicts=tuple(verdicts),
        tol=tol,
        base_grid_size=grid_size,
        sn_constant=sn_constant,
        refined_points=len(grid) - base_points,
        exhausted=tuple(sorted(exhausted)),
    )


@dataclass(frozen=True)
class EmpiricalVerdict:
    overall: bool
    strict: bool
    verdicts: tuple[MonotoneVerdict, ...]
    bundle: TrajectoryBundle


def strong_majorization_empirical(pair: PolyPair, grid_size: int = DEFAULT_GRID,
                                  tol=DEFAULT_TOL) -> EmpiricalVerdict:
    """Grid check of strong majorization: every S_k (k < n) nondecreasing, S_n constant.

    ``overall`` means no violation was found at this resolution.  ``strict``
    additionally requires a proven increase on every step of every S_k, k < n.
    """
    bundle = track(pair, grid_size, tol)
    n = bundle.n
    head = bundle.monotone_verdicts[:-1]
    overall = bundle.sn_constant and all(v.kind is not Monotone.VIOLATED for v in head)
    strict = overall and all(v.kind is Monotone.INCREASING for v in head)
    return EmpiricalVerdict(overall, strict, bundle.monotone_verdicts, bundle)


# --- root velocity -------------------------------------------------------------------


def _imul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]):
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def _iadd(a, b):
    return a[0] + b[0], a[1] + b[1]


def _iscale(c: Fraction, a):
    x, y = c * a[0], c * a[1]
    return (x, y) if x <= y else (y, x)


def _idiv(a, b):
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("denominator enclosure contains zero")
    return _imul(a, (1 / b[1], 1 / b[0]))


def _prod_and_deriv(x, roots):
    """Enclosures of prod(x - r) and its derivative over the interval x."""
    val = (Fraction(1), Fraction(1))
    der = (Fraction(0), Fraction(0))
    for r in roots:
        f = (x[0] - r, x[1] - r)
        der = _iadd(_imul(der, f), val)
        val = _imul(val, f)
    return val, der


@dataclass(frozen=True)
class Velocity:
    value: Fraction
    error: Fraction
    root: Interval
    forms: tuple[Interval, Interval, Interval]

    def forms_agree(self) -> bool:
        lo = max(f.lo for f in self.forms)
        hi = min(f.hi for f in self.forms)
        return lo <= hi


def velocity_forms(pair: PolyPair, t: Fraction, root: Interval) -> tuple[Interval, Interval, Interval]:
    """Enclose (q-p)/p_t', q/(t p_t') and -p/((1-t) p_t') over an isolated root."""
    x = (root.lo, root.hi)
    pv, dp = _prod_and_deriv(x, pair.lam)
    qv, dq = _prod_and_deriv(x, pair.mu)
    dpt = _iadd(_iscale(t, dp), _iscale(1 - t, dq))
    qmp = _iadd(qv, _iscale(Fraction(-1), pv))
    f1 = _idiv(qmp, dpt)
    f2 = _iscale(1 / t, _idiv(qv, dpt))
    f3 = _iscale(-1 / (1 - t), _idiv(pv, dpt))
    return tuple(Interval(*f) for f in (f1, f2, f3))


def root_velocity(pair: PolyPair, t, i: int, tol=DEFAULT_TOL) -> Velocity:
    """d lambda_i / dt at interior t (1-based ``i``), with a rigorous error bound."""
    t = as_rational(t)
    if not 0 < t < 1:
        raise TOutOfOpenRange("velocity forms are singular at t = 0 and t = 1")
    path = ConvexPath(pair)
    if not 1 <= i <= path.n:
        raise IndexError(f"root index {i} outside 1..{path.n}")
    root = path.roots_at(t, tol)[i - 1]
    forms = velocity_forms(pair, t, root)
    enc = forms[0]
    return Velocity(value=enc.mid, error=enc.width / 2, root=root, forms=forms)


def central_difference(pair: PolyPair, t, i: int, h, tol=DEFAULT_TOL) -> tuple[Fraction, Fraction]:
    """(lambda_i(t+h) - lambda_i(t-h)) / 2h from isolated midpoints, and its isolation error."""
    t, h = as_rational(t), as_rational(h)
    path = ConvexPath(pair)
    a = path.roots_at(t + h, tol)[i - 1]
    b = path.roots_at(t - h, tol)[i - 1]
    value = (a.mid - b.mid) / (2 * h)
    return value, (a.width + b.width) / (4 * h)
