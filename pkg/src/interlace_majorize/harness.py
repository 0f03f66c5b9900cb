"""Random pairs with a common interlacer and theorem-checking campaigns.

Randomness comes from numpy's PCG64 bit generator.  Trial ``j`` of a
campaign with seed ``s`` draws from ``SeedSequence([s, j])``, so a serial
run and a worker pool produce the same report.  Root values are
``i / denominator`` for integers ``i``.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import (
    DegenerateEmpty,
    GridExhausted,
    SpecInfeasible,
    SpecInvalid,
    TrialsOutOfRange,
)
from .homotopy import DEFAULT_GRID, strong_majorization_empirical
from .interlace import PolyPair, common_interlacer_check
from .majorize import majorizes, robin_hood
from .poly import DEFAULT_TOL, Interval, RootList, as_rational, format_rational
from .residue import CertificateKind, necessary_condition, strong_majorization_certificate

RNG_ALGORITHM = "numpy.random.PCG64 seeded by SeedSequence([seed, trial])"
THREADS_ENV = "INTERLACE_MAJORIZE_THREADS"
MAX_RESAMPLE = 100

CONSTRUCTIONS = ("uniform", "majorizing")


@dataclass(frozen=True)
class GenSpec:
    """Recipe for random pairs.

    ``construction="uniform"`` draws every root independently inside disjoint
    intervals.  ``"majorizing"`` contracts lam toward its mean (plus small
    Robin-Hood moves) so that lam majorizes mu by construction.  When
    ``max_degree`` is set, each draw picks its degree uniformly from
    ``degree..max_degree``.
    """

    degree: int = 4
    interval_gap: Fraction = Fraction(1, 16)
    root_box: Interval = Interval(Fraction(-10), Fraction(10))
    seed: int = 0
    equalize_sums: bool = False
    denominator: int = 2**16
    construction: str = "uniform"
    max_degree: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "interval_gap", as_rational(self.interval_gap))
        if self.degree < 2:
            raise SpecInvalid("degree must be at least 2")
        if self.max_degree is not None and self.max_degree < self.degree:
            raise SpecInvalid("max_degree below degree")
        if self.interval_gap <= 0:
            raise SpecInvalid("interval_gap must be positive")
        if self.denominator < 1:
            raise SpecInvalid("denominator must be positive")
        if self.construction not in CONSTRUCTIONS:
            raise SpecInvalid(f"construction must be one of {CONSTRUCTIONS}")

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "max_degree": self.max_degree,
            "interval_gap": format_rational(self.interval_gap),
            "root_box": [format_rational(self.root_box.lo), format_rational(self.root_box.hi)],
            "seed": self.seed,
            "equalize_sums": self.equalize_sums,
            "denominator": self.denominator,
            "construction": self.construction,
        }


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _valid(pair: PolyPair, box: Interval) -> bool:
    if not (pair.lam.simple and pair.mu.simple) or pair.shared_values():
        return False
    if not all(x in box for x in pair.lam.roots + pair.mu.roots):
        return False
    return common_interlacer_check(pair).has_common_interlacer


def _draw_intervals(spec: GenSpec, n: int, rng: np.random.Generator):
    """Endpoints of n disjoint intervals, descending, separated by >= interval_gap."""
    box, gap, D = spec.root_box, spec.interval_gap, spec.denominator
    slack = box.width - (n - 1) * gap
    units = int(slack * D) if slack > 0 else -1
    if units + 1 < 2 * n:
        raise SpecInfeasible(f"{n} intervals with gap {gap} do not fit in [{box.lo}, {box.hi}]")
    picks = sorted(int(v) for v in rng.choice(units + 1, size=2 * n, replace=False))
    ends = []
    for j in range(n):
        a = box.lo + Fraction(picks[2 * j], D) + j * gap
        b = box.lo + Fraction(picks[2 * j + 1], D) + j * gap
        ends.append((a, b))
    return ends[::-1]


def _uniform(spec: GenSpec, n: int, rng) -> PolyPair:
    ends = _draw_intervals(spec, n, rng)
    flips = rng.integers(0, 2, size=n)
    lam = [b if f else a for (a, b), f in zip(ends, flips)]
    mu = [a if f else b for (a, b), f in zip(ends, flips)]
    return PolyPair.from_roots(lam, mu)


def _rand_fraction(rng, lo: Fraction, hi: Fraction, D: int) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi) on a 1/D sub-grid."""
    k = int(rng.integers(1, D))
    return lo + (hi - lo) * Fraction(k, D)


def _contract(rng, lam: list[Fraction], D: int, box: Interval) -> list[Fraction] | None:
    """mu = m + c (lam - m) with c pushed toward 1 until the pair interlaces."""
    m = sum(lam, Fraction(0)) / len(lam)
    if m in lam:
        return None
    c = _rand_fraction(rng, Fraction(1, 2), Fraction(1), D)
    for _ in range(40):
        mu = [m + c * (x - m) for x in lam]
        if _valid(PolyPair.from_roots(lam, mu), box):
            return mu
        c = (1 + c) / 2
    return None


def _jitter(rng, lam: list[Fraction], mu: list[Fraction], lo: int, hi: int, D: int,
            box: Interval, steps: int = 2) -> list[Fraction]:
    """Robin-Hood moves inside mu[lo:hi]; each is kept only if the pair stays valid."""
    if hi - lo < 2:
        return mu
    for _ in range(steps):
        i, j = sorted(int(v) for v in rng.choice(hi - lo, size=2, replace=False))
        block = RootList(tuple(mu[lo:hi]))
        spread = block[i] - block[j]
        eps = spread * Fraction(int(rng.integers(1, D)), 64 * D)
        new_block = robin_hood(block, i + 1, j + 1, eps).roots
        cand = mu[:lo] + list(new_block) + mu[hi:]
        if _valid(PolyPair.from_roots(lam, cand), box):
            mu = cand
    return mu


def _majorizing(spec: GenSpec, n: int, rng) -> PolyPair | None:
    lam = [a for a, _ in _draw_intervals(spec, n, rng)]
    lam = sorted(set(lam), reverse=True)
    if len(lam) != n:
        return None
    mu = _contract(rng, lam, spec.denominator, spec.root_box)
    if mu is None:
        return None
    mu = _jitter(rng, lam, mu, 0, n, spec.denominator, spec.root_box)
    return PolyPair.from_roots(lam, mu)


def _degree(spec: GenSpec, rng) -> int:
    if spec.max_degree is None:
        return spec.degree
    return int(rng.integers(spec.degree, spec.max_degree + 1))


def generate_pair(spec: GenSpec, rng: np.random.Generator | None = None) -> PolyPair:
    """Random pair with a common interlacer and distinct simple roots."""
    if rng is None:
        rng = trial_rng(spec.seed, 0)
    n = _degree(spec, rng)
    for _ in range(MAX_RESAMPLE):
        if spec.construction == "majorizing":
            pair = _majorizing(spec, n, rng)
            if pair is None:
                continue
        else:
            pair = _uniform(spec, n, rng)
            if spec.equalize_sums:
                shift = (pair.lam.total() - pair.mu.total()) / n
                pair = PolyPair(pair.lam, RootList(tuple(x + shift for x in pair.mu)))
        if _valid(pair, spec.root_box):
            return pair
    raise SpecInfeasible(f"no valid pair after {MAX_RESAMPLE} draws")


def generate_diffmaj_pair(spec: GenSpec, rng: np.random.Generator | None = None,
                          k: int | None = None) -> tuple[PolyPair, int]:
    """Pair with lam >= mu and equal prefix sums at an interior k (2 <= k <= n-2).

    Each block mu[:k], mu[k:] is its lam block contracted toward the block
    mean, then nudged by Robin-Hood moves, so both block sums match exactly.
    """
    if rng is None:
        rng = trial_rng(spec.seed, 0)
    n = _degree(spec, rng)
    if n < 4:
        raise SpecInfeasible("interior prefix equality with distinct roots needs n >= 4")
    for _ in range(MAX_RESAMPLE):
        kk = int(rng.integers(2, n - 1)) if k is None else k
        if not 2 <= kk <= n - 2:
            raise SpecInfeasible(f"k={kk} must satisfy 2 <= k <= n-2")
        lam = sorted({a for a, _ in _draw_intervals(spec, n, rng)}, reverse=True)
        if len(lam) != n:
            continue
        top = _contract(rng, lam[:kk], spec.denominator, spec.root_box)
        bot = _contract(rng, lam[kk:], spec.denominator, spec.root_box)
        if top is None or bot is None:
            continue
        mu = top + bot
        if not _valid(PolyPair.from_roots(lam, mu), spec.root_box):
            continue
        mu = _jitter(rng, lam, mu, 0, kk, spec.denominator, spec.root_box)
        mu = _jitter(rng, lam, mu, kk, n, spec.denominator, spec.root_box)
        return PolyPair.from_roots(lam, mu), kk
    raise SpecInfeasible(f"no valid construction after {MAX_RESAMPLE} draws")


# --- campaigns ------------------------------------------------------------------------


def pair_to_dict(pair: PolyPair) -> dict:
    return {
        "lambda": [format_rational(x) for x in pair.lam],
        "mu": [format_rational(x) for x in pair.mu],
    }


@dataclass
class CampaignReport:
    theorem: str
    trials: int
    applicable: int
    counterexamples: list[dict]
    statistics: dict
    runtime: float
    spec: dict = field(default_factory=dict)
    rng: str = RNG_ALGORITHM
    vacuous: bool = False

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, include_runtime: bool = True) -> dict:
        d = asdict(self)
        if not include_runtime:
            d.pop("runtime")
        return d


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_trials(fn: Callable, args: list[tuple], workers: int | None) -> list:
    w = worker_count(workers)
    if w == 1 or len(args) < 2:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, *zip(*args), chunksize=max(1, len(args) // (4 * w))))


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise TrialsOutOfRange("a campaign needs at least one trial")


def _ncm_trial(spec: GenSpec, trial: int) -> dict:
    pair = generate_pair(spec, trial_rng(spec.seed, trial))
    out = {"degree": pair.n, "orientation": None, "counterexample": None,
           "necessary_passed_without_majorization": False}
    if majorizes(pair.lam, pair.mu).holds:
        oriented = pair
        out["orientation"] = "p>=q"
    elif majorizes(pair.mu, pair.lam).holds:
        oriented = pair.swapped()
        out["orientation"] = "q>=p"
    else:
        cert = necessary_condition(pair)
        out["necessary_passed_without_majorization"] = cert.passed
        return out
    cert = necessary_condition(oriented)
    if not cert.passed:
        out["counterexample"] = {
            **pair_to_dict(oriented),
            "trial": trial,
            "certificate": cert.kind.value,
            "witness_k": cert.witness_k,
            "witness_value": format_rational(cert.witness_value),
        }
    return out


def campaign_ncm(spec: GenSpec, trials: int, workers: int | None = None) -> CampaignReport:
    """Every majorizing pair (either orientation) must pass the necessary condition."""
    _check_trials(trials)
    start = time.perf_counter()
    results = _run_trials(_ncm_trial, [(spec, j) for j in range(trials)], workers)
    applicable = sum(1 for r in results if r["orientation"])
    stats = {
        "majorizing_p_over_q": sum(1 for r in results if r["orientation"] == "p>=q"),
        "majorizing_q_over_p": sum(1 for r in results if r["orientation"] == "q>=p"),
        "passed": sum(1 for r in results if r["orientation"] and r["counterexample"] is None),
        "necessary_passed_without_majorization": sum(
            1 for r in results if r["necessary_passed_without_majorization"]),
        "degrees": _degree_hist(results),
    }
    return CampaignReport(
        theorem="ncm",
        trials=trials,
        applicable=applicable,
        counterexamples=[r["counterexample"] for r in results if r["counterexample"]],
        statistics=stats,
        runtime=time.perf_counter() - start,
        spec=spec.to_dict(),
        vacuous=applicable == 0,
    )


def _degree_hist(results) -> dict:
    hist: dict[str, int] = {}
    for r in results:
        key = str(r["degree"])
        hist[key] = hist.get(key, 0) + 1
    return dict(sorted(hist.items(), key=lambda kv: int(kv[0])))


def _nscm_trial(spec: GenSpec, trial: int, grid_size: int, tol: Fraction) -> dict:
    pair = generate_pair(spec, trial_rng(spec.seed, trial))
    cert = strong_majorization_certificate(pair)
    out = {"degree": pair.n, "strong": cert.passed, "counterexample": None,
           "strict_ok": None, "refined_points": 0}
    try:
        emp = strong_majorization_empirical(pair, grid_size, tol)
    except GridExhausted as exc:
        out["counterexample"] = {**pair_to_dict(pair), "trial": trial,
                                 "reason": f"grid exhausted: {exc}"}
        return out
    out["refined_points"] = emp.bundle.refined_points
    if cert.passed:
        out["strict_ok"] = emp.strict
    if emp.overall != cert.passed:
        out["counterexample"] = {
            **pair_to_dict(pair),
            "trial": trial,
            "reason": "certificate and grid disagree",
            "certificate": cert.kind.value,
            "empirical": [str(v) for v in emp.verdicts],
        }
    elif cert.passed and not emp.strict:
        out["counterexample"] = {
            **pair_to_dict(pair),
            "trial": trial,
            "reason": "strong pair without proven strict increase on every step",
            "empirical": [str(v) for v in emp.verdicts],
        }
    return out


def campaign_nscm(spec: GenSpec, trials: int, grid_size: int = DEFAULT_GRID,
                  tol=DEFAULT_TOL, workers: int | None = None) -> CampaignReport:
    """Residue certificate versus grid tracking, pair by pair.

    Strong pairs must also show a proven increase on every refined step of
    every S_k with k < n (strict monotonicity).
    """
    _check_trials(trials)
    if not spec.equalize_sums and spec.construction == "uniform":
        raise SpecInvalid("campaign_nscm needs equalize_sums=True")
    tol = as_rational(tol)
    start = time.perf_counter()
    results = _run_trials(_nscm_trial, [(spec, j, grid_size, tol) for j in range(trials)], workers)
    stats = {
        "certificate_strong": sum(1 for r in results if r["strong"]),
        "certificate_not_strong": sum(1 for r in results if not r["strong"]),
        "agreements": sum(1 for r in results if r["counterexample"] is None),
        "strict_checked": sum(1 for r in results if r["strict_ok"] is not None),
        "strict_failures": sum(1 for r in results if r["strict_ok"] is False),
        "refined_points": sum(r["refined_points"] for r in results),
        "grid_size": grid_size,
        "tol": format_rational(tol),
        "degrees": _degree_hist(results),
    }
    return CampaignReport(
        theorem="nscm",
        trials=trials,
        applicable=trials,
        counterexamples=[r["counterexample"] for r in results if r["counterexample"]],
        statistics=stats,
        runtime=time.perf_counter() - start,
        spec=spec.to_dict(),
    )


def _diffmaj_trial(spec: GenSpec, trial: int) -> dict:
    pair, k = generate_diffmaj_pair(spec, trial_rng(spec.seed, trial))
    maj = majorizes(pair.lam, pair.mu)
    cert = strong_majorization_certificate(pair)
    confirmed = (
        maj.holds
        and maj.partial_sum_gaps[k - 1] == 0
        and cert.kind is CertificateKind.NOT_STRONG_MAJORIZATION
        and cert.witness_k is not None
        and cert.witness_k <= k
        and cert.witness_value < 0
    )
    out = {"degree": pair.n, "k": k, "witness_k": cert.witness_k, "counterexample": None}
    if not confirmed:
        out["counterexample"] = {
            **pair_to_dict(pair),
            "trial": trial,
            "k": k,
            "majorizes": maj.holds,
            "certificate": cert.kind.value,
            "witness_k": cert.witness_k,
        }
    return out


def search_diffmaj(spec: GenSpec, trials: int, workers: int | None = None) -> CampaignReport:
    """Majorization with an interior prefix equality must fail strong majorization at k0 <= k."""
    _check_trials(trials)
    n_min = spec.degree
    if n_min < 4:
        raise SpecInfeasible("search_diffmaj needs degree >= 4")
    start = time.perf_counter()
    results = _run_trials(_diffmaj_trial, [(spec, j) for j in range(trials)], workers)
    stats = {
        "confirmations": sum(1 for r in results if r["counterexample"] is None),
        "witness_equals_k": sum(1 for r in results if r["witness_k"] == r["k"]),
        "witness_below_k": sum(1 for r in results if r["witness_k"] is not None
                               and r["witness_k"] < r["k"]),
        "degrees": _degree_hist(results),
    }
    return CampaignReport(
        theorem="diffmaj",
        trials=trials,
        applicable=trials,
        counterexamples=[r["counterexample"] for r in results if r["counterexample"]],
        statistics=stats,
        runtime=time.perf_counter() - start,
        spec=spec.to_dict(),
    )


def neighborhood_sweep(pair: PolyPair, radius, samples: int, seed: int = 0) -> list[dict]:
    """Perturb mu by at most ``radius`` per root (sums re-equalized) and certify each.

    Exploratory only: reports how many nearby pairs still fail strong
    majorization, with no claim attached.
    """
    radius = as_rational(radius)
    out = []
    for j in range(samples):
        rng = trial_rng(seed, j)
        D = 2**16
        mu = [x + radius * Fraction(int(rng.integers(-D, D + 1)), D) for x in pair.mu]
        shift = (pair.lam.total() - sum(mu, Fraction(0))) / pair.n
        cand = PolyPair.from_roots(pair.lam, [x + shift for x in mu])
        if not common_interlacer_check(cand).has_common_interlacer:
            continue
        try:
            cert = strong_majorization_certificate(cand)
        except DegenerateEmpty:
            continue
        out.append({**pair_to_dict(cand), "majorizes": majorizes(cand.lam, cand.mu).holds,
                    "certificate": cert.kind.value, "witness_k": cert.witness_k})
    return out


__all__ = [
    "GenSpec", "CampaignReport", "generate_pair", "generate_diffmaj_pair", "campaign_ncm",
    "campaign_nscm", "search_diffmaj", "neighborhood_sweep", "trial_rng", "RNG_ALGORITHM",
]
