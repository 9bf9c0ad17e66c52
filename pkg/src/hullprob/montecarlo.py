"""Monte Carlo estimation of Pr[measure >= w] with Chernoff-Hoeffding
sample sizes and bit-reproducible trials.

The trial count N = ceil(ln(2/delta) / (2 eps^2)) guarantees
|estimate - truth| < eps with probability at least 1 - delta.  Trials use
per-trial seeds derived from the master seed (see :mod:`hullprob.rng`), so
the estimate is a pure function of (instance, w, plan) regardless of thread
count or backend; the compiled trial loop is a drop-in replacement for the
pure one and the parity tests assert identical success counts.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath

from . import _kernels, rng
from .errors import InvalidParams
from .geometry import AREA, PERIMETER, Point, convex_hull
from .model import StochasticInstance
from .radicals import SqrtSum, compare
from .rational import ceil_fraction

Number = Union[int, float, Fraction]

_MASK_CACHE_LIMIT_POINTS = 24


def worker_count() -> int:
    """HULLPROB_THREADS caps internal parallelism (default 1)."""
    raw = os.environ.get("HULLPROB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sample_count(eps: Number, delta: Number) -> int:
    """N = ceil(ln(2/delta) / (2 eps^2)), evaluated with certified precision
    so the ceiling is exact even near integer boundaries."""
    eps = Fraction(eps)
    delta = Fraction(delta)
    if not 0 < eps < 1 or not 0 < delta < 1:
        raise InvalidParams("eps and delta must lie in (0, 1)")
    factor = Fraction(1, 2) / (eps * eps)
    for dps in (40, 80, 160, 320):
        with mpmath.workdps(dps):
            x = mpmath.mpf(factor.numerator) / factor.denominator * mpmath.log(
                mpmath.mpf(2 * delta.denominator) / delta.numerator
            )
            n = int(mpmath.ceil(x))
            # Accept only if x is safely away from the integer below n.
            margin = mpmath.mpf(10) ** (8 - dps)
            if mpmath.fabs(x - mpmath.nint(x)) > margin:
                return max(1, n)
    return max(1, n)


@dataclass(frozen=True)
class MCPlan:
    """Sampling plan: accuracy eps, failure budget delta, the induced trial
    count, and the master seed all trials derive from."""

    eps: Fraction
    delta: Fraction
    n_trials: int
    master_seed: int

    @classmethod
    def make(cls, eps: Number, delta: Number, master_seed: int = 0) -> "MCPlan":
        eps = Fraction(eps)
        delta = Fraction(delta)
        return cls(eps, delta, sample_count(eps, delta), master_seed & rng.MASK64)


@dataclass(frozen=True)
class MCResult:
    successes: int
    n_trials: int
    master_seed: int

    @property
    def estimate(self) -> float:
        return self.successes / self.n_trials

    def __float__(self) -> float:
        return self.estimate


def _measure_decider(
    inst: StochasticInstance,
    sorted_points: Sequence[Point],
    measure,
    w,
) -> Callable[[int], bool]:
    """Decision function mask-bits -> [measure >= w], with exact comparisons
    (certified for perimeter) and a per-mask cache on small instances."""
    if callable(measure):
        evaluator = measure
        def decide_raw(bits: int) -> bool:
            pts = [p for i, p in enumerate(sorted_points) if bits >> i & 1]
            return evaluator(pts) >= w
    elif measure == AREA:
        w_area = Fraction(w)
        def decide_raw(bits: int) -> bool:
            pts = [p for i, p in enumerate(sorted_points) if bits >> i & 1]
            return convex_hull(pts, presorted=True).area() >= w_area
    elif measure == PERIMETER:
        w_perim = w if isinstance(w, SqrtSum) else Fraction(w)
        def decide_raw(bits: int) -> bool:
            pts = [p for i, p in enumerate(sorted_points) if bits >> i & 1]
            value = convex_hull(pts, presorted=True).perimeter_exact()
            return compare(value, w_perim) >= 0
    else:
        raise ValueError(f"unknown measure {measure!r}")

    if inst.n > _MASK_CACHE_LIMIT_POINTS:
        return decide_raw
    cache: dict[int, bool] = {}
    def decide(bits: int) -> bool:
        hit = cache.get(bits)
        if hit is None:
            hit = cache[bits] = decide_raw(bits)
        return hit
    return decide


def _pure_success_count(
    thresholds: list[int],
    sorted_of_orig: list[int],
    decide: Callable[[int], bool],
    master_seed: int,
    start: int,
    stop: int,
) -> int:
    successes = 0
    n = len(thresholds)
    for trial in range(start, stop):
        gen = rng.SplitMix64(rng.trial_seed(master_seed, trial))
        bits = 0
        for i in range(n):
            draw = gen.next_u64()
            if draw < thresholds[i]:
                bits |= 1 << sorted_of_orig[i]
        if decide(bits):
            successes += 1
    return successes


def _compiled_area_args(inst: StochasticInstance, order: list[int], w) -> Optional[tuple]:
    """Scale coordinates to a common integer grid and precompute the integer
    shoelace threshold; None when anything exceeds the compiled kernel's
    word-size limits."""
    mod = _kernels.mc_area_module()
    if mod is None:
        return None
    w = Fraction(w)
    scale = 1
    for p in inst.points:
        scale = math.lcm(scale, p.x.denominator, p.y.denominator)
    if scale > 1 << 20:
        return None
    xs, ys = [], []
    for i in order:
        p = inst.points[i]
        xs.append(int(p.x * scale))
        ys.append(int(p.y * scale))
    bound = max((abs(v) for v in xs + ys), default=0)
    n = inst.n
    if bound > 1 << 28 or n > 1 << 10:
        return None
    # area >= w  <=>  shoelace sum (= 2 A scale^2) >= ceil(2 w scale^2)
    smin = ceil_fraction(2 * w * scale * scale)
    if abs(smin) >= 1 << 126 or n * 4 * (bound + 1) * (bound + 1) >= 1 << 126:
        return None
    return xs, ys, smin


def mc_pr_measure_ge(
    inst: StochasticInstance,
    measure,
    w,
    plan: MCPlan,
) -> MCResult:
    """Estimate Pr[measure(sample hull) >= w] from ``plan.n_trials``
    independent samples.

    ``measure`` is ``"area"``, ``"perimeter"`` or a callable mapping the
    sampled points to a comparable value.  No general-position requirement:
    the hull construction handles every degeneracy, and ties with w count
    as successes.  Deterministic given the plan.
    """
    n = inst.n
    order = sorted(range(n), key=lambda i: inst.points[i])
    sorted_points = [inst.points[i] for i in order]
    sorted_of_orig = [0] * n
    for pos, i in enumerate(order):
        sorted_of_orig[i] = pos
    # Inclusion decisions are drawn in original point order.
    thresholds = [rng.presence_threshold(q) for q in inst.probs]
    pos_thresholds = thresholds  # original order; bits are remapped to sorted positions

    workers = worker_count()
    n_trials = plan.n_trials

    compiled_args = None
    if measure == AREA:
        compiled_args = _compiled_area_args(inst, order, w)

    def run_range(start: int, stop: int) -> int:
        if compiled_args is not None:
            xs, ys, smin = compiled_args
            mod = _kernels.mc_area_module()
            return mod.mc_area_success_count(
                xs,
                ys,
                [sorted_of_orig[i] for i in range(n)],
                pos_thresholds,
                smin,
                plan.master_seed,
                start,
                stop,
            )
        decide = _measure_decider(inst, sorted_points, measure, w)
        return _pure_success_count(
            pos_thresholds,
            sorted_of_orig,
            decide,
            plan.master_seed,
            start,
            stop,
        )

    if workers <= 1 or n_trials < 4 * workers:
        successes = run_range(0, n_trials)
    else:
        chunk = (n_trials + workers - 1) // workers
        ranges = [
            (k * chunk, min((k + 1) * chunk, n_trials)) for k in range(workers)
        ]
        ranges = [r for r in ranges if r[0] < r[1]]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(lambda r: run_range(*r), ranges))
    return MCResult(successes, n_trials, plan.master_seed)
