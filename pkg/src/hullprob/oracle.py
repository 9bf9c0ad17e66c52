"""Ground truth by exhaustive enumeration.

Walks the whole sample space (restricted to points whose presence is
actually uncertain), builds every hull exactly, and produces the exact
distribution of the chosen measure.  Everything else in the library is
tested against this module, so it shares no code path with the chain
engine beyond the geometry kernel.

Perimeter values are kept as exact square-root expressions; equal values
merge through their canonical radical form, so the distribution stays exact
and comparisons against thresholds are certified rather than floating.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .dp import WeightAssignment
from .errors import DegenerateInstance, EmptyOthers, TooLarge
from .geometry import (
    AREA,
    PERIMETER,
    Hull,
    Point,
    check_measure,
    convex_hull,
    hull_measure,
    max_extremal_triangle,
)
from .model import ONE, StochasticInstance
from .radicals import SqrtSum, compare

DEFAULT_CAP = 20


@dataclass(frozen=True)
class DistributionTable:
    """Sorted exact distribution of a hull measure.

    ``entries`` pairs each distinct value (Fraction for area, SqrtSum for
    perimeter) with its exact probability; probabilities sum to one.
    """

    measure: str
    entries: tuple[tuple[object, Fraction], ...]
    digest: str

    def pr_ge(self, w) -> Fraction:
        total = Fraction(0)
        for value, prob in self.entries:
            if _at_least(value, w):
                total += prob
        return total

    def expectation(self):
        if self.measure == AREA:
            total = Fraction(0)
            for value, prob in self.entries:
                total += value * prob
            return total
        total = SqrtSum.from_rational(0)
        for value, prob in self.entries:
            total = total + value * prob
        return total

    def support_values(self) -> tuple:
        return tuple(v for v, _ in self.entries)


def _at_least(value, w) -> bool:
    if isinstance(value, SqrtSum) or isinstance(w, SqrtSum):
        return compare(value, w) >= 0
    return value >= w


def instance_digest(inst: StochasticInstance) -> str:
    blob = ";".join(
        f"{p.x}:{p.y}:{q}" for p, q in zip(inst.points, inst.probs)
    ).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _enumerate_samples(inst: StochasticInstance, cap: int):
    """Yield (point tuple sorted lexicographically, probability) over the
    sample space.  Points with probability 0/1 are resolved up front, so the
    loop is 2**(number of uncertain points)."""
    if inst.n > cap:
        raise TooLarge(f"instance has {inst.n} points; oracle cap is {cap}")
    fixed = [i for i in inst.certain_indices()]
    uncertain = inst.uncertain_indices()
    base_prob = ONE
    pts = inst.points
    for mask in range(1 << len(uncertain)):
        prob = base_prob
        chosen = list(fixed)
        for bit, i in enumerate(uncertain):
            if mask >> bit & 1:
                prob *= inst.probs[i]
                chosen.append(i)
            else:
                prob *= ONE - inst.probs[i]
        yield sorted(pts[i] for i in chosen), prob


def exact_distribution(
    inst: StochasticInstance, measure: str, cap: int = DEFAULT_CAP
) -> DistributionTable:
    """Exact measure distribution by full enumeration."""
    check_measure(measure)
    if measure == AREA:
        acc: dict = {}
        for pts, prob in _enumerate_samples(inst, cap):
            value = convex_hull(pts, presorted=True).area()
            acc[value] = acc.get(value, Fraction(0)) + prob
        entries = tuple(sorted(acc.items()))
    else:
        by_key: dict = {}
        for pts, prob in _enumerate_samples(inst, cap):
            value = convex_hull(pts, presorted=True).perimeter_exact()
            key = value.key()
            if key in by_key:
                by_key[key] = (value, by_key[key][1] + prob)
            else:
                by_key[key] = (value, prob)
        entries = tuple(
            sorted(by_key.values(), key=cmp_to_key(lambda a, b: compare(a[0], b[0])))
        )
    total = sum(p for _, p in entries)
    if total != 1:
        raise AssertionError(f"distribution probabilities sum to {total}, not 1")
    return DistributionTable(measure, entries, instance_digest(inst))


def oracle_pr_ge(
    inst: StochasticInstance, measure: str, w, cap: int = DEFAULT_CAP
) -> Fraction:
    return exact_distribution(inst, measure, cap).pr_ge(w)


def oracle_expected(inst: StochasticInstance, measure: str, cap: int = DEFAULT_CAP):
    return exact_distribution(inst, measure, cap).expectation()


# ---------------------------------------------------------------------------
# Weighted hulls


def _chain_from_topmost(hull: Hull) -> list[Point]:
    """Hull vertices in counter-clockwise order starting at the topmost one."""
    k = hull.topmost_index()
    verts = hull.vertices
    return [verts[(k + i) % len(verts)] for i in range(len(verts))]


def sample_weighted_measure(
    points: Sequence[Point],
    index_of: dict,
    weights: WeightAssignment,
) -> int:
    """Weighted measure of one sample under the engine's semantics: 0 for
    hulls on at most two points; otherwise the fan-triangle weights from the
    sample's topmost vertex (area mode) or the full boundary-edge weight sum
    (perimeter mode)."""
    hull = convex_hull(points)
    if hull.degenerate:
        return 0
    chain = _chain_from_topmost(hull)
    ids = [index_of[p] for p in chain]
    if weights.mode == AREA:
        return sum(
            weights.weight(ids[i], ids[i + 1]) for i in range(1, len(ids) - 1)
        )
    total = weights.weight(ids[0], ids[1])
    for i in range(1, len(ids) - 1):
        total += weights.weight(ids[i], ids[i + 1])
    total += weights.weight(ids[-1], ids[0])
    return total


def weighted_oracle_pr_ge(
    inst: StochasticInstance, weights: WeightAssignment, w: int, cap: int = DEFAULT_CAP
) -> Fraction:
    """Enumeration-based Pr[weighted hull measure >= w]."""
    index_of = {p: i for i, p in enumerate(inst.points)}
    if len(index_of) != inst.n:
        raise DegenerateInstance("coincident points")
    total = Fraction(0)
    for pts, prob in _enumerate_samples(inst, cap):
        if sample_weighted_measure(pts, index_of, weights) >= w:
            total += prob
    return total


def weighted_oracle_pr_ge_given_top(
    inst: StochasticInstance,
    apex: int,
    weights: WeightAssignment,
    w: int,
    cap: int = DEFAULT_CAP,
) -> Fraction:
    """Enumeration-based Pr[weighted measure >= w | apex is topmost]:
    enumerate the points strictly below the apex and condition the apex in."""
    pts = inst.points
    ya = pts[apex].y
    below = [
        i
        for i in range(inst.n)
        if i != apex and inst.probs[i] > 0 and pts[i].y < ya
    ]
    if len(below) > cap:
        raise TooLarge(f"{len(below)} points below the apex; oracle cap is {cap}")
    index_of = {p: i for i, p in enumerate(pts)}
    total = Fraction(0)
    for mask in range(1 << len(below)):
        prob = ONE
        chosen = [apex]
        for bit, i in enumerate(below):
            if mask >> bit & 1:
                prob *= inst.probs[i]
                chosen.append(i)
            else:
                prob *= ONE - inst.probs[i]
        sample_pts = [pts[i] for i in chosen]
        if sample_weighted_measure(sample_pts, index_of, weights) >= w:
            total += prob
    return total


# ---------------------------------------------------------------------------
# Extremal-triangle sandwich harness


@dataclass(frozen=True)
class LambdaReport:
    measure: str
    lam: object
    hull_value: object
    ratio: float
    within_bounds: bool


def check_lambda_bounds(
    points: Sequence[Point], measure: str, tolerance: Fraction = Fraction(1, 10**9)
) -> LambdaReport:
    """Verify that the largest triangle anchored at the topmost and
    bottommost points sandwiches the hull measure: lam <= m(X) <= 4*lam for
    area (exact) and lam <= m(X) <= 7*lam for perimeter (certified, with the
    given tolerance)."""
    check_measure(measure)
    pts = list(points)
    if len(pts) < 3:
        raise EmptyOthers("need at least three points")
    top = max(pts, key=lambda p: (p.y, p.x))
    bottom = min(pts, key=lambda p: (p.y, p.x))
    others = [p for p in pts if p not in (top, bottom)]
    lam, _ = max_extremal_triangle(top, bottom, others, measure)
    hull = convex_hull(pts)
    if measure == AREA:
        value = hull.area()
        ok = lam <= value <= 4 * lam
        ratio = float(value / lam) if lam else float("inf")
    else:
        value = hull.perimeter_exact()
        low = (value - lam + tolerance).sign() >= 0
        high = (lam * 7 - value + tolerance).sign() >= 0
        ok = low and high
        ratio = float(value) / float(lam)
    return LambdaReport(measure, lam, value, ratio, ok)
