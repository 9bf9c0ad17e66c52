"""Subset-sum gadget instances and count recovery.

These constructors turn a cardinality-constrained subset-sum instance into
a stochastic point set whose hull-measure tail probabilities encode the
number of solutions.  They exist as an end-to-end correctness harness: a
probability engine is healthy iff the recovered counts are the true
natural numbers, so every stated geometric property is re-verified exactly
at construction time instead of being trusted.

Area encoding: an outer chain of 2n+1 points in convex position where each
optional notch triangle has area exactly b * a_i, so hull areas of
full-chain samples are G + b * (subset sum).

Perimeter encoding: a 4n-point equilateral-edge chain (every edge has
length exactly c) plus one shortcut point per optional vertex, placed on
the perpendicular bisector so that the shortcut edges measure within
[c - a_i, c - a_i + 1/(2n)); floors of sample perimeters then read off
subset sums.  The shortcut points are found by binary search on the
squared bisector offset, which keeps all coordinates rational (the offset
itself may be irrational; only its square is ever needed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .errors import NonIntegralCount, PropertyViolation
from .geometry import Point, convex_hull, orient, squared_distance, triangle_area
from .model import ONE, StochasticInstance

PrEngine = Callable[[int], Fraction]


@dataclass(frozen=True)
class SubsetSumInstance:
    """Positive naturals, a target, and an optional subset-size constraint."""

    values: tuple[int, ...]
    target: int
    cardinality: Optional[int] = None

    def __post_init__(self):
        if not self.values:
            raise ValueError("need at least one value")
        for v in self.values:
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"values must be positive naturals, got {v!r}")
        if self.target < 0:
            raise ValueError("target must be a natural number")
        if self.cardinality is not None and not 1 <= self.cardinality <= len(self.values):
            raise ValueError("cardinality constraint out of range")

    @property
    def n(self) -> int:
        return len(self.values)


def count_k_subsets(values: Sequence[int], target: int, k: int) -> int:
    """Reference count of k-element index sets summing to the target."""
    return sum(
        1 for combo in combinations(range(len(values)), k)
        if sum(values[i] for i in combo) == target
    )


def pad_to_fixed_cardinality(ssi: SubsetSumInstance, k: int) -> SubsetSumInstance:
    """Shift every value by M = 1 + sum(values) and the target by k*M, after
    which only k-element subsets can reach the new target."""
    if not 1 <= k <= ssi.n:
        raise ValueError("k out of range")
    m = 1 + sum(ssi.values)
    return SubsetSumInstance(
        tuple(v + m for v in ssi.values), ssi.target + k * m, k
    )


# ---------------------------------------------------------------------------
# Area gadget


@dataclass(frozen=True)
class AreaGadget:
    """2n+1 points, all with presence probability rho.  Point order in the
    instance: p1, q1, p2, q2, ..., pn, qn, p(n+1) (the clockwise convex
    order)."""

    instance: StochasticInstance
    ssi: SubsetSumInstance
    rho: Fraction
    G: int
    b: int
    scale: int

    @property
    def n(self) -> int:
        return self.ssi.n


def _require(cond: bool, tag: str, message: str) -> None:
    if not cond:
        raise PropertyViolation(tag, message)


def build_area_gadget(ssi: SubsetSumInstance, rho) -> AreaGadget:
    """Construct and exhaustively verify the area gadget."""
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ValueError("rho must lie strictly between 0 and 1")
    if ssi.cardinality is None:
        raise ValueError("gadget needs a cardinality-constrained instance; pad first")
    n = ssi.n
    a = ssi.values
    a_max = max(a)
    scale = 2 * n * a_max
    b = 4 * n * a_max

    p = [Point.of(scale * (2 * i - 1) ** 2, scale * (2 * i - 1)) for i in range(1, n + 2)]
    s = [Point.of(scale * (2 * i) ** 2, scale * (2 * i)) for i in range(1, n + 1)]
    q = []
    for i in range(1, n + 1):
        lam = Fraction(a[i - 1], n * a_max)
        mid = Point((p[i - 1].x + p[i].x) / 2, (p[i - 1].y + p[i].y) / 2)
        q.append(Point(mid.x + lam * (s[i - 1].x - mid.x), mid.y + lam * (s[i - 1].y - mid.y)))

    ring: list[Point] = []
    for i in range(n):
        ring.append(p[i])
        ring.append(q[i])
    ring.append(p[n])

    # Clockwise convex position over the full cyclic order.
    m = len(ring)
    for i in range(m):
        t = orient(ring[i], ring[(i + 1) % m], ring[(i + 2) % m])
        _require(
            t == -1,
            "convex-order",
            f"cyclic triple at position {i} turns {t}, expected -1 (clockwise)",
        )

    for pt in ring:
        _require(
            pt.x.denominator == 1 and pt.y.denominator == 1,
            "rational-coordinates",
            f"expected integer scaled coordinates, got {pt}",
        )

    total = sum(a)
    for j in range(n):
        area = triangle_area(p[j], q[j], p[j + 1])
        _require(
            area == b * a[j],
            "notch-area",
            f"triangle {j} has area {area}, expected {b * a[j]}",
        )

    g_area = convex_hull(p).area()
    _require(g_area.denominator == 1, "hull-area-integral", f"G = {g_area} is not natural")
    G = int(g_area)

    bound = b * total
    for i in range(n - 1):
        area = triangle_area(q[i], p[i + 1], q[i + 1])
        _require(
            area > bound,
            "dominance",
            f"triangle (q{i + 1}, p{i + 2}, q{i + 2}) area {area} <= {bound}",
        )
    if n >= 2:
        for tag, tri in (
            ("dominance", (p[0], q[0], p[n])),
            ("dominance", (p[0], q[n - 1], p[n])),
        ):
            area = triangle_area(*tri)
            _require(area > bound, tag, f"corner triangle area {area} <= {bound}")

    inst = StochasticInstance(tuple(ring), tuple([rho] * m))
    return AreaGadget(inst, ssi, rho, G, b, scale)


def recover_area_count(
    gadget: AreaGadget,
    t: int,
    k: int,
    rho,
    pr_ge: PrEngine,
) -> int:
    """f(t) from two tail queries:
    f(t) * rho**(n+k+1) * (1-rho)**(n-k) = Pr[A >= G+bt] - Pr[A >= G+bt+1]."""
    rho = Fraction(rho)
    n = gadget.n
    w = gadget.G + gadget.b * t
    diff = Fraction(pr_ge(w)) - Fraction(pr_ge(w + 1))
    denom = rho ** (n + k + 1) * (ONE - rho) ** (n - k)
    quotient = diff / denom
    if quotient.denominator != 1 or quotient < 0:
        raise NonIntegralCount(
            f"recovered count {quotient} is not a natural number"
        )
    return int(quotient)


# ---------------------------------------------------------------------------
# Perimeter gadget


@dataclass(frozen=True)
class PerimeterGadget:
    """4n chain points (presence 1 except the optional s-points at rho) plus
    n certain shortcut points.  Point order in the instance:
    p1, s1, p2, ..., pn, sn, p(n+1), z1, ..., z(2n-1), q1, ..., qn."""

    instance: StochasticInstance
    ssi: SubsetSumInstance
    rho: Fraction
    L: int
    c: int
    eps_slack: Fraction

    @property
    def n(self) -> int:
        return self.ssi.n


def _edge_vector(c: int, k: int) -> Point:
    den = k * k + 1
    return Point(Fraction(c * (k * k - 1), den), Fraction(c * 2 * k, den))


def _bisector_offset_sq(base_sq: Fraction, lo_target: Fraction, slack: Fraction) -> Fraction:
    """Smallest dyadic tau (by bisection) with lo_target <= tau^2 * base_sq
    < lo_target + slack; returns tau.  All comparisons on squares."""
    lo = Fraction(0)
    hi = Fraction(1)
    if base_sq < lo_target:
        raise PropertyViolation("shortcut-reach", "bisector too short for the target distance")
    while hi * hi * base_sq - lo_target >= slack:
        mid = (lo + hi) / 2
        if mid * mid * base_sq >= lo_target:
            hi = mid
        else:
            lo = mid
    return hi


def build_perimeter_gadget(ssi: SubsetSumInstance, rho) -> PerimeterGadget:
    """Construct and exhaustively verify the perimeter gadget."""
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ValueError("rho must lie strictly between 0 and 1")
    if ssi.cardinality is None:
        raise ValueError("gadget needs a cardinality-constrained instance; pad first")
    n = ssi.n
    a = ssi.values
    c = 320 * n ** 4 * max(a)
    eps = Fraction(1, 2 * n)

    vecs = [_edge_vector(c, k) for k in range(1, 2 * n + 1)]
    p = [Point.of(0, 0)]
    s = []
    for i in range(n):
        s.append(p[i] + vecs[2 * i])
        p.append(s[i] + vecs[2 * i + 1])
    z = [p[n] - vecs[0]]
    for j in range(1, 2 * n - 1):
        z.append(z[j - 1] - vecs[j])

    chain: list[Point] = []
    for i in range(n):
        chain.append(p[i])
        chain.append(s[i])
    chain.append(p[n])
    chain.extend(z)
    _require(len(chain) == 4 * n, "chain-size", f"expected 4n points, got {len(chain)}")

    c_sq = Fraction(c * c)
    m = len(chain)
    for i in range(m):
        d = squared_distance(chain[i], chain[(i + 1) % m])
        _require(
            d == c_sq,
            "edge-length",
            f"chain edge {i} has squared length {d}, expected {c_sq}",
        )
        t = orient(chain[i], chain[(i + 1) % m], chain[(i + 2) % m])
        _require(
            t == -1,
            "convex-order",
            f"cyclic triple at position {i} turns {t}, expected -1 (clockwise)",
        )
    L = 4 * n * c

    q = []
    for i in range(n):
        mid = Point((p[i].x + p[i + 1].x) / 2, (p[i].y + p[i + 1].y) / 2)
        base_sq = squared_distance(s[i], mid)
        d_sq = squared_distance(p[i], mid)
        target = Fraction((c - a[i]) * (c - a[i])) - d_sq
        _require(target > 0, "shortcut-reach", f"(c - a_{i + 1})^2 <= |p m|^2")
        tau = _bisector_offset_sq(base_sq, target, eps * eps)
        _require(0 < tau < 1, "shortcut-interior", f"tau = {tau} not strictly inside")
        qi = Point(mid.x + tau * (s[i].x - mid.x), mid.y + tau * (s[i].y - mid.y))
        left = squared_distance(p[i], qi)
        right = squared_distance(qi, p[i + 1])
        _require(left == right, "shortcut-symmetric", "shortcut point off the bisector")
        lo_sq = Fraction((c - a[i]) * (c - a[i]))
        hi_sq = lo_sq + eps * eps
        _require(
            lo_sq <= left < hi_sq,
            "shortcut-length",
            f"|p q|^2 = {left} outside [{lo_sq}, {hi_sq})",
        )
        same_side = orient(p[i], p[i + 1], qi) == orient(p[i], p[i + 1], s[i])
        _require(same_side, "shortcut-side", "shortcut point on the wrong side")
        q.append(qi)

    points = tuple(chain) + tuple(q)
    probs = []
    s_set = {pt for pt in s}
    for pt in chain:
        probs.append(rho if pt in s_set else ONE)
    probs.extend([ONE] * n)
    inst = StochasticInstance(points, tuple(probs))
    return PerimeterGadget(inst, ssi, rho, L, c, eps)


def recover_perimeter_count(
    gadget: PerimeterGadget,
    t: int,
    k: int,
    rho,
    pr_ge: PrEngine,
) -> int:
    """f(t) from two tail queries:
    f(t) * (1-rho)**k * rho**(n-k) = Pr[P >= L-2t] - Pr[P >= L-2t+1]."""
    rho = Fraction(rho)
    n = gadget.n
    w = gadget.L - 2 * t
    diff = Fraction(pr_ge(w)) - Fraction(pr_ge(w + 1))
    denom = (ONE - rho) ** k * rho ** (n - k)
    quotient = diff / denom
    if quotient.denominator != 1 or quotient < 0:
        raise NonIntegralCount(
            f"recovered count {quotient} is not a natural number"
        )
    return int(quotient)
