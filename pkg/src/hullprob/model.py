"""Stochastic point instances and the elementary event probabilities.

An instance is a set of planar points with independent presence
probabilities.  The functions here compute, in exact rational arithmetic,
the building-block event probabilities the exact engine and the sandwich
approximations consume:

* ``pr_topmost``          -- a given point is the topmost sampled point,
* ``pr_top_bottom``       -- given points are topmost and bottommost,
* ``pr_following_vertex`` -- a given point directly follows the topmost one
                             on the counter-clockwise hull boundary,
* ``pr_chain_next``       -- gift-wrapping step probabilities inside the
                             remaining-work wedge of the chain recursion,
* ``pr_lambda_ge``        -- the largest top/bottom-anchored triangle
                             reaches a threshold,
* ``pr_hull_edge`` and exact expectations of area/perimeter.

Everything is pure; instances are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import rng
from .errors import DegenerateInstance
from .geometry import (
    AREA,
    Point,
    SqrtSum,
    check_measure,
    edge_length,
    orient,
    sweep_order,
    triangle_area,
    triangle_perimeter,
)

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class StochasticInstance:
    """Planar points with independent presence probabilities."""

    points: tuple[Point, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) != len(self.probs):
            raise ValueError("points and probs must align")
        object.__setattr__(self, "points", tuple(Point.of(p[0], p[1]) for p in self.points))
        object.__setattr__(self, "probs", tuple(Fraction(q) for q in self.probs))
        for q in self.probs:
            if not 0 <= q <= 1:
                raise ValueError(f"probability out of [0, 1]: {q}")

    @classmethod
    def build(cls, rows: Iterable[tuple]) -> "StochasticInstance":
        """rows of (x, y, prob)."""
        pts, probs = [], []
        for x, y, q in rows:
            pts.append(Point.of(x, y))
            probs.append(Fraction(q))
        return cls(tuple(pts), tuple(probs))

    @property
    def n(self) -> int:
        return len(self.points)

    def prob(self, i: int) -> Fraction:
        return self.probs[i]

    def uncertain_indices(self) -> list[int]:
        return [i for i, q in enumerate(self.probs) if 0 < q < 1]

    def certain_indices(self) -> list[int]:
        return [i for i, q in enumerate(self.probs) if q == 1]

    def live_indices(self) -> list[int]:
        """Indices with positive probability; zero-probability points can be
        ignored by every exact computation."""
        return [i for i, q in enumerate(self.probs) if q > 0]


@dataclass(frozen=True)
class ValidationReport:
    collinear_triples: tuple[tuple[int, int, int], ...]
    duplicate_x: tuple[tuple[int, int], ...]
    duplicate_y: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not (self.collinear_triples or self.duplicate_x or self.duplicate_y)

    def describe(self) -> str:
        if self.ok:
            return "general position holds"
        bits = []
        if self.collinear_triples:
            bits.append(f"collinear triples: {list(self.collinear_triples)}")
        if self.duplicate_x:
            bits.append(f"shared vertical lines: {list(self.duplicate_x)}")
        if self.duplicate_y:
            bits.append(f"shared horizontal lines: {list(self.duplicate_y)}")
        return "; ".join(bits)


def validate(
    inst: StochasticInstance, indices: Optional[Sequence[int]] = None
) -> ValidationReport:
    """Report every general-position violation with offending indices.

    Exact tests; never raises.  ``indices`` restricts the check to a subset
    of the points (exact engines validate the positive-probability subset).
    """
    pts = inst.points
    idx = list(range(inst.n)) if indices is None else sorted(indices)
    coll = []
    for ii in range(len(idx)):
        for jj in range(ii + 1, len(idx)):
            for kk in range(jj + 1, len(idx)):
                i, j, k = idx[ii], idx[jj], idx[kk]
                if orient(pts[i], pts[j], pts[k]) == 0:
                    coll.append((i, j, k))
    dup_x = [
        (idx[i], idx[j])
        for i in range(len(idx))
        for j in range(i + 1, len(idx))
        if pts[idx[i]].x == pts[idx[j]].x
    ]
    dup_y = [
        (idx[i], idx[j])
        for i in range(len(idx))
        for j in range(i + 1, len(idx))
        if pts[idx[i]].y == pts[idx[j]].y
    ]
    return ValidationReport(tuple(coll), tuple(dup_x), tuple(dup_y))


def require_general_position(
    inst: StochasticInstance, indices: Optional[Sequence[int]] = None
) -> None:
    report = validate(inst, indices)
    if not report.ok:
        raise DegenerateInstance(report.describe())


@dataclass(frozen=True)
class Sample:
    """A drawn subset: ``mask`` holds the included point indices."""

    mask: frozenset[int]
    source: StochasticInstance
    seed: int

    def points(self) -> tuple[Point, ...]:
        return tuple(self.source.points[i] for i in sorted(self.mask))


def draw_sample(inst: StochasticInstance, seed: int) -> Sample:
    """One independent inclusion decision per point, one u64 draw each,
    deterministic in the seed."""
    thresholds = [rng.presence_threshold(q) for q in inst.probs]
    bits = rng.draw_mask(thresholds, seed)
    mask = frozenset(i for i in range(inst.n) if bits >> i & 1)
    return Sample(mask, inst, seed)


@dataclass(frozen=True)
class EventContext:
    """Conditioning data for the chain probabilities and the weighted engine.

    ``topmost`` is the point conditioned to be the topmost sampled one;
    ``bottommost`` (optional) additionally pins the bottommost point.
    ``support`` restricts the sample space to a subset of indices, and
    ``overrides`` replaces presence probabilities of conditioning points
    (the approximation pipeline forces the bottommost probability to 1).
    """

    inst: StochasticInstance
    topmost: int
    bottommost: Optional[int] = None
    support: Optional[frozenset[int]] = None
    overrides: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        sup = self.support
        if sup is None:
            sup = frozenset(range(self.inst.n))
        else:
            sup = frozenset(sup)
        object.__setattr__(self, "support", sup)
        if self.topmost not in sup:
            raise ValueError("topmost point must belong to the support")
        if self.bottommost is not None and self.bottommost not in sup:
            raise ValueError("bottommost point must belong to the support")
        allowed = {self.topmost, self.bottommost}
        for i in self.overrides:
            if i not in allowed:
                raise ValueError("probability overrides are allowed on conditioning points only")

    def prob(self, i: int) -> Fraction:
        q = self.overrides.get(i)
        return self.inst.probs[i] if q is None else Fraction(q)

    def below_topmost(self) -> list[int]:
        """Support indices with positive probability strictly below the
        horizontal line through the topmost point.  Zero-probability points
        are stripped (they cannot affect any event); a y tie among the rest
        is a degeneracy."""
        a = self.topmost
        pts = self.inst.points
        ya = pts[a].y
        out = []
        for i in sorted(self.support):
            if i == a or self.prob(i) == 0:
                continue
            if pts[i].y == ya:
                raise DegenerateInstance(
                    f"points {a} and {i} share a horizontal line"
                )
            if pts[i].y < ya:
                out.append(i)
        return out


# ---------------------------------------------------------------------------
# Elementary events


def pr_topmost(inst: StochasticInstance, a: int) -> Fraction:
    """Probability that point ``a`` is sampled and is the topmost sampled
    point: pi_a * prod_{y_r > y_a} (1 - pi_r).  Zero-probability points are
    stripped before the tie check."""
    pts = inst.points
    ya = pts[a].y
    acc = inst.probs[a]
    for i, p in enumerate(pts):
        if i == a or inst.probs[i] == 0:
            continue
        if p.y == ya:
            raise DegenerateInstance(f"points {a} and {i} share a horizontal line")
        if p.y > ya:
            acc *= ONE - inst.probs[i]
    return acc


def pr_top_bottom(inst: StochasticInstance, p: int, q: int) -> Fraction:
    """Probability that ``p`` is topmost and ``q`` bottommost among the
    sampled points (requires y_p > y_q)."""
    pts = inst.points
    yp, yq = pts[p].y, pts[q].y
    if yp <= yq:
        raise ValueError("expected y_p > y_q")
    acc = inst.probs[p] * inst.probs[q]
    for i, r in enumerate(pts):
        if i in (p, q) or inst.probs[i] == 0:
            continue
        if r.y in (yp, yq):
            raise DegenerateInstance(f"point {i} shares a horizontal line with {p} or {q}")
        if r.y > yp or r.y < yq:
            acc *= ONE - inst.probs[i]
    return acc


def pr_following_vertex(ctx: EventContext, b: int) -> Fraction:
    """Probability, under the topmost conditioning, that ``b`` is the hull
    vertex directly following the topmost point counter-clockwise.

    This requires ``b`` sampled and every supported point strictly right of
    the directed line topmost->b absent, so that all remaining sampled
    points lie to its left.
    """
    a = ctx.topmost
    pts = ctx.inst.points
    below = ctx.below_topmost()
    if b not in below:
        raise ValueError("b must be a supported point below the topmost one")
    acc = ctx.prob(b)
    for r in below:
        if r == b:
            continue
        side = orient(pts[a], pts[b], pts[r])
        if side == 0:
            raise DegenerateInstance(f"point {r} lies on the line through {a} and {b}")
        if side < 0:
            acc *= ONE - ctx.prob(r)
    return acc


@dataclass(frozen=True)
class ChainStepProbs:
    """Gift-wrapping step distribution in a wedge: candidates in sweep
    order, their probabilities, and the probability that the wedge holds no
    sampled point at all (the three sum to one)."""

    order: tuple[int, ...]
    probs: Mapping[int, Fraction]
    empty: Fraction


def wedge_members(ctx: EventContext, u: int, v: int) -> list[int]:
    """Supported points in the remaining-work wedge of the pair (u, v):
    below the topmost point, strictly left of topmost->u and strictly left
    of v->u."""
    a = ctx.topmost
    pts = ctx.inst.points
    out = []
    for r in ctx.below_topmost():
        if r in (u, v):
            continue
        s1 = orient(pts[a], pts[u], pts[r])
        s2 = s1 if v == a else orient(pts[v], pts[u], pts[r])
        if s1 == 0 or s2 == 0:
            raise DegenerateInstance(f"point {r} is collinear with a wedge boundary")
        if s1 > 0 and s2 > 0:
            out.append(r)
    return out


def pr_chain_next_all(ctx: EventContext, u: int, v: int) -> ChainStepProbs:
    """All next-vertex probabilities for a fixed wedge: one radial sort plus
    a running prefix product."""
    if u == v:
        raise ValueError("wedge needs two distinct points")
    pts = ctx.inst.points
    members = wedge_members(ctx, u, v)
    by_point = {pts[i]: i for i in members}
    ordered = (
        [by_point[p] for p in sweep_order(pts[u], pts[v], [pts[i] for i in members])]
        if members
        else []
    )
    probs: dict[int, Fraction] = {}
    prefix = ONE
    for i in ordered:
        probs[i] = prefix * ctx.prob(i)
        prefix *= ONE - ctx.prob(i)
    return ChainStepProbs(tuple(ordered), probs, prefix)


def pr_chain_next(ctx: EventContext, u: int, v: int, u_next: int) -> Fraction:
    step = pr_chain_next_all(ctx, u, v)
    if u_next not in step.probs:
        raise ValueError(f"point {u_next} is not in the wedge of ({u}, {v})")
    return step.probs[u_next]


# ---------------------------------------------------------------------------
# Extremal-triangle threshold events


def strip_points(ctx: EventContext) -> list[int]:
    """Supported points strictly between the horizontal lines of the
    topmost and bottommost conditioning points."""
    if ctx.bottommost is None:
        raise ValueError("context lacks a bottommost point")
    pts = ctx.inst.points
    yp = pts[ctx.topmost].y
    yq = pts[ctx.bottommost].y
    out = []
    for i in sorted(ctx.support):
        if i in (ctx.topmost, ctx.bottommost) or ctx.prob(i) == 0:
            continue
        y = pts[i].y
        if y in (yp, yq):
            raise DegenerateInstance(f"point {i} shares a horizontal line with a conditioning point")
        if yq < y < yp:
            out.append(i)
    return out


def triangle_measure(p: Point, q: Point, r: Point, measure: str):
    check_measure(measure)
    if measure == AREA:
        return triangle_area(p, q, r)
    return triangle_perimeter(p, q, r)


def _measure_at_least(value, z) -> bool:
    if isinstance(value, SqrtSum):
        return (value - z).sign() >= 0
    if isinstance(z, SqrtSum):
        return (z - value).sign() <= 0
    return value >= z


def pr_lambda_ge(ctx: EventContext, z, measure: str) -> Fraction:
    """Probability, under the top/bottom conditioning, that some sampled
    strip point forms a triangle of measure >= z with the two conditioning
    points: 1 - prod over qualifying points of (1 - pi)."""
    check_measure(measure)
    pts = ctx.inst.points
    p, q = pts[ctx.topmost], pts[ctx.bottommost]
    acc = ONE
    for i in strip_points(ctx):
        if _measure_at_least(triangle_measure(p, q, pts[i], measure), z):
            acc *= ONE - ctx.prob(i)
    return ONE - acc


def pr_lambda_in(ctx: EventContext, z1, z2, measure: str) -> Fraction:
    """Probability that the extremal-triangle measure lands in [z1, z2)."""
    return pr_lambda_ge(ctx, z1, measure) - pr_lambda_ge(ctx, z2, measure)


# ---------------------------------------------------------------------------
# Hull-edge probabilities and expectations


def pr_hull_edge(inst: StochasticInstance, u: int, v: int) -> Fraction:
    """Probability that the directed edge u->v appears on the
    counter-clockwise hull boundary of the sample: both sampled, everything
    strictly right of u->v absent.  Zero-probability points are ignored,
    including by the collinearity check (they cannot affect any event)."""
    pts = inst.points
    acc = inst.probs[u] * inst.probs[v]
    for r in range(inst.n):
        if r in (u, v) or inst.probs[r] == 0:
            continue
        side = orient(pts[u], pts[v], pts[r])
        if side == 0:
            raise DegenerateInstance(f"point {r} lies on the line through {u} and {v}")
        if side < 0:
            acc *= ONE - inst.probs[r]
    return acc


def _pr_exactly_pair(inst: StochasticInstance, u: int, v: int) -> Fraction:
    acc = inst.probs[u] * inst.probs[v]
    for r in range(inst.n):
        if r not in (u, v):
            acc *= ONE - inst.probs[r]
    return acc


def expected_measure(inst: StochasticInstance, measure: str):
    """Exact expectation of the hull measure over the sample distribution.

    Area: signed shoelace summed over directed-edge probabilities, an exact
    Fraction (two-point samples cancel automatically).  Perimeter: edge
    lengths weighted by edge probabilities, minus the two-point correction
    demanded by the degeneracy convention; returned as an exact
    :class:`SqrtSum`.

    Needs no collinear triple among positive-probability points (raised
    from the edge probabilities); shared vertical or horizontal lines are
    harmless here.
    """
    check_measure(measure)
    pts = inst.points
    live = inst.live_indices()
    if measure == AREA:
        total = ZERO
        for u in live:
            for v in live:
                if u == v:
                    continue
                w = pr_hull_edge(inst, u, v)
                if w:
                    total += Fraction(pts[u].x * pts[v].y - pts[v].x * pts[u].y, 2) * w
        return total
    total = SqrtSum.from_rational(0)
    for u in live:
        for v in live:
            if u == v:
                continue
            w = pr_hull_edge(inst, u, v)
            if w:
                total = total + edge_length(pts[u], pts[v]) * w
    for ui, u in enumerate(live):
        for v in live[ui + 1 :]:
            w = _pr_exactly_pair(inst, u, v)
            if w:
                total = total - edge_length(pts[u], pts[v]) * (2 * w)
    return total
