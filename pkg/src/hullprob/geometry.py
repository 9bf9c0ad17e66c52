"""Exact planar geometry kernel.

Points carry Fraction coordinates and every predicate (orientation, area
comparison, radial order) is decided in exact rational arithmetic; floating
point appears only in explicitly-approximate outputs such as Euclidean
distances.  All functions are pure and safe to call concurrently.

Degeneracy convention used everywhere in the library: a hull on 0, 1 or 2
points has area 0 *and* perimeter 0.  Sub-triangle samples therefore never
exceed a positive threshold, which keeps the exact engine, the enumeration
oracle and the Monte Carlo estimator in agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Sequence

from .errors import CollinearCandidates, EmptyOthers
from .radicals import SqrtSum

AREA = "area"
PERIMETER = "perimeter"
MEASURES = (AREA, PERIMETER)


def check_measure(measure: str) -> str:
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    return measure


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Fraction(x), Fraction(y))

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Signed cross product (a - o) x (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(p: Point, q: Point, r: Point) -> int:
    """+1 if r is strictly left of the directed line p->q, -1 if strictly
    right, 0 if the three points are collinear.  Exact."""
    c = cross(p, q, r)
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def triangle_area(p: Point, q: Point, r: Point) -> Fraction:
    """Exact area |cross| / 2; zero iff the points are collinear."""
    c = cross(p, q, r)
    return (c if c >= 0 else -c) / 2


def squared_distance(p: Point, q: Point) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def distance(p: Point, q: Point) -> float:
    """Euclidean distance as a binary float; relative error <= 2**-50.

    Exact comparisons between sums of distances must go through
    :mod:`hullprob.radicals` instead.
    """
    return math.sqrt(squared_distance(p, q))


def edge_length(p: Point, q: Point) -> SqrtSum:
    """Euclidean distance as an exact square-root expression."""
    return SqrtSum.sqrt(squared_distance(p, q))


def triangle_perimeter(p: Point, q: Point, r: Point) -> SqrtSum:
    return edge_length(p, q) + edge_length(q, r) + edge_length(r, p)


@dataclass(frozen=True)
class Hull:
    """Convex hull: vertices in counter-clockwise order starting at the
    lexicographically least vertex.  ``degenerate`` is true for hulls on
    fewer than three distinct points."""

    vertices: tuple[Point, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) <= 2

    def area(self) -> Fraction:
        if self.degenerate:
            return Fraction(0)
        verts = self.vertices
        acc = Fraction(0)
        for i, v in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            acc += v.x * w.y - w.x * v.y
        return acc / 2

    def squared_edge_lengths(self) -> tuple[Fraction, ...]:
        if self.degenerate:
            return ()
        verts = self.vertices
        return tuple(
            squared_distance(v, verts[(i + 1) % len(verts)])
            for i, v in enumerate(verts)
        )

    def perimeter_exact(self) -> SqrtSum:
        total = SqrtSum.from_rational(0)
        for sq in self.squared_edge_lengths():
            total = total + SqrtSum.sqrt(sq)
        return total

    def perimeter(self) -> float:
        return float(self.perimeter_exact())

    def topmost_index(self) -> int:
        """Index into ``vertices`` of the vertex with maximal y (unique under
        general position; ties broken by x for robustness)."""
        best = 0
        for i in range(1, len(self.vertices)):
            v, b = self.vertices[i], self.vertices[best]
            if (v.y, v.x) > (b.y, b.x):
                best = i
        return best


def convex_hull(points: Sequence[Point], presorted: bool = False) -> Hull:
    """Monotone chain with exact orientation tests.

    Handles empty input, repeated points and collinear sets; collinear
    interior points are removed (strict-turn filter).  With
    ``presorted=True`` the input must already be in lexicographic
    (x, then y) order and the function runs a single linear pass, which is
    the fast path the Monte Carlo estimator relies on.
    """
    pts = list(points)
    if not presorted:
        pts.sort()
    deduped: list[Point] = []
    for p in pts:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    pts = deduped
    if len(pts) <= 2:
        return Hull(tuple(pts))

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    verts = lower[:-1] + upper[:-1]
    if len(verts) <= 2:
        # All points collinear: keep the two extremes.
        verts = [pts[0], pts[-1]]
    return Hull(tuple(verts))


def hull_measure(h: Hull, measure: str):
    """Area as an exact Fraction, perimeter as an approximate float.

    For exact perimeter work use :meth:`Hull.perimeter_exact`.
    """
    check_measure(measure)
    if measure == AREA:
        return h.area()
    return h.perimeter()


def _halfplane_cmp(pivot: Point):
    """Comparator for points strictly inside one open half-plane around
    ``pivot``: r1 precedes r2 iff the ray pivot->r2 is counter-clockwise of
    pivot->r1.  Collinear candidates are a general-position violation."""

    def compare(r1: Point, r2: Point) -> int:
        s = orient(pivot, r1, r2)
        if s == 0:
            raise CollinearCandidates(
                f"candidates {r1} and {r2} are collinear with pivot {pivot}"
            )
        return -s

    return compare


def radial_order(
    pivot: Point, ref_from: Point, candidates: Iterable[Point]
) -> list[Point]:
    """Sort candidates by the counter-clockwise rotation of the ray
    pivot->candidate, starting at the direction ref_from->pivot extended
    through the pivot.

    Exact; angular ties (two candidates collinear with the pivot) raise
    :class:`CollinearCandidates`, since they cannot occur under general
    position.
    """
    if pivot == ref_from:
        raise ValueError("ref_from must differ from pivot")
    d = pivot - ref_from

    on_ray: list[Point] = []
    left: list[Point] = []
    opposite: list[Point] = []
    right: list[Point] = []
    for r in candidates:
        if r == pivot:
            raise ValueError("candidate coincides with pivot")
        side = orient(ref_from, pivot, r)
        if side > 0:
            left.append(r)
        elif side < 0:
            right.append(r)
        else:
            v = r - pivot
            forward = v.x * d.x + v.y * d.y
            (on_ray if forward > 0 else opposite).append(r)

    for bucket in (on_ray, opposite):
        if len(bucket) > 1:
            raise CollinearCandidates(
                f"candidates {bucket[0]} and {bucket[1]} are collinear with pivot {pivot}"
            )
    key = cmp_to_key(_halfplane_cmp(pivot))
    left.sort(key=key)
    right.sort(key=key)
    return on_ray + left + opposite + right


def sweep_order(pivot: Point, prev: Point, candidates: Iterable[Point]) -> list[Point]:
    """Order in which the directed line prev->pivot, rotated counter-clockwise
    about the pivot, hits candidates lying strictly to its left.  This is the
    gift-wrapping step order used by the chain probabilities."""
    cands = list(candidates)
    for r in cands:
        if orient(prev, pivot, r) <= 0:
            raise ValueError(f"candidate {r} is not strictly left of the sweep line")
    cands.sort(key=cmp_to_key(_halfplane_cmp(pivot)))
    return cands


def max_extremal_triangle(
    p: Point, q: Point, others: Sequence[Point], measure: str
):
    """Largest triangle on (p, q, r) over r in ``others``.

    Returns ``(value, witness)``.  For area the value is an exact Fraction;
    for perimeter it is an exact :class:`SqrtSum` (use ``float()`` for a
    numeric rendering) and the maximization compares sums of square roots
    through the certified comparator.  Ties keep the earliest candidate in
    input order.
    """
    check_measure(measure)
    if not others:
        raise EmptyOthers("no candidate third vertices")
    if measure == AREA:
        best_val = triangle_area(p, q, others[0])
        best = others[0]
        for r in others[1:]:
            v = triangle_area(p, q, r)
            if v > best_val:
                best_val, best = v, r
        return best_val, best
    # Perimeter: |pq| is common to all candidates, so maximize |pr| + |rq|.
    best = others[0]
    best_val = edge_length(p, best) + edge_length(best, q)
    for r in others[1:]:
        v = edge_length(p, r) + edge_length(r, q)
        if (v - best_val).sign() > 0:
            best_val, best = v, r
    return best_val + edge_length(p, q), best
