"""Sandwich approximations of the tail probabilities.

Three routes:

* ``approx_pr_area_ge``      -- exact-rational sigma with
                                Pr[A >= w] <= sigma <= Pr[A >= (1-eps)w],
* ``approx_pr_perimeter_ge`` -- the perimeter analog (class constant 7,
                                rounding step eps/(n+1); see module notes),
* ``pr_area_ge_bounded``     -- for points in [0, U]^2, grid rounding to
                                even integer coordinates and an exact run,
                                giving Pr[A >= w+eps] <= sigma <= Pr[A >= w-eps].

The first two condition on the ordered (topmost, bottommost) pair and
classify the largest anchored triangle lambda against the threshold:
measure >= w is certain when lambda >= w, impossible when c*lambda < w
(c = 4 for area, 7 for perimeter).  When the middle class has mass, the
weighted chain engine runs on ceil-rounded measures over the support of
points compatible with lambda < w, and its result multiplies the *full*
Pr[lambda < w] mass:

    cell term = Pr[lambda >= w] + sigma_pq * Pr[lambda < w].

Both sandwich sides then follow from the outcome-wise rounding
implications (sum >= w implies rounded sum >= rounded target implies
sum >= (1-eps)w): conditioned on lambda < w the sample is an independent
draw from that support, so the rounded tail brackets the true joint tail
from both sides.  Weighting sigma_pq by the middle class alone instead
under-counts whenever the class below w/c has mass; the 4-point worked
instance at w = its hull area is a concrete counterexample, which is why
the composition here deviates from the narrower textbook form.  All
outputs are exact Fractions; only their decimal rendering is approximate.

Why c = 7 for perimeter: anchored triangles through the topmost point p and
bottommost point q of the sample bound every sampled r by
|pr| + |rq| <= lambda - |pq|, so the sample sits in an ellipse with foci
p, q whose circumscribing circle has circumference pi*(lambda - |pq|); the
hull perimeter is below that, and 7 > 2*pi leaves slack.  The companion
sandwich harness in the tests validates the constant empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dp import WeightAssignment, pr_weighted_ge_given_top
from .errors import DegenerateInstance, InvalidEpsilon, RoundedDegeneracy
from .geometry import AREA, PERIMETER, check_measure, squared_distance, triangle_area
from .model import (
    ONE,
    EventContext,
    StochasticInstance,
    pr_lambda_ge,
    pr_top_bottom,
    require_general_position,
    strip_points,
    triangle_measure,
)
from .radicals import SqrtSum
from .rational import ceil_fraction, ceil_sqrt, floor_fraction

LAMBDA_CLASS_CONSTANT = {AREA: 4, PERIMETER: 7}


@dataclass(frozen=True)
class RoundingScheme:
    """Ceil-rounding of measures to naturals: each positive measure a maps
    to ceil(a / (theta * w)) and the target w maps to floor(1 / theta)."""

    theta: Fraction
    w: Fraction

    def __post_init__(self):
        if not 0 < self.theta < 1:
            raise InvalidEpsilon(f"rounding step {self.theta} outside (0, 1)")
        if self.w <= 0:
            raise InvalidEpsilon("rounding needs a positive target")

    @classmethod
    def for_area(cls, n: int, w: Fraction, eps: Fraction) -> "RoundingScheme":
        return cls(Fraction(eps, n), Fraction(w))

    @classmethod
    def for_perimeter(cls, n: int, w: Fraction, eps: Fraction) -> "RoundingScheme":
        return cls(Fraction(eps, n + 1), Fraction(w))

    @property
    def rounded_target(self) -> int:
        return floor_fraction(1 / self.theta)

    def round_value(self, a: Fraction) -> int:
        """ceil(a / (theta w)) for an exactly-known measure."""
        return ceil_fraction(Fraction(a) / (self.theta * self.w))

    def round_sqrt(self, squared: Fraction) -> int:
        """ceil(sqrt(squared) / (theta w)) without materializing the root."""
        return ceil_sqrt(Fraction(squared) / (self.theta * self.w) ** 2)


def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InvalidEpsilon(f"eps must lie in (0, 1), got {eps}")
    return eps


def _measure_below(inst, p, q, r, measure, w) -> bool:
    value = triangle_measure(inst.points[p], inst.points[q], inst.points[r], measure)
    if measure == AREA:
        return value < w
    return (value - w).sign() < 0


def _approx_pr_ge(inst: StochasticInstance, w, eps, measure: str) -> Fraction:
    check_measure(measure)
    w = Fraction(w)
    if w <= 0:
        return ONE
    eps = _check_eps(eps)
    require_general_position(inst, inst.live_indices())
    n = inst.n
    live = inst.live_indices()
    pts = inst.points
    c = LAMBDA_CLASS_CONSTANT[measure]
    if measure == AREA:
        scheme = RoundingScheme.for_area(n, w, eps)
    else:
        scheme = RoundingScheme.for_perimeter(n, w, eps)
    w_hat = scheme.rounded_target

    sigma = Fraction(0)
    for p in live:
        for q in live:
            if p == q or pts[p].y <= pts[q].y:
                continue
            pe = pr_top_bottom(inst, p, q)
            if pe == 0:
                continue
            cell_ctx = EventContext(inst, topmost=p, bottommost=q)
            lam_hi = pr_lambda_ge(cell_ctx, w, measure)
            lam_mid = pr_lambda_ge(cell_ctx, w / c, measure) - lam_hi
            term = lam_hi
            if lam_mid > 0:
                # Middle class has mass: run the rounded engine over the
                # lambda < w support and weight it by that whole event.
                strip = strip_points(cell_ctx)
                narrowed = [r for r in strip if _measure_below(inst, p, q, r, measure, w)]
                support = frozenset(narrowed) | {p, q}
                ctx = EventContext(
                    inst,
                    topmost=p,
                    bottommost=q,
                    support=support,
                    overrides={q: ONE},
                )
                members = sorted(support - {p})
                table: dict[tuple[int, int], int] = {}
                for u in members:
                    for v in members:
                        if u == v:
                            continue
                        if measure == AREA:
                            table[(u, v)] = scheme.round_value(
                                triangle_area(pts[p], pts[u], pts[v])
                            )
                        else:
                            table[(u, v)] = scheme.round_sqrt(
                                squared_distance(pts[u], pts[v])
                            )
                if measure == PERIMETER:
                    for u in members:
                        su = scheme.round_sqrt(squared_distance(pts[p], pts[u]))
                        table[(p, u)] = su
                        table[(u, p)] = su
                weights = WeightAssignment(measure, table)
                sigma_pq = pr_weighted_ge_given_top(ctx, weights, w_hat)
                term += sigma_pq * (ONE - lam_hi)
            sigma += pe * term
    return sigma


def approx_pr_area_ge(inst: StochasticInstance, w, eps) -> Fraction:
    """Exact-rational sigma with Pr[A >= w] <= sigma <= Pr[A >= (1-eps)w]."""
    return _approx_pr_ge(inst, w, eps, AREA)


def approx_pr_perimeter_ge(inst: StochasticInstance, w, eps) -> Fraction:
    """Exact-rational sigma with Pr[P >= w] <= sigma <= Pr[P >= (1-eps)w]."""
    return _approx_pr_ge(inst, w, eps, PERIMETER)


# ---------------------------------------------------------------------------
# Bounded-domain grid rounding


@dataclass(frozen=True)
class GridRounding:
    """Snap map (x, y) -> (2*floor(x/delta), 2*floor(y/delta)); image points
    have even integer coordinates, so every image triangle area is a natural
    number."""

    delta: Fraction

    def __post_init__(self):
        if self.delta <= 0:
            raise InvalidEpsilon("grid step must be positive")

    def apply(self, p) -> tuple[int, int]:
        return (
            2 * floor_fraction(Fraction(p.x) / self.delta),
            2 * floor_fraction(Fraction(p.y) / self.delta),
        )


def grid_round(
    inst: StochasticInstance, delta, merge_coincident: bool = False
) -> StochasticInstance:
    """Round every point to the grid.  Coincident image points are an error
    unless ``merge_coincident`` is set, in which case they merge into one
    point present with probability 1 - prod(1 - pi_i)."""
    grid = GridRounding(Fraction(delta))
    seen: dict[tuple[int, int], list[int]] = {}
    images = []
    for i, p in enumerate(inst.points):
        img = grid.apply(p)
        images.append(img)
        seen.setdefault(img, []).append(i)
    clashes = [idx for idx in seen.values() if len(idx) > 1]
    if clashes and not merge_coincident:
        raise RoundedDegeneracy(
            f"grid rounding with step {grid.delta} made points coincide",
            witnesses=tuple(tuple(c) for c in clashes),
        )
    rows = []
    for img, idx in seen.items():
        absent = ONE
        for i in idx:
            absent *= ONE - inst.probs[i]
        rows.append((img[0], img[1], ONE - absent))
    return StochasticInstance.build(rows)


def pr_area_ge_bounded(
    inst: StochasticInstance,
    w,
    eps,
    U,
    merge_coincident: bool = False,
    engine_factory=None,
) -> Fraction:
    """Grid-rounded exact run for P in [0, U]^2:
    Pr[A >= w+eps] <= result <= Pr[A >= w-eps].

    eps may be any positive rational (the guarantee is an additive window).
    Degenerate images (coincident, collinear or axis-tied rounded points)
    raise :class:`RoundedDegeneracy` with witnesses.
    """
    w = Fraction(w)
    eps = Fraction(eps)
    U = Fraction(U)
    if eps <= 0:
        raise InvalidEpsilon("eps must be positive")
    if U <= 0:
        raise ValueError("U must be positive")
    for i, p in enumerate(inst.points):
        if not (0 <= p.x <= U and 0 <= p.y <= U):
            raise ValueError(f"point {i} lies outside [0, {U}]^2")
    delta = eps / (4 * U)
    image = grid_round(inst, delta, merge_coincident=merge_coincident)
    target = max(0, ceil_fraction(4 * w / (delta * delta)))
    from .dp import ExactEngine  # local import to keep module load light

    factory = engine_factory or (lambda im: ExactEngine(im, AREA))
    try:
        return factory(image).pr_ge(target)
    except DegenerateInstance as exc:
        raise RoundedDegeneracy(
            f"grid image violates exact-engine preconditions: {exc}"
        ) from exc


def scaled_image_area(inst: StochasticInstance, delta, mask) -> Fraction:
    """(delta^2 / 4) * A(image of the masked sample); used by the rounding
    error harness |A(S) - (delta^2/4) A(S~)| < 4 delta U."""
    from .geometry import convex_hull, Point

    grid = GridRounding(Fraction(delta))
    pts = [Point.of(*grid.apply(inst.points[i])) for i in mask]
    return convex_hull(pts).area() * grid.delta * grid.delta / 4
