"""Exact tail probabilities of weighted hull measures by chain recursion.

Conditioned on a point ``a`` being the topmost sampled one, the hull of a
sample is a counter-clockwise vertex chain below ``a``.  The recursion walks
that chain one gift-wrapping step at a time; each step consumes a
natural-number weight and the table value

    V[(u, v), z] = Pr[ the chain continuing from u (entered from v)
                       collects weight >= z ]

obeys

    V[(u, v), 0] = 1
    V[(u, v), z] = [closing(u) >= z] * Pr[wedge empty]
                   + sum over wedge points u' of
                       Pr[u' is the next vertex] * V[(u', u), z - weight(u, u')]

with the budget saturating at zero.  Two weight regimes share this engine:

* fan (area) mode: weight(u, u') is the weight of the canonical triangle
  (a, u, u'); stopping earns nothing (closing == 0).  With true triangle
  areas as weights this computes Pr[hull area >= w | E_a].
* boundary (perimeter) mode: weight(u, u') is an edge weight, the chain
  additionally pays an opening weight (a, b) and a closing weight (u, a);
  chains that stop after fewer than two edges earn 0, matching the
  degeneracy convention for hulls on at most two points.

All arithmetic is exact: probabilities become integer numerators over the
product of the per-point probability denominators, and products of
conditionally independent factors divide out exactly.  The kernel that
evaluates V is either the compiled extension or its pure-Python twin (see
``_kernels``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import _kernels
from .errors import (
    BudgetOverflow,
    DegenerateInstance,
    DegenerateSupport,
    NonIntegerAreas,
)
from .geometry import AREA, PERIMETER, check_measure, orient, sweep_order, triangle_area
from .model import ONE, EventContext, StochasticInstance, pr_topmost, validate

DEFAULT_MAX_BUDGET = 1 << 59

PairKey = tuple[int, int]


@dataclass(frozen=True)
class WeightAssignment:
    """Natural-number weights on ordered point-index pairs.

    In fan (area) mode the key (u, u') stands for the canonical triangle
    (apex, u, u'); in boundary (perimeter) mode it is the directed boundary
    edge u->u', and the map must also cover opening (apex, b) and closing
    (u, apex) edges.
    """

    mode: str
    weights: Mapping[PairKey, int]

    def __post_init__(self):
        check_measure(self.mode)
        for key, value in self.weights.items():
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"weight for {key} must be a natural number, got {value!r}")

    def weight(self, i: int, j: int) -> int:
        try:
            return self.weights[(i, j)]
        except KeyError:
            raise ValueError(f"weight assignment lacks the ordered pair ({i}, {j})") from None

    @classmethod
    def fan_areas(
        cls, inst: StochasticInstance, apex: int, members: Sequence[int]
    ) -> "WeightAssignment":
        """True canonical-triangle areas for one apex, which must all be
        natural numbers (check with :func:`integer_area_witness` first)."""
        pts = inst.points
        table: dict[PairKey, int] = {}
        for u in members:
            for v in members:
                if u == v:
                    continue
                area = triangle_area(pts[apex], pts[u], pts[v])
                if area.denominator != 1:
                    raise NonIntegerAreas(
                        f"triangle ({apex}, {u}, {v}) has non-integer area {area}",
                        witness=(apex, u, v),
                    )
                table[(u, v)] = int(area)
        return cls(AREA, table)

    @classmethod
    def boundary_edges(cls, mapping: Mapping[PairKey, int]) -> "WeightAssignment":
        """Symmetrize an edge-weight map: a missing direction inherits the
        weight of its reverse."""
        table: dict[PairKey, int] = dict(mapping)
        for (i, j), w in list(table.items()):
            table.setdefault((j, i), w)
        return cls(PERIMETER, table)


def integer_area_witness(
    inst: StochasticInstance, indices: Sequence[int]
) -> Optional[tuple[int, int, int]]:
    """First triple of the given points whose triangle area is not a natural
    number, or None if all areas are integral."""
    pts = inst.points
    idx = list(indices)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            for k in range(j + 1, len(idx)):
                a, b, c = idx[i], idx[j], idx[k]
                if triangle_area(pts[a], pts[b], pts[c]).denominator != 1:
                    return (a, b, c)
    return None


class ApexProblem:
    """Prepared chain structure for one topmost-conditioned computation.

    Building it performs the per-apex geometry: admissible pair
    enumeration, wedge membership, exact radial sweep orders and prefix
    products, all scaled to integers over the common denominator.
    """

    def __init__(self, ctx: EventContext, weights: WeightAssignment, *, force_pure: bool = False):
        inst = ctx.inst
        pts = inst.points
        a = ctx.topmost
        self.ctx = ctx
        self.mode = weights.mode
        self.weights = weights
        below = ctx.below_topmost()
        self.below = below

        denom = 1
        probs: dict[int, Fraction] = {}
        for i in below:
            probs[i] = ctx.prob(i)
            denom *= probs[i].denominator
        self.denom = denom

        pair_ids: dict[PairKey, int] = {}
        pair_list: list[PairKey] = []

        def add_pair(u: int, v: int) -> int:
            pair_ids[(u, v)] = len(pair_list)
            pair_list.append((u, v))
            return pair_ids[(u, v)]

        for u in below:
            add_pair(u, a)
        for v in below:
            for u in below:
                if u != v and orient(pts[a], pts[v], pts[u]) > 0:
                    add_pair(u, v)
        self.pair_list = pair_list
        self.pair_ids = pair_ids

        cands: list[list[tuple[int, int, int]]] = []
        empty_num: list[int] = []
        closing_w: list[int] = []
        for u, v in pair_list:
            members = []
            for r in below:
                if r == u or r == v:
                    continue
                s1 = orient(pts[a], pts[u], pts[r])
                if s1 == 0:
                    raise DegenerateSupport(
                        f"point {r} is collinear with {a} and {u}"
                    )
                if s1 < 0:
                    continue
                if v != a:
                    s2 = orient(pts[v], pts[u], pts[r])
                    if s2 == 0:
                        raise DegenerateSupport(
                            f"point {r} is collinear with {v} and {u}"
                        )
                    if s2 < 0:
                        continue
                members.append(r)
            by_point = {pts[r]: r for r in members}
            ordered = [
                by_point[p]
                for p in sweep_order(pts[u], pts[v], [pts[r] for r in members])
            ]
            prefix = ONE
            clist: list[tuple[int, int, int]] = []
            for r in ordered:
                prn = prefix * probs[r] * denom
                assert prn.denominator == 1
                clist.append((pair_ids[(r, u)], weights.weight(u, r), prn.numerator))
                prefix *= ONE - probs[r]
            rest = prefix * denom
            assert rest.denominator == 1
            cands.append(clist)
            empty_num.append(rest.numerator)
            closing_w.append(weights.weight(u, a) if self.mode == PERIMETER else 0)

        self._cands = cands
        self._empty_num = empty_num
        self._closing_w = closing_w
        self._force_pure = force_pure
        self.kernel = _kernels.make_dp_kernel(
            cands, empty_num, closing_w, denom, force_pure=force_pure
        )

        # Probability, scaled by denom, that b is the first chain vertex.
        self.first_vertex_num: list[tuple[int, int]] = []
        for b in below:
            acc = probs[b]
            for r in below:
                if r != b and orient(pts[a], pts[b], pts[r]) < 0:
                    acc *= ONE - probs[r]
            num = acc * denom
            assert num.denominator == 1
            self.first_vertex_num.append((b, num.numerator))

    def _ensure_budget(self, z: int) -> None:
        if z >= _kernels.MAX_COMPILED_BUDGET and _kernels.kernel_is_compiled(self.kernel):
            self.kernel = _kernels.make_dp_kernel(
                self._cands, self._empty_num, self._closing_w, self.denom, force_pure=True
            )

    def cond_pr_num(self, w: int) -> int:
        """Numerator over ``denom`` of Pr[weighted measure >= w | topmost]."""
        denom = self.denom
        if w <= 0:
            return denom
        self._ensure_budget(w)
        value = self.kernel.value
        total = 0
        if self.mode == AREA:
            for b, fnum in self.first_vertex_num:
                total += fnum * value(self.pair_ids[(b, self.ctx.topmost)], w) // denom
            return total
        a = self.ctx.topmost
        for b, fnum in self.first_vertex_num:
            opening = self.weights.weight(a, b)
            inner = 0
            for nxt, wt, prn in self._cands[self.pair_ids[(b, a)]]:
                z = w - opening - wt
                sub = denom if z <= 0 else value(nxt, z)
                inner += prn * sub // denom
            total += fnum * inner // denom
        return total

    def cond_pr(self, w: int) -> Fraction:
        return Fraction(self.cond_pr_num(w), self.denom)

    def entry(self, u: int, v: int, z: int) -> Fraction:
        """Table value V[(u, v), z] as an exact probability."""
        if (u, v) not in self.pair_ids:
            raise ValueError(f"({u}, {v}) is not an admissible pair")
        if z < 0:
            raise ValueError("z must be a natural number")
        self._ensure_budget(z)
        return Fraction(self.kernel.value(self.pair_ids[(u, v)], z), self.denom)


@dataclass
class DPTable:
    """Read-only view of a solved apex problem, for inspection and tests."""

    problem: ApexProblem

    def pairs(self) -> tuple[PairKey, ...]:
        return tuple(self.problem.pair_list)

    def entry(self, u: int, v: int, z: int) -> Fraction:
        return self.problem.entry(u, v, z)


def _check_threshold(w, max_budget: int) -> int:
    if isinstance(w, Fraction):
        if w.denominator != 1:
            raise ValueError(f"threshold must be a natural number, got {w}")
        w = w.numerator
    if not isinstance(w, int):
        raise ValueError(f"threshold must be a natural number, got {w!r}")
    if w > max_budget:
        raise BudgetOverflow(f"threshold {w} exceeds the configured budget bound {max_budget}")
    return w


def pr_weighted_ge_given_top(
    ctx: EventContext,
    weights: WeightAssignment,
    w,
    *,
    max_budget: int = DEFAULT_MAX_BUDGET,
) -> Fraction:
    """Pr[weighted hull measure >= w | topmost conditioning of ctx]."""
    w = _check_threshold(w, max_budget)
    return ApexProblem(ctx, weights).cond_pr(w)


def pr_weighted_area_ge_given_top(ctx, weights: WeightAssignment, w, **kw) -> Fraction:
    if weights.mode != AREA:
        raise ValueError("expected an area-mode weight assignment")
    return pr_weighted_ge_given_top(ctx, weights, w, **kw)


def pr_weighted_perimeter_ge_given_top(ctx, weights: WeightAssignment, w, **kw) -> Fraction:
    if weights.mode != PERIMETER:
        raise ValueError("expected a perimeter-mode weight assignment")
    return pr_weighted_ge_given_top(ctx, weights, w, **kw)


class ExactEngine:
    """Exact Pr[measure >= w] for every natural w, with per-apex chain
    structures cached so that threshold sweeps share all DP work.

    Area mode requires every triangle on positive-probability points to
    have a natural-number area; perimeter mode consumes caller-supplied
    natural edge weights (typically rounded distances).
    """

    def __init__(
        self,
        inst: StochasticInstance,
        measure: str = AREA,
        edge_weights: Optional[Mapping[PairKey, int]] = None,
        *,
        max_budget: int = DEFAULT_MAX_BUDGET,
        force_pure: bool = False,
    ):
        check_measure(measure)
        self.inst = inst
        self.measure = measure
        self.max_budget = max_budget
        self._force_pure = force_pure
        self.live = inst.live_indices()

        report = validate(inst, self.live)
        if not report.ok:
            raise DegenerateInstance(report.describe())

        if measure == AREA:
            if edge_weights is not None:
                raise ValueError("edge weights are a perimeter-mode argument")
            witness = integer_area_witness(inst, self.live)
            if witness is not None:
                i, j, k = witness
                pts = inst.points
                raise NonIntegerAreas(
                    f"triangle ({i}, {j}, {k}) has non-integer area "
                    f"{triangle_area(pts[i], pts[j], pts[k])}",
                    witness=witness,
                )
            self._edge_weights = None
        else:
            if edge_weights is None:
                raise ValueError("perimeter mode needs an edge-weight map")
            self._edge_weights = WeightAssignment.boundary_edges(edge_weights)

        self._support = frozenset(self.live)
        self._top_pr = {a: pr_topmost(inst, a) for a in self.live}
        self._problems: dict[int, ApexProblem] = {}

    def _problem(self, a: int) -> ApexProblem:
        prob = self._problems.get(a)
        if prob is None:
            ctx = EventContext(self.inst, topmost=a, support=self._support)
            if self.measure == AREA:
                below = ctx.below_topmost()
                weights = WeightAssignment.fan_areas(self.inst, a, below)
            else:
                weights = self._edge_weights
            prob = ApexProblem(ctx, weights, force_pure=self._force_pure)
            self._problems[a] = prob
        return prob

    def pr_ge(self, w) -> Fraction:
        """Exact tail probability; w <= 0 gives 1 by convention."""
        w = _check_threshold(w, self.max_budget)
        if w <= 0:
            return ONE
        total = Fraction(0)
        for a in self.live:
            top = self._top_pr[a]
            if top == 0:
                continue
            total += top * self._problem(a).cond_pr(w)
        return total

    def table_for(self, a: int) -> DPTable:
        return DPTable(self._problem(a))

    def state_count(self) -> int:
        return sum(p.kernel.state_count for p in self._problems.values())


def pr_area_ge_exact(inst: StochasticInstance, w, **kw) -> Fraction:
    """Exact Pr[hull area >= w] for instances whose triangle areas are all
    natural numbers."""
    return ExactEngine(inst, AREA, **kw).pr_ge(w)


def pr_perimeter_ge_exact(
    inst: StochasticInstance, edge_weights: Mapping[PairKey, int], w, **kw
) -> Fraction:
    """Exact Pr[weighted hull boundary >= w] under caller-supplied natural
    edge weights."""
    return ExactEngine(inst, PERIMETER, edge_weights, **kw).pr_ge(w)


def pr_weighted_ge(
    inst: StochasticInstance,
    weights: WeightAssignment,
    w,
    *,
    max_budget: int = DEFAULT_MAX_BUDGET,
) -> Fraction:
    """Marginal weighted tail: total probability over the topmost point,
    with one shared pair-keyed weight map."""
    w = _check_threshold(w, max_budget)
    if w <= 0:
        return ONE
    live = inst.live_indices()
    report = validate(inst, live)
    if not report.ok:
        raise DegenerateInstance(report.describe())
    support = frozenset(live)
    total = Fraction(0)
    for a in live:
        top = pr_topmost(inst, a)
        if top == 0:
            continue
        ctx = EventContext(inst, topmost=a, support=support)
        total += top * ApexProblem(ctx, weights).cond_pr(w)
    return total
