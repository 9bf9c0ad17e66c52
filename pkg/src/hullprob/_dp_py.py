"""Pure-Python fallback kernel for the weighted chain recursion.

The kernel evaluates, lazily and with memoization, the table

    V[pair, z] = Pr[ remaining boundary/fan weight collected from this
                     wedge onward reaches z ]

scaled to integer numerators over a common denominator ``denom`` (the
product of the probability denominators of the points below the apex).
Every candidate step multiplies a step probability (numerator ``prn``) with
a subtable value and divides by ``denom``; the division is exact because the
two factors condition on disjoint point sets.  Arbitrary-precision integers
make this kernel valid for every input; the compiled twin in
``_dp_cy`` is a drop-in replacement restricted to word-sized numerators.
"""

from __future__ import annotations

_KEY_SHIFT = 62


class PureDPKernel:
    """Memoized evaluator over a prepared pair structure.

    ``cands[i]`` lists ``(next_pair, weight, prn_num)`` in sweep order for
    pair ``i``; ``empty_num[i]`` is the no-sampled-point probability of the
    wedge and ``closing_w[i]`` the boundary weight credited when the chain
    stops there (0 in fan/area mode, where stopping earns nothing).
    """

    __slots__ = ("cands", "empty_num", "closing_w", "denom", "memo")

    def __init__(self, cands, empty_num, closing_w, denom):
        self.cands = [tuple(c) for c in cands]
        self.empty_num = list(empty_num)
        self.closing_w = list(closing_w)
        self.denom = denom
        self.memo: dict[int, int] = {}

    def value(self, idx: int, z: int) -> int:
        """Numerator of V[idx, z] over ``denom``; V[idx, 0] is one."""
        if z <= 0:
            return self.denom
        memo = self.memo
        key = (idx << _KEY_SHIFT) + z
        hit = memo.get(key)
        if hit is not None:
            return hit
        denom = self.denom
        total = self.empty_num[idx] if self.closing_w[idx] >= z else 0
        for nxt, wt, prn in self.cands[idx]:
            zz = z - wt
            sub = denom if zz <= 0 else self.value(nxt, zz)
            total += prn * sub // denom
        memo[key] = total
        return total

    @property
    def state_count(self) -> int:
        return len(self.memo)
