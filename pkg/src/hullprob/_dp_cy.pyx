# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twins of the hot kernels.

``CompiledDPKernel`` mirrors ``_dp_py.PureDPKernel`` bit for bit on inputs
whose numerators fit a machine word: probabilities are integer numerators
over a common denominator below 2**59, so one recursion step is a 128-bit
multiply-divide, and (pair, budget) states pack into one 64-bit hash key.
``mc_area_success_count`` runs whole Monte Carlo trials (SplitMix64 draws,
monotone-chain hull, integer shoelace threshold test) without touching the
interpreter.  Eligibility is decided by the dispatcher in ``_kernels``; the
pure twins handle everything else.
"""

from cython.operator cimport dereference as deref
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cdef extern from *:
    ctypedef long long int128_t "__int128"

cdef enum:
    KEY_SHIFT = 44

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15u
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9u
cdef uint64_t MIX2 = 0x94D049BB133111EBu


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline uint64_t trial_seed(uint64_t master, uint64_t index) nogil:
    return mix64(master + (index + 1) * GOLDEN)


cdef class CompiledDPKernel:
    """Same recursion and memo semantics as the pure kernel, word-sized."""

    cdef vector[int64_t] cand_start
    cdef vector[int64_t] cand_next
    cdef vector[int64_t] cand_weight
    cdef vector[int64_t] cand_prn
    cdef vector[int64_t] empty_num
    cdef vector[int64_t] closing_w
    cdef int64_t denom
    cdef unordered_map[uint64_t, int64_t] memo

    def __init__(self, cands, empty_num, closing_w, denom):
        cdef int64_t total = 0
        self.denom = denom
        self.cand_start.push_back(0)
        for clist in cands:
            for nxt, wt, prn in clist:
                self.cand_next.push_back(nxt)
                self.cand_weight.push_back(wt)
                self.cand_prn.push_back(prn)
                total += 1
            self.cand_start.push_back(total)
        for value in empty_num:
            self.empty_num.push_back(value)
        for value in closing_w:
            self.closing_w.push_back(value)

    cdef int64_t _value(self, int64_t idx, int64_t z) nogil:
        cdef uint64_t key
        cdef int64_t total, lo, hi, k, zz, sub
        cdef int128_t prod
        cdef unordered_map[uint64_t, int64_t].iterator it
        if z <= 0:
            return self.denom
        key = (<uint64_t> idx << KEY_SHIFT) | <uint64_t> z
        it = self.memo.find(key)
        if it != self.memo.end():
            return deref(it).second
        total = self.empty_num[idx] if self.closing_w[idx] >= z else 0
        lo = self.cand_start[idx]
        hi = self.cand_start[idx + 1]
        for k in range(lo, hi):
            zz = z - self.cand_weight[k]
            sub = self.denom if zz <= 0 else self._value(self.cand_next[k], zz)
            prod = <int128_t> self.cand_prn[k] * <int128_t> sub
            total += <int64_t> (prod / self.denom)
        self.memo[key] = total
        return total

    def value(self, idx, z):
        """Numerator of V[idx, z] over the common denominator."""
        cdef int64_t i = idx
        cdef int64_t budget = z
        cdef int64_t out
        with nogil:
            out = self._value(i, budget)
        return out

    @property
    def state_count(self):
        return self.memo.size()


cdef inline int128_t _cross(int64_t ox, int64_t oy, int64_t ax, int64_t ay,
                            int64_t bx, int64_t by) nogil:
    return (<int128_t> (ax - ox)) * (by - oy) - (<int128_t> (ay - oy)) * (bx - ox)


cdef int _run_trials(
    vector[int64_t]& xs,
    vector[int64_t]& ys,
    vector[int]& remap,
    vector[uint64_t]& thr,
    vector[uint8_t]& always,
    int128_t smin,
    uint64_t master,
    uint64_t start,
    uint64_t stop,
) nogil:
    cdef int n = <int> xs.size()
    cdef int successes = 0
    cdef uint64_t trial, state, draw
    cdef int i, m, nl, nu
    cdef int128_t shoelace
    cdef vector[uint8_t] included
    cdef vector[int64_t] px, py, lx, ly, ux, uy, rx, ry
    included.resize(n)
    px.reserve(n)
    py.reserve(n)
    lx.reserve(n + 1)
    ly.reserve(n + 1)
    ux.reserve(n + 1)
    uy.reserve(n + 1)
    rx.reserve(2 * n + 2)
    ry.reserve(2 * n + 2)

    for trial in range(start, stop):
        state = trial_seed(master, trial)
        for i in range(n):
            state = state + GOLDEN
            draw = mix64(state)
            # No conditional expression here: assigning one into a C++
            # vector element makes Cython route the temp through an unbound
            # element reference.
            if always[i] or draw < thr[i]:
                included[remap[i]] = 1
            else:
                included[remap[i]] = 0
        px.clear()
        py.clear()
        m = 0
        for i in range(n):
            if included[i]:
                if m > 0 and px[m - 1] == xs[i] and py[m - 1] == ys[i]:
                    continue
                px.push_back(xs[i])
                py.push_back(ys[i])
                m += 1
        if m < 3:
            if smin <= 0:
                successes += 1
            continue
        lx.clear(); ly.clear()
        nl = 0
        for i in range(m):
            while nl >= 2 and _cross(lx[nl - 2], ly[nl - 2], lx[nl - 1], ly[nl - 1], px[i], py[i]) <= 0:
                lx.pop_back(); ly.pop_back(); nl -= 1
            lx.push_back(px[i]); ly.push_back(py[i]); nl += 1
        ux.clear(); uy.clear()
        nu = 0
        for i in range(m - 1, -1, -1):
            while nu >= 2 and _cross(ux[nu - 2], uy[nu - 2], ux[nu - 1], uy[nu - 1], px[i], py[i]) <= 0:
                ux.pop_back(); uy.pop_back(); nu -= 1
            ux.push_back(px[i]); uy.push_back(py[i]); nu += 1
        rx.clear(); ry.clear()
        for i in range(nl - 1):
            rx.push_back(lx[i]); ry.push_back(ly[i])
        for i in range(nu - 1):
            rx.push_back(ux[i]); ry.push_back(uy[i])
        m = <int> rx.size()
        shoelace = 0
        if m >= 3:
            for i in range(m):
                shoelace += (<int128_t> rx[i]) * ry[(i + 1) % m] - (<int128_t> rx[(i + 1) % m]) * ry[i]
            if shoelace < 0:
                shoelace = -shoelace
        if shoelace >= smin:
            successes += 1
    return successes


def mc_area_success_count(
    xs_sorted,
    ys_sorted,
    sorted_of_orig,
    thresholds,
    shoelace_min,
    master_seed,
    start,
    stop,
):
    """Count trials in [start, stop) whose sample hull has integer shoelace
    sum (twice the area on the scaled grid) at least ``shoelace_min``.

    Inclusion draws happen in original point order with one u64 draw per
    point, exactly like the pure path; coordinates arrive presorted
    lexicographically with ``sorted_of_orig`` mapping original index to
    sorted position.  A probability-one point carries threshold 2**64,
    flagged separately since it exceeds the word.
    """
    cdef int n = len(xs_sorted)
    cdef vector[int64_t] xs, ys
    cdef vector[int] remap
    cdef vector[uint64_t] thr
    cdef vector[uint8_t] always
    cdef int i
    for i in range(n):
        xs.push_back(xs_sorted[i])
        ys.push_back(ys_sorted[i])
        remap.push_back(sorted_of_orig[i])
        t = thresholds[i]
        if t >= (1 << 64):
            thr.push_back(0)
            always.push_back(1)
        else:
            thr.push_back(t)
            always.push_back(0)
    if shoelace_min < 0:
        shoelace_min = 0
    cdef int64_t smin_hi = shoelace_min >> 62
    cdef int64_t smin_lo = shoelace_min & ((1 << 62) - 1)
    cdef int128_t smin = ((<int128_t> smin_hi) << 62) | <int128_t> smin_lo
    cdef uint64_t master = master_seed
    cdef uint64_t t0 = start
    cdef uint64_t t1 = stop
    cdef int successes
    with nogil:
        successes = _run_trials(xs, ys, remap, thr, always, smin, master, t0, t1)
    return successes

