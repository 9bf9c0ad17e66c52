"""Kernel selection: compiled extension when available, pure Python otherwise.

The Cython kernel is built at install time; if the build was skipped or the
import fails, everything transparently runs on the pure-Python twins.  Set
``HULLPROB_PURE=1`` to force the fallback (the benchmark uses this to
compare the two).  Per-problem eligibility is checked here as well: the
compiled kernel works on word-sized numerators only, so problems with huge
probability denominators or budgets stay on the pure path.
"""

from __future__ import annotations

import os

from ._dp_py import PureDPKernel

_compiled = None
if os.environ.get("HULLPROB_PURE", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _dp_cy as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

# The compiled kernel multiplies two numerators <= denom into an unsigned
# 128-bit intermediate and packs (pair, z) into one 64-bit key.
MAX_COMPILED_DENOM = 1 << 59
MAX_COMPILED_BUDGET = 1 << 44
MAX_COMPILED_PAIRS = 1 << 18


def compiled_available() -> bool:
    return _compiled is not None


def backend_name() -> str:
    return "compiled" if _compiled is not None else "pure"


def dp_problem_fits_compiled(n_pairs: int, denom: int, max_weight: int) -> bool:
    return (
        _compiled is not None
        and n_pairs < MAX_COMPILED_PAIRS
        and denom < MAX_COMPILED_DENOM
        and max_weight < MAX_COMPILED_BUDGET
    )


def make_dp_kernel(cands, empty_num, closing_w, denom, *, force_pure: bool = False):
    max_weight = 0
    for lst in cands:
        for _, wt, _ in lst:
            if wt > max_weight:
                max_weight = wt
    if not force_pure and dp_problem_fits_compiled(len(cands), denom, max_weight):
        return _compiled.CompiledDPKernel(cands, empty_num, closing_w, denom)
    return PureDPKernel(cands, empty_num, closing_w, denom)


def kernel_is_compiled(kernel) -> bool:
    return _compiled is not None and isinstance(kernel, _compiled.CompiledDPKernel)


def compiled_budget_ok(z: int) -> bool:
    return z < MAX_COMPILED_BUDGET


def mc_area_module():
    """Compiled Monte Carlo helper, or None."""
    return _compiled
