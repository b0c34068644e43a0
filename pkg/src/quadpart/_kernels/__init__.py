"""Kernel backend selection.

The compiled extension (``_fast``, built from Cython) and the pure-Python
module (``pure``) implement the same two kernels. The compiled one is used
when present; setting ``QUADPART_PURE_PYTHON=1`` forces the fallback.

The compiled kernel works on C int64, so callers with weights outside a
safe magnitude window are routed to the pure kernel, whose Python ints are
unbounded. The window is conservative: intermediate blossom quantities stay
within a small constant factor of the largest input weight.
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("QUADPART_PURE_PYTHON"):
    _fast = None
else:
    try:
        from . import _fast  # type: ignore[attr-defined]
    except ImportError:
        _fast = None

BACKEND = "fast" if _fast is not None else "pure"

# int64 headroom: duals/slacks stay within ~4x the max weight and partition
# accumulators within n times the max table entry.
_INT64_SAFE = 1 << 56


def max_weight_perfect_matching(n: int, w: list, verify: bool = True) -> list:
    """Dispatch to the best backend for a dense max-weight matching."""
    if _fast is not None and n >= 2:
        hi = max(w)
        lo = min(w)
        if max(abs(hi), abs(lo)) * (n + 4) < _INT64_SAFE:
            return _fast.max_weight_perfect_matching(n, w, verify)
    return pure.max_weight_perfect_matching(n, w, verify)


def solve_quad_partition(n, cost4, ub_cost, ub_quads, node_budget):
    """Dispatch to the best backend for the quad-partition search."""
    if _fast is not None and n > 0:
        if max(cost4) * (n + 4) < _INT64_SAFE and ub_cost < _INT64_SAFE:
            return _fast.solve_quad_partition(
                n, cost4, ub_cost, ub_quads, node_budget
            )
    return pure.solve_quad_partition(n, cost4, ub_cost, ub_quads, node_budget)
