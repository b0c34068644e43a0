"""Greedy baseline: repeatedly take a cheapest quad among the remainder.

Ties are broken canonically by default: vectors are scanned in sorted value
order, so the total cost is invariant under permutations of the input. The
paper-style adversarial behaviour ("the greedy algorithm may select ...")
is reproduced through an explicit script of quad choices; each scripted
choice is validated to be a minimum-cost quad at its step, so a script can
steer ties but can never fake a non-greedy run.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algorithm import QuadPartition
from .errors import InputError, VerificationError
from .vectors import Vec, bitmask_rows, scaled_int_vectors

__all__ = ["greedy"]


def _quad_cost_int(rows, masks, quad) -> int:
    if masks is not None:
        m = 0
        for i in quad:
            m |= masks[i]
        return m.bit_count()
    i, j, l, m = quad
    return sum(
        max(a, b, c, d)
        for a, b, c, d in zip(rows[i], rows[j], rows[l], rows[m])
    )


def greedy(
    vectors: Sequence[Vec],
    script: Sequence[Sequence[int]] | None = None,
) -> QuadPartition:
    """Partition 4k vectors by repeatedly removing a cheapest quad.

    Without a script, each step scans all 4-subsets of the remaining
    vectors in canonical order (vectors sorted by value, then index) and
    takes the first one of minimum cost. With a script, the scripted quads
    are taken first -- after checking that each is a minimum-cost choice at
    its step -- and the canonical rule finishes the run.
    """
    n = len(vectors)
    if n == 0 or n % 4 != 0:
        raise InputError(f"vector count must be a positive multiple of 4, got {n}")
    scale, rows, _ = scaled_int_vectors(vectors)
    dim = len(rows[0])
    for r in rows:
        if len(r) != dim:
            raise InputError("vectors must share one dimension")
    masks = bitmask_rows(rows)

    canonical = sorted(range(n), key=lambda i: (rows[i], i))
    remaining = list(canonical)
    script_iter = list(script) if script is not None else []
    quads: list[tuple[int, int, int, int]] = []
    total = 0
    step = 0
    while remaining:
        best = None
        best_quad = None
        for quad in combinations(remaining, 4):
            c = _quad_cost_int(rows, masks, quad)
            if best is None or c < best:
                best = c
                best_quad = quad
        if step < len(script_iter):
            pick = tuple(sorted(script_iter[step]))
            if len(pick) != 4 or any(i not in remaining for i in pick):
                raise InputError(
                    f"scripted quad {pick} is not four remaining vectors"
                )
            c = _quad_cost_int(rows, masks, pick)
            if c != best:
                raise VerificationError(
                    f"scripted quad {pick} costs {Fraction(c, scale)}, but the "
                    f"cheapest available quad costs {Fraction(best, scale)}"
                )
            best_quad = pick
            best = c
        quads.append(tuple(sorted(best_quad)))
        total += best
        taken = set(best_quad)
        remaining = [i for i in remaining if i not in taken]
        step += 1
    quads.sort()
    return QuadPartition(tuple(quads), Fraction(total, scale))
