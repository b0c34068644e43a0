"""Exact minimum-cost / maximum-weight perfect matching on complete graphs.

The solver is an exact blossom engine (cubic in the node count) running on
integer weights; rational weights are scaled to integers by their common
denominator first, and final costs are reported as exact Fractions of the
original weights. A brute-force enumerator over all (n-1)!! pairings serves
as the independent oracle for small graphs.

Tie handling is explicit: the engine guarantees optimal cost only, so a
``TieBreakPolicy`` says how a specific optimal matching is chosen --
deterministic engine order, a seeded node permutation, or a caller-supplied
matching that is verified optimal before use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import _kernels
from .errors import (
    InputError,
    OptimalityViolationError,
    ResourceLimitError,
)
from .vectors import Vec, savings, scaled_int_vectors

__all__ = [
    "CompleteGraph",
    "PerfectMatching",
    "Lexicographic",
    "Seeded",
    "Forced",
    "TieBreakPolicy",
    "LEX",
    "min_cost_perfect_matching",
    "max_savings_perfect_matching",
    "brute_force_matching",
    "verify_optimal",
]

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class PerfectMatching:
    """A partition of the node set into disjoint pairs plus its total cost."""

    pairs: tuple[tuple[int, int], ...]
    total_cost: Fraction

    @staticmethod
    def of(pairs, total_cost) -> "PerfectMatching":
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        return PerfectMatching(canon, Fraction(total_cost))

    def pair_set(self) -> frozenset:
        return frozenset(frozenset(p) for p in self.pairs)


class CompleteGraph:
    """Complete edge-weighted graph on an even number of nodes.

    Weights are exact rationals, symmetric by construction. Nodes are
    ``0..node_count-1``.
    """

    __slots__ = ("node_count", "_w")

    def __init__(self, node_count: int, weights: Mapping) -> None:
        if node_count < 2 or node_count % 2 != 0:
            raise InputError(
                f"node count must be even and >= 2, got {node_count}"
            )
        self.node_count = node_count
        w: dict[tuple[int, int], Fraction] = {}
        for i in range(node_count):
            for j in range(i + 1, node_count):
                if (i, j) in weights:
                    val = weights[(i, j)]
                    if (j, i) in weights and Fraction(weights[(j, i)]) != Fraction(val):
                        raise InputError(f"asymmetric weight for edge ({i},{j})")
                elif (j, i) in weights:
                    val = weights[(j, i)]
                else:
                    raise InputError(f"missing weight for edge ({i},{j})")
                w[(i, j)] = Fraction(val)
        self._w = w

    @staticmethod
    def from_function(node_count: int, f: Callable[[int, int], object]) -> "CompleteGraph":
        return CompleteGraph(
            node_count,
            {
                (i, j): f(i, j)
                for i in range(node_count)
                for j in range(i + 1, node_count)
            },
        )

    def weight(self, i: int, j: int) -> Fraction:
        if i == j:
            raise InputError("no self-loops in a matching graph")
        return self._w[(min(i, j), max(i, j))]

    def matching_cost(self, pairs) -> Fraction:
        return sum((self.weight(i, j) for i, j in pairs), Fraction(0))

    def _int_weights(self) -> tuple[int, list[int]]:
        """Scale all weights by the common denominator to a flat int matrix."""
        scale = 1
        for val in self._w.values():
            scale = math.lcm(scale, val.denominator)
        n = self.node_count
        flat = [0] * (n * n)
        for (i, j), val in self._w.items():
            x = int(val * scale)
            flat[i * n + j] = x
            flat[j * n + i] = x
        return scale, flat


@dataclass(frozen=True)
class Lexicographic:
    """Deterministic engine order; optimal cost, reproducible pair set."""


@dataclass(frozen=True)
class Seeded:
    """Solve under a seeded node permutation to probe alternative optima."""

    seed: int


@dataclass(frozen=True)
class Forced:
    """Use the given matching after verifying it attains the optimal cost."""

    matching: PerfectMatching


TieBreakPolicy = Lexicographic | Seeded | Forced

LEX = Lexicographic()


def _check_perfect(n: int, pairs: Sequence[tuple[int, int]]) -> None:
    seen: set[int] = set()
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise InputError(f"bad pair ({a},{b}) for {n} nodes")
        if a in seen or b in seen:
            raise InputError(f"node repeated in pairs: ({a},{b})")
        seen.add(a)
        seen.add(b)
    if len(seen) != n:
        raise InputError(
            f"pairs cover {len(seen)} of {n} nodes; not a perfect matching"
        )


def solve_int_matching(
    n: int,
    flat: list[int],
    policy: TieBreakPolicy = LEX,
    minimize: bool = True,
) -> list[tuple[int, int]]:
    """Optimal perfect matching for a flat integer weight matrix.

    This is the fast path shared by the public entry points and the
    two-phase algorithm; it never touches Fractions. ``Forced`` policies are
    handled by the callers (they need original-scale costs for messages).
    """
    if n == 0:
        return []
    if n % 2 != 0:
        raise InputError(f"perfect matching needs an even node count, got {n}")
    perm = list(range(n))
    if isinstance(policy, Seeded):
        random.Random(policy.seed).shuffle(perm)
    if minimize:
        work = [-x for x in flat]
    else:
        work = list(flat)
    if perm != list(range(n)):
        shuffled = [0] * (n * n)
        for i in range(n):
            pi = perm[i]
            base = i * n
            pbase = pi * n
            for j in range(n):
                shuffled[base + j] = work[pbase + perm[j]]
        mate = _kernels.max_weight_perfect_matching(n, shuffled)
        pairs = [
            (perm[v], perm[mate[v]]) for v in range(n) if v < mate[v]
        ]
    else:
        mate = _kernels.max_weight_perfect_matching(n, work)
        pairs = [(v, mate[v]) for v in range(n) if v < mate[v]]
    if len(pairs) != n // 2:
        raise AssertionError("engine failed to return a perfect matching")
    return sorted((min(a, b), max(a, b)) for a, b in pairs)


def min_cost_perfect_matching(
    g: CompleteGraph, policy: TieBreakPolicy = LEX
) -> PerfectMatching:
    """Minimum-total-cost perfect matching of a complete weighted graph.

    Under ``Forced``, the supplied matching is checked to be perfect (input
    error otherwise) and to attain the optimal cost
    (``OptimalityViolationError`` otherwise) before being returned.
    """
    if isinstance(policy, Forced):
        forced = policy.matching
        _check_perfect(g.node_count, forced.pairs)
        forced_cost = g.matching_cost(forced.pairs)
        best = min_cost_perfect_matching(g, LEX)
        if forced_cost != best.total_cost:
            raise OptimalityViolationError(
                f"forced matching costs {forced_cost}, optimum is "
                f"{best.total_cost}"
            )
        return PerfectMatching.of(forced.pairs, forced_cost)
    scale, flat = g._int_weights()
    pairs = solve_int_matching(g.node_count, flat, policy, minimize=True)
    return PerfectMatching.of(pairs, g.matching_cost(pairs))


def max_savings_perfect_matching(
    vectors: Sequence[Vec], policy: TieBreakPolicy = LEX
) -> PerfectMatching:
    """Perfect matching of vectors maximizing the total pairwise savings.

    The returned ``total_cost`` is the total savings (the matching that
    maximizes savings simultaneously minimizes total join cost, since for
    any perfect matching the two quantities sum to the fixed total vector
    weight).
    """
    n = len(vectors)
    if n % 2 != 0:
        raise InputError(f"even number of vectors required, got {n}")
    if n == 0:
        return PerfectMatching.of([], 0)
    scale, rows = scaled_int_vectors(vectors)
    dim = len(rows[0])
    for r in rows:
        if len(r) != dim:
            raise InputError("vectors must share one dimension")
    flat = [0] * (n * n)
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            s = 0
            for a, b in zip(ri, rj):
                s += a if a < b else b
            flat[i * n + j] = s
            flat[j * n + i] = s
    if isinstance(policy, Forced):
        forced = policy.matching
        _check_perfect(n, forced.pairs)
        forced_sav = sum(
            (savings(vectors[i], vectors[j]) for i, j in forced.pairs),
            Fraction(0),
        )
        pairs = solve_int_matching(n, flat, LEX, minimize=False)
        best_sav = Fraction(sum(flat[i * n + j] for i, j in pairs), scale)
        if forced_sav != best_sav:
            raise OptimalityViolationError(
                f"forced matching saves {forced_sav}, optimum is {best_sav}"
            )
        return PerfectMatching.of(forced.pairs, forced_sav)
    pairs = solve_int_matching(n, flat, policy, minimize=False)
    total = Fraction(sum(flat[i * n + j] for i, j in pairs), scale)
    return PerfectMatching.of(pairs, total)


def brute_force_matching(
    g: CompleteGraph, limit: int = BRUTE_FORCE_LIMIT
) -> PerfectMatching:
    """Exhaustive minimum-cost perfect matching; the test oracle.

    Enumerates all (n-1)!! pairings. Among optimal matchings, returns the
    one whose sorted pair list is lexicographically smallest. Refuses graphs
    above ``limit`` nodes.
    """
    n = g.node_count
    if n > limit:
        raise ResourceLimitError(
            f"brute-force matching limited to {limit} nodes, got {n}"
        )
    best_cost: Fraction | None = None
    best_pairs: list[tuple[int, int]] | None = None
    chosen: list[tuple[int, int]] = []

    def rec(avail: list[int], acc: Fraction) -> None:
        nonlocal best_cost, best_pairs
        if not avail:
            pairs = sorted(chosen)
            if (
                best_cost is None
                or acc < best_cost
                or (acc == best_cost and pairs < best_pairs)
            ):
                best_cost = acc
                best_pairs = pairs
            return
        a = avail[0]
        for idx in range(1, len(avail)):
            b = avail[idx]
            chosen.append((a, b))
            rec(avail[1:idx] + avail[idx + 1 :], acc + g.weight(a, b))
            chosen.pop()

    rec(list(range(n)), Fraction(0))
    assert best_pairs is not None
    return PerfectMatching.of(best_pairs, best_cost)


def verify_optimal(
    g: CompleteGraph, m: PerfectMatching, oracle: str = "engine"
) -> bool:
    """True iff ``m`` attains the optimal matching cost of ``g``.

    ``oracle="engine"`` compares against the blossom engine;
    ``oracle="brute"`` against the exhaustive enumerator (small graphs).
    Raises an input error when ``m`` is not a perfect matching of ``g``.
    """
    _check_perfect(g.node_count, m.pairs)
    actual = g.matching_cost(m.pairs)
    if actual != m.total_cost:
        raise InputError(
            f"matching claims cost {m.total_cost} but edges sum to {actual}"
        )
    if oracle == "brute":
        best = brute_force_matching(g)
    elif oracle == "engine":
        best = min_cost_perfect_matching(g, LEX)
    else:
        raise InputError(f"unknown oracle {oracle!r}")
    return actual == best.total_cost
