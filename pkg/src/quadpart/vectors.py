"""Exact-arithmetic vector primitives.

Everything here works on nonnegative rational vectors with exact arithmetic
(`fractions.Fraction`); no floating point is used anywhere, so quantities
like approximation ratios can later be compared exactly.

The central notions:

* ``join(u, v)``   -- component-wise maximum,
* ``weight(v)``    -- sum of components (the number of ones for 0/1 vectors),
* ``savings(u, v)``-- sum of component-wise minima (the overlap "saved" by
  putting u and v into the same group),
* ``quad_cost(q)`` -- weight of the four-way join.

They satisfy ``weight(u) + weight(v) == savings(u, v) + weight(join(u, v))``
for every same-dimension pair, which the rest of the package leans on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError, InputError

__all__ = [
    "Vec",
    "join",
    "join_all",
    "weight",
    "savings",
    "quad_cost",
    "is_binary",
    "BinaryReduction",
    "to_binary",
]


class Vec:
    """An immutable nonnegative rational vector.

    Components may be given as ints, Fractions, or exact fraction strings
    like ``"3/4"``. Negative components are rejected.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[int | str | Fraction]) -> None:
        comps = tuple(Fraction(c) for c in components)
        if not comps:
            raise InputError("a vector needs at least one component")
        for i, c in enumerate(comps):
            if c < 0:
                raise InputError(f"component {i} is negative: {c}")
        self.components: tuple[Fraction, ...] = comps

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Fraction:
        return self.components[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Vec):
            return self.components == other.components
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.components)
        return f"Vec(({body}))"

    @staticmethod
    def zero(dim: int) -> "Vec":
        return Vec([0] * dim)


def _check_dims(u: Vec, v: Vec) -> None:
    if u.dim != v.dim:
        raise DimensionMismatchError(f"dimension mismatch: {u.dim} vs {v.dim}")


def join(u: Vec, v: Vec) -> Vec:
    """Component-wise maximum of two vectors of equal dimension."""
    _check_dims(u, v)
    return Vec(max(a, b) for a, b in zip(u.components, v.components))


def join_all(vectors: Sequence[Vec]) -> Vec:
    """Component-wise maximum of one or more vectors."""
    if not vectors:
        raise InputError("join_all needs at least one vector")
    acc = list(vectors[0].components)
    for v in vectors[1:]:
        if v.dim != len(acc):
            raise DimensionMismatchError(
                f"dimension mismatch: {len(acc)} vs {v.dim}"
            )
        for i, c in enumerate(v.components):
            if c > acc[i]:
                acc[i] = c
    return Vec(acc)


def weight(v: Vec) -> Fraction:
    """Sum of components; the number of ones for a 0/1 vector."""
    return sum(v.components, Fraction(0))


def savings(u: Vec, v: Vec) -> Fraction:
    """Sum of component-wise minima; the overlap between u and v."""
    _check_dims(u, v)
    return sum(
        (min(a, b) for a, b in zip(u.components, v.components)), Fraction(0)
    )


def quad_cost(quad: Sequence[Vec]) -> Fraction:
    """Weight of the four-way join of a quadruple of vectors."""
    if len(quad) != 4:
        raise InputError(f"a quad has exactly 4 vectors, got {len(quad)}")
    return weight(join_all(quad))


def is_binary(v: Vec) -> bool:
    """True iff every component is 0 or 1."""
    return all(c == 0 or c == 1 for c in v.components)


class BinaryReduction:
    """Result of reducing rational vectors to 0/1 vectors.

    ``vectors`` are the expanded binary vectors. ``scale`` is the common
    denominator the input was multiplied by before expansion, so that

        weight(join of any subset of binary vectors)
            == scale * weight(join of the corresponding original subset)

    For integer inputs ``scale == 1`` and costs are preserved verbatim.
    """

    __slots__ = ("vectors", "scale", "slot_counts")

    def __init__(
        self, vectors: list[Vec], scale: int, slot_counts: tuple[int, ...]
    ) -> None:
        self.vectors = vectors
        self.scale = scale
        self.slot_counts = slot_counts


def to_binary(vectors: Sequence[Vec], *, max_dim: int = 4096) -> BinaryReduction:
    """Expand rational vectors into cost-equivalent 0/1 vectors.

    All components are first scaled by the least common denominator to make
    them integers. Component ``i`` then expands into ``M_i`` slots, where
    ``M_i`` is the largest scaled value in that component; a value ``x``
    becomes ``x`` ones followed by ``M_i - x`` zeros. Components with
    ``M_i == 0`` expand to zero slots and disappear.

    The expansion can be exponentially large for rational inputs, so the
    output dimension is capped at ``max_dim``; larger expansions are
    rejected. This reduction is exposed for analysis and testing only --
    the solvers always work on the original vectors.
    """
    if not vectors:
        return BinaryReduction([], 1, ())
    dim = vectors[0].dim
    for v in vectors[1:]:
        if v.dim != dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {dim} vs {v.dim}"
            )
    scale = 1
    for v in vectors:
        for c in v.components:
            scale = math.lcm(scale, c.denominator)
    scaled = [[int(c * scale) for c in v.components] for v in vectors]
    slot_counts = tuple(max(row[i] for row in scaled) for i in range(dim))
    out_dim = sum(slot_counts)
    if out_dim > max_dim:
        raise InputError(
            f"binary expansion needs {out_dim} components, over the cap of "
            f"{max_dim}"
        )
    result = []
    for row in scaled:
        bits: list[int] = []
        for x, slots in zip(row, slot_counts):
            bits.extend([1] * x)
            bits.extend([0] * (slots - x))
        # A vector may expand to zero components when every M_i is 0
        # (all-zero instance); keep dimensions consistent by padding a
        # single zero slot in that degenerate case.
        if not bits:
            bits = [0]
        result.append(Vec(bits))
    return BinaryReduction(result, scale, slot_counts)


def scaled_int_vectors(
    vectors: Sequence[Vec],
) -> tuple[int, list[tuple[int, ...]]]:
    """Scale vectors by the least common denominator to integer tuples.

    Returns ``(scale, rows)`` with ``rows[i][j] == vectors[i][j] * scale``.
    Exact costs in the original instance are the integer costs divided by
    ``scale``. Used by the solvers to run on integer arithmetic.
    """
    scale = 1
    for v in vectors:
        for c in v.components:
            scale = math.lcm(scale, c.denominator)
    rows = [tuple(int(c * scale) for c in v.components) for v in vectors]
    return scale, rows


def bitmask_rows(rows: Sequence[tuple[int, ...]]) -> list[int] | None:
    """Pack 0/1 integer rows into bitmasks, or None if any value exceeds 1.

    Bit ``i`` of the mask corresponds to component ``i``. For binary
    instances this turns join/weight/savings into OR/popcount/AND-popcount.
    """
    masks = []
    for row in rows:
        m = 0
        for i, x in enumerate(row):
            if x > 1:
                return None
            if x:
                m |= 1 << i
        masks.append(m)
    return masks
