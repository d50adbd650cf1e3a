"""Finite preorders and the cone calculus on arbitrary subsets.

Carriers are index sets 0..n-1.  Subsets of a carrier are plain ints used
as bitmasks, so unions, intersections and complements are single machine
operations.  External element names live only in the document layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvariantError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def check_subset(mask: int, size: int) -> int:
    """Validate that `mask` fits a carrier of `size` elements."""
    if mask < 0 or mask >> size:
        raise ValueError(f"subset mask {bin(mask)} does not fit a carrier of {size} elements")
    return mask


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation on the carrier 0..size-1.

    rows[x] is the bitmask of every y with x <= y.  Antisymmetry is NOT
    required; it is a separate queryable predicate.  Instances are
    immutable and every operation is pure, so values can be shared freely
    between threads.  __post_init__ only verifies; use `from_pairs` to
    close an arbitrary pair list.
    """

    size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.size < 0 or len(self.rows) != self.size:
            raise ValueError("row count differs from carrier size")
        for x, row in enumerate(self.rows):
            check_subset(row, self.size)
            if not (row >> x) & 1:
                raise InvariantError("reflexivity", (x,), f"{x} is not below itself")
        for x, row in enumerate(self.rows):
            for y in iter_bits(row):
                missing = self.rows[y] & ~row
                if missing:
                    z = next(iter_bits(missing))
                    raise InvariantError(
                        "transitivity", (x, y, z), f"{x}<={y}<={z} but not {x}<={z}")

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Preorder":
        """Smallest preorder containing the given pairs (reflexive-transitive closure)."""
        rows = [1 << x for x in range(size)]
        for x, y in pairs:
            if not (0 <= x < size and 0 <= y < size):
                raise ValueError(f"pair ({x}, {y}) out of range for carrier of {size} elements")
            rows[x] |= 1 << y
        for k in range(size):
            bit = 1 << k
            for x in range(size):
                if rows[x] & bit:
                    rows[x] |= rows[k]
        return cls(size, tuple(rows))

    @classmethod
    def discrete(cls, size: int) -> "Preorder":
        """Equality order."""
        return cls(size, tuple(1 << x for x in range(size)))

    @classmethod
    def total(cls, size: int) -> "Preorder":
        full = (1 << size) - 1
        return cls(size, (full,) * size)

    @classmethod
    def chain(cls, size: int) -> "Preorder":
        """Linear order 0 <= 1 <= ... <= size-1."""
        full = (1 << size) - 1
        return cls(size, tuple((full >> x) << x for x in range(size)))

    def leq(self, x: int, y: int) -> bool:
        return bool((self.rows[x] >> y) & 1)

    def up_set(self, a: int) -> int:
        """{ y | exists x in a with x <= y }."""
        check_subset(a, self.size)
        out = 0
        for x in iter_bits(a):
            out |= self.rows[x]
        return out

    def down_set(self, a: int) -> int:
        """{ x | exists y in a with x <= y }."""
        check_subset(a, self.size)
        return mask_of(x for x in range(self.size) if self.rows[x] & a)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for x, row in enumerate(self.rows):
            for y in iter_bits(row):
                yield x, y

    def is_antisymmetric(self) -> bool:
        return all(not (self.leq(x, y) and self.leq(y, x))
                   for x in range(self.size) for y in range(x + 1, self.size))

    def opposite(self) -> "Preorder":
        rows = tuple(mask_of(y for y in range(self.size) if self.leq(y, x))
                     for x in range(self.size))
        return Preorder(self.size, rows)


def is_monotone_fn(g: Sequence[int], p: Preorder, q: Preorder) -> bool:
    """True iff x <= y in p implies g(x) <= g(y) in q, for g total on p's carrier."""
    if len(g) != p.size:
        raise ValueError("map is not total on the source carrier")
    for t in g:
        if not 0 <= t < q.size:
            raise ValueError(f"map value {t} outside the target carrier")
    for x in range(p.size):
        for y in iter_bits(p.rows[x]):
            if not q.leq(g[x], g[y]):
                return False
    return True


def preimage(g: Sequence[int], b: int, size: int) -> int:
    """g^{-1}(b) for a total map g given as a value table."""
    return mask_of(x for x in range(size) if (b >> g[x]) & 1)
