"""Finite frames: bounded distributive lattices with full operation tables.

A finite frame is exactly a finite bounded distributive lattice, so "all
suprema" collapses to binary joins plus the bottom element, and a
completely prime filter is the principal up-set of a join-irreducible
element (join-irreducible = join-prime in distributive lattices).  Frames
store full meet/join tables at construction for constant-time lattice
operations; carriers stay small enough that the O(n^2) memory is free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantError
from .preorders import iter_bits, mask_of
from .spaces import FinSpace


@dataclass(frozen=True)
class FinFrame:
    """Finite bounded distributive lattice.

    leq[a] is the bitmask of every b with a below-or-equal b; unlike
    Preorder this relation must be antisymmetric.  meet/join are full
    element tables, bottom and top are element indices.  Use `from_leq`
    (validating) or `from_opens` (set families, valid by construction).
    """

    size: int
    leq: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @classmethod
    def from_leq(cls, leq: Sequence[int], validate: bool = True) -> "FinFrame":
        """Build tables from an order relation, checking the lattice laws."""
        n = len(leq)
        if n == 0:
            raise InvariantError("lattice", (), "a frame needs a bottom and a top")
        leq = tuple(leq)
        for a, row in enumerate(leq):
            if row < 0 or row >> n:
                raise ValueError("leq row exceeds carrier")
            if not (row >> a) & 1:
                raise InvariantError("reflexivity", (a,), f"{a} is not below itself")
        for a in range(n):
            for b in iter_bits(leq[a]):
                if leq[b] & ~leq[a]:
                    c = next(iter_bits(leq[b] & ~leq[a]))
                    raise InvariantError(
                        "transitivity", (a, b, c), f"{a}<={b}<={c} but not {a}<={c}")
                if a != b and (leq[b] >> a) & 1:
                    raise InvariantError(
                        "antisymmetry", (a, b), f"{a} and {b} are below each other")
        down = tuple(mask_of(w for w in range(n) if (leq[w] >> z) & 1) for z in range(n))
        join_t, meet_t = [], []
        for a in range(n):
            jrow, mrow = [], []
            for b in range(n):
                ub = leq[a] & leq[b]
                least = [z for z in iter_bits(ub) if not ub & ~leq[z]]
                if not least:
                    raise InvariantError("lattice", (a, b), "no least upper bound")
                jrow.append(least[0])
                lb = down[a] & down[b]
                greatest = [z for z in iter_bits(lb) if not lb & ~down[z]]
                if not greatest:
                    raise InvariantError("lattice", (a, b), "no greatest lower bound")
                mrow.append(greatest[0])
            join_t.append(tuple(jrow))
            meet_t.append(tuple(mrow))
        bottoms = [a for a in range(n) if leq[a] == (1 << n) - 1]
        tops = [a for a in range(n) if down[a] == (1 << n) - 1]
        frame = cls(n, leq, tuple(meet_t), tuple(join_t), bottoms[0], tops[0])
        if validate:
            frame.check_distributivity()
        return frame

    @classmethod
    def from_opens(cls, masks: Sequence[int]) -> "FinFrame":
        """Lattice of a set family closed under union and intersection.

        Order is inclusion, meet is intersection, join is union; such a
        lattice is distributive by construction, so no law checking runs.
        """
        masks = tuple(sorted(masks))
        n = len(masks)
        if n == 0:
            raise InvariantError("lattice", (), "empty open family")
        index = {m: i for i, m in enumerate(masks)}
        leq = tuple(mask_of(b for b in range(n) if not masks[a] & ~masks[b])
                    for a in range(n))
        meet_t = tuple(tuple(index[masks[a] & masks[b]] for b in range(n)) for a in range(n))
        join_t = tuple(tuple(index[masks[a] | masks[b]] for b in range(n)) for a in range(n))
        return cls(n, leq, meet_t, join_t, index[masks[0]], index[masks[-1]])

    def check_distributivity(self) -> None:
        for a in range(self.size):
            ma = self.meet[a]
            for b in range(self.size):
                jb = self.join[b]
                mab = ma[b]
                for c in range(self.size):
                    if ma[jb[c]] != self.join[mab][ma[c]]:
                        raise InvariantError(
                            "distributivity", (a, b, c),
                            "a&(b|c) differs from (a&b)|(a&c)")

    def le(self, a: int, b: int) -> bool:
        return bool((self.leq[a] >> b) & 1)

    def up_mask(self, a: int) -> int:
        """Bitmask of the principal filter of a."""
        return self.leq[a]

    def down_mask(self, a: int) -> int:
        cached = self.__dict__.get("_down")
        if cached is None:
            cached = tuple(mask_of(w for w in range(self.size) if self.le(w, z))
                           for z in range(self.size))
            object.__setattr__(self, "_down", cached)
        return cached[a]

    def join_of(self, elements: Iterable[int]) -> int:
        out = self.bottom
        for e in elements:
            out = self.join[out][e]
        return out

    def meet_of(self, elements: Iterable[int]) -> int:
        out = self.top
        for e in elements:
            out = self.meet[out][e]
        return out

    def join_irreducibles(self) -> tuple[int, ...]:
        """Elements other than bottom that are not the join of what sits strictly below."""
        out = []
        for u in range(self.size):
            if u == self.bottom:
                continue
            below = self.down_mask(u) & ~(1 << u)
            if self.join_of(iter_bits(below)) != u:
                out.append(u)
        return tuple(out)

    def heyting(self, a: int, b: int) -> int:
        """Relative pseudocomplement: the join of every c with c&a below b."""
        return self.join_of(c for c in range(self.size)
                            if self.le(self.meet[c][a], b))

    def neg(self, a: int) -> int:
        return self.heyting(a, self.bottom)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs (a, b) with a strictly below b and nothing in between."""
        out = []
        for a in range(self.size):
            strict = self.leq[a] & ~(1 << a)
            for b in iter_bits(strict):
                between = strict & self.down_mask(b) & ~(1 << b)
                if not between:
                    out.append((a, b))
        return tuple(out)


def frame_of_opens(s: FinSpace) -> tuple[FinFrame, tuple[int, ...]]:
    """Lattice of open sets of a space, plus the element -> open-mask bijection."""
    frame = FinFrame.from_opens(s.opens)
    return frame, s.opens


@dataclass(frozen=True)
class PointFilter:
    """Completely prime filter of a frame.

    `members` is a bitmask over frame elements; `generator` is the least
    member, which is always join-irreducible in the finite case.
    """

    members: int
    generator: int

    def contains(self, u: int) -> bool:
        return bool((self.members >> u) & 1)


def points_of_frame(f: FinFrame) -> tuple[PointFilter, ...]:
    """All completely prime filters, as principal up-sets of join-irreducibles."""
    return tuple(PointFilter(f.up_mask(u), u) for u in f.join_irreducibles())


@dataclass(frozen=True)
class FrameHom:
    """Element table of a map between frames; see is_frame_hom for the laws."""

    source: FinFrame
    target: FinFrame
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.size:
            raise ValueError("hom table is not total on the source")
        for t in self.table:
            if not 0 <= t < self.target.size:
                raise ValueError("hom table leaves the target carrier")

    def __call__(self, a: int) -> int:
        return self.table[a]


def is_frame_hom(h: FrameHom) -> bool:
    """Preserves bottom, top, binary meet and binary join."""
    s, t, m = h.source, h.target, h.table
    if m[s.bottom] != t.bottom or m[s.top] != t.top:
        return False
    for a in range(s.size):
        for b in range(s.size):
            if m[s.meet[a][b]] != t.meet[m[a]][m[b]]:
                return False
            if m[s.join[a][b]] != t.join[m[a]][m[b]]:
                return False
    return True


def compose_homs(outer: FrameHom, inner: FrameHom) -> FrameHom:
    """outer o inner, defined when inner lands in outer's source."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise ValueError("hom composition mismatch")
    return FrameHom(inner.source, outer.target,
                    tuple(outer.table[x] for x in inner.table))


@dataclass(frozen=True)
class Nucleus:
    """Inflationary idempotent meet-preserving endomap of a frame."""

    frame: FinFrame
    table: tuple[int, ...]

    def __post_init__(self):
        f, j = self.frame, self.table
        if len(j) != f.size:
            raise ValueError("nucleus table is not total")
        for a in range(f.size):
            if not f.le(a, j[a]):
                raise InvariantError("nucleus", (a,), "j is not inflationary")
            if j[j[a]] != j[a]:
                raise InvariantError("nucleus", (a,), "j is not idempotent")
        for a in range(f.size):
            for b in range(f.size):
                if j[f.meet[a][b]] != f.meet[j[a]][j[b]]:
                    raise InvariantError("nucleus", (a, b), "j does not preserve meets")

    def __call__(self, a: int) -> int:
        return self.table[a]


def identity_nucleus(f: FinFrame) -> Nucleus:
    return Nucleus(f, tuple(range(f.size)))


def double_negation_nucleus(f: FinFrame) -> Nucleus:
    """j(a) = not not a; collapses onto the Boolean part of the frame."""
    return Nucleus(f, tuple(f.neg(f.neg(a)) for a in range(f.size)))


def open_nucleus(f: FinFrame, u: int) -> Nucleus:
    """j(a) = u -> a, the nucleus of the open part determined by u."""
    return Nucleus(f, tuple(f.heyting(u, a) for a in range(f.size)))


def nucleus_fixpoints(n: Nucleus) -> tuple[FinFrame, FrameHom, tuple[int, ...]]:
    """Fixed points of a nucleus with the induced order.

    Returns the fixpoint frame, the frame surjection onto it, and the
    parent element index of each fixpoint.  Meets restrict; joins are the
    image under j of the parent join.
    """
    f = n.frame
    fixed = tuple(a for a in range(f.size) if n.table[a] == a)
    pos = {a: i for i, a in enumerate(fixed)}
    k = len(fixed)
    leq = tuple(mask_of(j for j in range(k) if f.le(fixed[i], fixed[j])) for i in range(k))
    sub = FinFrame.from_leq(leq)
    surjection = FrameHom(f, sub, tuple(pos[n.table[a]] for a in range(f.size)))
    return sub, surjection, fixed


def has_enough_points(s: FinSpace) -> bool:
    """Every completely prime filter of the open-set lattice is a neighbourhood filter."""
    frame, masks = frame_of_opens(s)
    neighbourhood = {mask_of(i for i, m in enumerate(masks) if (m >> x) & 1)
                     for x in range(s.size)}
    return all(p.members in neighbourhood for p in points_of_frame(frame))
