"""Finite topological spaces and ordered spaces.

Topologies are stored extensionally: the full family of open sets, each a
bitmask over the carrier.  Families are tiny, which makes every check a
plain loop.  Ingestion may hand `FinSpace.from_subbasis` a generating
family instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantError
from .preorders import Preorder, check_subset, iter_bits, mask_of


@dataclass(frozen=True)
class FinSpace:
    """Finite point set with an explicit family of open subsets.

    `opens` is sorted ascending as integers and always contains the empty
    set and the full carrier; it is closed under pairwise union and
    intersection (the finite case of arbitrary unions / finite meets).
    """

    size: int
    opens: tuple[int, ...]

    def __post_init__(self):
        full = (1 << self.size) - 1
        seen = set()
        for o in self.opens:
            check_subset(o, self.size)
            if o in seen:
                raise InvariantError("topology", (o,), "duplicate open set")
            seen.add(o)
        if tuple(sorted(self.opens)) != self.opens:
            raise InvariantError("topology", (), "open family is not sorted")
        if 0 not in seen:
            raise InvariantError("topology", (), "empty set absent")
        if full not in seen:
            raise InvariantError("topology", (), "full carrier absent")
        for a, b in combinations(self.opens, 2):
            if a | b not in seen:
                raise InvariantError("topology", (a, b), "not closed under union")
            if a & b not in seen:
                raise InvariantError("topology", (a, b), "not closed under intersection")

    @classmethod
    def from_subbasis(cls, size: int, masks) -> "FinSpace":
        """Close a generating family under pairwise union and intersection."""
        full = (1 << size) - 1
        family = {0, full}
        for m in masks:
            family.add(check_subset(m, size))
        frontier = set(family)
        while frontier:
            fresh = set()
            for a in frontier:
                for b in family:
                    for c in (a | b, a & b):
                        if c not in family and c not in fresh:
                            fresh.add(c)
            family |= fresh
            frontier = fresh
        return cls(size, tuple(sorted(family)))

    @classmethod
    def discrete(cls, size: int) -> "FinSpace":
        return cls(size, tuple(range(1 << size)))

    @classmethod
    def codiscrete(cls, size: int) -> "FinSpace":
        full = (1 << size) - 1
        return cls(size, (0,) if size == 0 else (0, full))

    @classmethod
    def sierpinski(cls) -> "FinSpace":
        """Two points; {1} open, {0} not."""
        return cls(2, (0, 0b10, 0b11))

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def is_open(self, a: int) -> bool:
        check_subset(a, self.size)
        return a in self._open_set()

    def _open_set(self) -> frozenset:
        # frozen dataclass: cache via object.__setattr__
        cached = self.__dict__.get("_opens_frozen")
        if cached is None:
            cached = frozenset(self.opens)
            object.__setattr__(self, "_opens_frozen", cached)
        return cached

    def interior(self, a: int) -> int:
        """Largest open contained in a."""
        check_subset(a, self.size)
        out = 0
        for o in self.opens:
            if not o & ~a:
                out |= o
        return out

    def closure(self, a: int) -> int:
        """Smallest closed superset of a: complement of interior of complement."""
        check_subset(a, self.size)
        return self.full & ~self.interior(self.full & ~a)

    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~o for o in self.opens))

    def specialisation_preorder(self) -> Preorder:
        """x <= y iff x lies in the closure of {y}."""
        closures = [self.closure(1 << y) for y in range(self.size)]
        rows = tuple(mask_of(y for y in range(self.size) if (closures[y] >> x) & 1)
                     for x in range(self.size))
        return Preorder(self.size, rows)

    def is_t0(self) -> bool:
        """Distinct points have distinct neighbourhood filters."""
        for x in range(self.size):
            for y in range(x + 1, self.size):
                if not any(((o >> x) ^ (o >> y)) & 1 for o in self.opens):
                    return False
        return True

    def irreducible_closed_sets(self) -> tuple[int, ...]:
        """Nonempty closed sets that are not the union of two smaller closed sets."""
        closed = self.closed_sets()
        out = []
        for c in closed:
            if c == 0:
                continue
            parts = [a for a in closed if not a & ~c and a != c]
            if any(a | b == c for a in parts for b in parts):
                continue
            out.append(c)
        return tuple(out)

    def is_sober(self) -> bool:
        """Every irreducible closed set has exactly one generic point."""
        for c in self.irreducible_closed_sets():
            generic = [x for x in iter_bits(c) if self.closure(1 << x) == c]
            if len(generic) != 1:
                return False
        return True


@dataclass(frozen=True)
class OrderedSpace:
    """A finite space together with a preorder on the same carrier.

    No compatibility between topology and order is imposed; the cone
    conditions below are queryable predicates, not invariants.
    """

    space: FinSpace
    order: Preorder

    def __post_init__(self):
        if self.space.size != self.order.size:
            raise ValueError("space and order carriers differ in size")

    @property
    def size(self) -> int:
        return self.space.size

    # --- cone conditions -------------------------------------------------

    def has_open_upper_cones(self) -> bool:
        return all(self.space.is_open(self.order.up_set(u)) for u in self.space.opens)

    def has_open_lower_cones(self) -> bool:
        return all(self.space.is_open(self.order.down_set(u)) for u in self.space.opens)

    def has_open_cones(self) -> bool:
        return self.has_open_upper_cones() and self.has_open_lower_cones()

    def satisfies_internal_cone_char_upper(self) -> bool:
        """x <= y puts y inside the interior of the up-cone of every open around x."""
        for x in range(self.size):
            for y in iter_bits(self.order.rows[x]):
                for u in self.space.opens:
                    if (u >> x) & 1:
                        if not (self.space.interior(self.order.up_set(u)) >> y) & 1:
                            return False
        return True

    def satisfies_internal_cone_char_lower(self) -> bool:
        for x in range(self.size):
            for y in iter_bits(self.order.rows[x]):
                for v in self.space.opens:
                    if (v >> y) & 1:
                        if not (self.space.interior(self.order.down_set(v)) >> x) & 1:
                            return False
        return True

    def satisfies_internal_cone_char(self) -> bool:
        return (self.satisfies_internal_cone_char_upper()
                and self.satisfies_internal_cone_char_lower())

    def satisfies_lambda(self) -> bool:
        """Interior-mediated cone condition on pairs of opens.

        For all opens U, V:
            U n up(V)   <=  up( int(down(U)) n V )
            U n down(V) <=  down( int(up(U)) n V )
        Weaker than having open cones; the gap is witnessed by finite
        fixtures found by exhaustive search.
        """
        sp, ord_ = self.space, self.order
        for u in sp.opens:
            int_down_u = sp.interior(ord_.down_set(u))
            int_up_u = sp.interior(ord_.up_set(u))
            for v in sp.opens:
                if u & ord_.up_set(v) & ~ord_.up_set(int_down_u & v):
                    return False
                if u & ord_.down_set(v) & ~ord_.down_set(int_up_u & v):
                    return False
        return True

    def satisfies_pushup_upper(self) -> bool:
        """up(int(up U)) stays inside int(up U), for every open U."""
        for u in self.space.opens:
            i = self.space.interior(self.order.up_set(u))
            if self.order.up_set(i) & ~i:
                return False
        return True

    def satisfies_pushup_lower(self) -> bool:
        for u in self.space.opens:
            i = self.space.interior(self.order.down_set(u))
            if self.order.down_set(i) & ~i:
                return False
        return True

    def satisfies_pushup(self) -> bool:
        return self.satisfies_pushup_upper() and self.satisfies_pushup_lower()

    # --- order separation -------------------------------------------------

    def _separated_upper(self, x: int, y: int) -> bool:
        return any((u >> x) & 1 and not (self.order.up_set(u) >> y) & 1
                   for u in self.space.opens)

    def _separated_lower(self, x: int, y: int) -> bool:
        return any((v >> y) & 1 and not (self.order.down_set(v) >> x) & 1
                   for v in self.space.opens)

    def is_t0_ordered(self) -> bool:
        """x not<= y is witnessed on at least one side, up around x or down around y."""
        for x in range(self.size):
            for y in range(self.size):
                if not self.order.leq(x, y):
                    if not (self._separated_upper(x, y) or self._separated_lower(x, y)):
                        return False
        return True

    def is_tu_ordered(self) -> bool:
        for x in range(self.size):
            for y in range(self.size):
                if not self.order.leq(x, y) and not self._separated_upper(x, y):
                    return False
        return True

    def is_tl_ordered(self) -> bool:
        for x in range(self.size):
            for y in range(self.size):
                if not self.order.leq(x, y) and not self._separated_lower(x, y):
                    return False
        return True

    def order_graph_is_closed(self) -> bool:
        """Is { (x, y) | x <= y } closed in the product topology?

        Computed pointwise: every pair outside the graph sits in an open
        box disjoint from it.
        """
        for x in range(self.size):
            for y in range(self.size):
                if self.order.leq(x, y):
                    continue
                if not any((u >> x) & 1 and (v >> y) & 1
                           and not any(self.order.leq(a, b)
                                       for a in iter_bits(u) for b in iter_bits(v))
                           for u in self.space.opens for v in self.space.opens):
                    return False
        return True


def upper_topology(p: Preorder) -> FinSpace:
    """Topology whose opens are exactly the upward closed subsets."""
    if p.size > 16:
        raise ValueError("carrier too large for extensional upper topology")
    opens = []
    for m in range(1 << p.size):
        if all(not p.rows[x] & ~m for x in iter_bits(m)):
            opens.append(m)
    return FinSpace(p.size, tuple(opens))


def interval_topology(p: Preorder) -> FinSpace:
    """Topology generated by the order intervals of a finite lattice.

    The input order must be a lattice (antisymmetric, all binary meets and
    joins); otherwise an invariant error names the offending pair.
    """
    if p.size == 0:
        raise InvariantError("lattice", (), "empty carrier has no bounds")
    if p.size > 12:
        raise ValueError("carrier too large for extensional interval topology")
    if not p.is_antisymmetric():
        raise InvariantError("lattice", (), "order is not antisymmetric")
    down = [mask_of(w for w in range(p.size) if p.leq(w, z)) for z in range(p.size)]
    for x in range(p.size):
        for y in range(p.size):
            ub = p.rows[x] & p.rows[y]
            if not any(not ub & ~p.rows[z] for z in iter_bits(ub)):
                raise InvariantError("lattice", (x, y), "no least upper bound")
            lb = down[x] & down[y]
            if not any(not lb & ~down[z] for z in iter_bits(lb)):
                raise InvariantError("lattice", (x, y), "no greatest lower bound")
    intervals = {0}
    for x in range(p.size):
        for z in iter_bits(p.rows[x]):
            intervals.add(p.rows[x] & down[z])
    family = set(intervals)
    frontier = set(family)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in family:
                if a | b not in family:
                    fresh.add(a | b)
        family |= fresh
        frontier = fresh
    return FinSpace(p.size, tuple(sorted(family)))
