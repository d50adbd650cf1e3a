"""Ordered locales: a frame carrying a second preorder on its elements.

The extra relation (written rel here) models "everything in u can causally
reach into v".  Its single defining law is join compatibility: related
pairs may be joined componentwise.  Localic cones replace the pointwise
up/down-sets: the cone above u is the join of everything u relates to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError
from .frames import FinFrame, FrameHom, Nucleus, is_frame_hom, nucleus_fixpoints
from .preorders import iter_bits, mask_of


def check_axiom_v(frame: FinFrame, rel: tuple[int, ...]) -> bool:
    """Binary join compatibility: u<|v and u'<|v' imply (u|u') <| (v|v').

    The nullary instance is reflexivity at the bottom element, so the
    binary form suffices on a finite carrier.
    """
    return axiom_v_witness(frame, rel) is None


def axiom_v_witness(frame: FinFrame, rel: tuple[int, ...]):
    pairs = [(u, v) for u in range(frame.size) for v in iter_bits(rel[u])]
    for u, v in pairs:
        for u2, v2 in pairs:
            if not (rel[frame.join[u][u2]] >> frame.join[v][v2]) & 1:
                return (u, v, u2, v2)
    return None


@dataclass(frozen=True)
class OrderedLocale:
    """Frame plus a preorder rel on its elements satisfying join compatibility.

    rel[u] is the bitmask of every v with u <| v.  Validation checks
    reflexivity, transitivity and the join law; use the generators module
    or `inclusion_order` / `equality_order` to build valid instances.
    """

    frame: FinFrame
    rel: tuple[int, ...]

    def __post_init__(self):
        n = self.frame.size
        if len(self.rel) != n:
            raise ValueError("rel row count differs from frame size")
        for u, row in enumerate(self.rel):
            if row < 0 or row >> n:
                raise ValueError("rel row exceeds frame carrier")
            if not (row >> u) & 1:
                raise InvariantError("reflexivity", (u,), "rel misses a diagonal entry")
        for u in range(n):
            for v in iter_bits(self.rel[u]):
                if self.rel[v] & ~self.rel[u]:
                    w = next(iter_bits(self.rel[v] & ~self.rel[u]))
                    raise InvariantError("transitivity", (u, v, w),
                                         "rel is not transitively closed")
        bad = axiom_v_witness(self.frame, self.rel)
        if bad is not None:
            raise InvariantError("axiom-v", bad,
                                 "join of related pairs is not related")

    def rel_holds(self, u: int, v: int) -> bool:
        return bool((self.rel[u] >> v) & 1)

    def pairs(self):
        for u, row in enumerate(self.rel):
            for v in iter_bits(row):
                yield u, v

    def up_cone(self, u: int) -> int:
        """Join of every element that u relates to."""
        return self.frame.join_of(iter_bits(self.rel[u]))

    def down_cone(self, u: int) -> int:
        """Join of every element relating to u."""
        return self.frame.join_of(w for w in range(self.frame.size)
                                  if (self.rel[w] >> u) & 1)

    def up_cone_table(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_up_cones")
        if cached is None:
            cached = tuple(self.up_cone(u) for u in range(self.frame.size))
            object.__setattr__(self, "_up_cones", cached)
        return cached

    def down_cone_table(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_down_cones")
        if cached is None:
            cached = tuple(self.down_cone(u) for u in range(self.frame.size))
            object.__setattr__(self, "_down_cones", cached)
        return cached


def inclusion_order(f: FinFrame) -> OrderedLocale:
    """The intrinsic lattice order as the causal relation."""
    return OrderedLocale(f, f.leq)


def equality_order(f: FinFrame) -> OrderedLocale:
    return OrderedLocale(f, tuple(1 << u for u in range(f.size)))


def total_order(f: FinFrame) -> OrderedLocale:
    full = (1 << f.size) - 1
    return OrderedLocale(f, (full,) * f.size)


@dataclass(frozen=True)
class LocaleMap:
    """Locale morphism f: X -> Y, carried by a frame hom from Y's frame to X's.

    The graph rel_rf(u, v) = "u below f^{-1}(v)" is the relational face of
    the map; the monotonicity predicates quantify over it.
    """

    hom: FrameHom
    source: OrderedLocale
    target: OrderedLocale

    def __post_init__(self):
        if self.hom.source is not self.target.frame and self.hom.source != self.target.frame:
            raise ValueError("hom source must be the target locale's frame")
        if self.hom.target is not self.source.frame and self.hom.target != self.source.frame:
            raise ValueError("hom target must be the source locale's frame")
        if not is_frame_hom(self.hom):
            raise InvariantError("frame-hom", (), "table does not preserve frame structure")

    def rel_rf(self, u: int, v: int) -> bool:
        """u in the source frame, v in the target frame: u below f^{-1}(v)."""
        return self.source.frame.le(u, self.hom.table[v])

    def rf_masks(self) -> tuple[int, ...]:
        """For each source element u, the bitmask of target v with (u, v) in the graph."""
        cached = self.__dict__.get("_rf")
        if cached is None:
            x, h = self.source.frame, self.hom.table
            cached = tuple(mask_of(v for v in range(self.target.frame.size)
                                   if x.le(u, h[v]))
                           for u in range(x.size))
            object.__setattr__(self, "_rf", cached)
        return cached


def identity_map(x: OrderedLocale) -> LocaleMap:
    return LocaleMap(FrameHom(x.frame, x.frame, tuple(range(x.frame.size))), x, x)


def compose_maps(g: LocaleMap, f: LocaleMap) -> LocaleMap:
    """g o f for f: X -> Y and g: Y -> Z; the frame tables compose the other way."""
    if f.target is not g.source and f.target != g.source:
        raise ValueError("locale map composition mismatch")
    table = tuple(f.hom.table[g.hom.table[w]] for w in range(g.target.frame.size))
    return LocaleMap(FrameHom(g.target.frame, f.source.frame, table), f.source, g.target)


def is_upper_monotone(f: LocaleMap) -> bool:
    """u <| u' with (u, v) in the graph always extends to v <| v' with (u', v')."""
    rf = f.rf_masks()
    yrel = f.target.rel
    for u in range(f.source.frame.size):
        for u2 in iter_bits(f.source.rel[u]):
            for v in iter_bits(rf[u]):
                if not yrel[v] & rf[u2]:
                    return False
    return True


def is_lower_monotone(f: LocaleMap) -> bool:
    """u <| u' with (u', v') in the graph always restricts to v <| v' with (u, v)."""
    rf = f.rf_masks()
    m = f.target.frame.size
    ydown = tuple(mask_of(v for v in range(m) if (f.target.rel[v] >> v2) & 1)
                  for v2 in range(m))
    for u in range(f.source.frame.size):
        for u2 in iter_bits(f.source.rel[u]):
            for v2 in iter_bits(rf[u2]):
                if not ydown[v2] & rf[u]:
                    return False
    return True


def is_monotone(f: LocaleMap) -> bool:
    return is_upper_monotone(f) and is_lower_monotone(f)


def is_upper_monotone_via_cones(f: LocaleMap) -> bool:
    """Cone form: the up-cone of a preimage sits below the preimage of the up-cone."""
    x, h = f.source, f.hom.table
    up_y = f.target.up_cone_table()
    return all(x.frame.le(x.up_cone(h[v]), h[up_y[v]])
               for v in range(f.target.frame.size))


def is_lower_monotone_via_cones(f: LocaleMap) -> bool:
    x, h = f.source, f.hom.table
    down_y = f.target.down_cone_table()
    return all(x.frame.le(x.down_cone(h[v]), h[down_y[v]])
               for v in range(f.target.frame.size))


def is_monotone_via_cones(f: LocaleMap) -> bool:
    return is_upper_monotone_via_cones(f) and is_lower_monotone_via_cones(f)


def sublocale_order(x: OrderedLocale, n: Nucleus) -> tuple[OrderedLocale, FrameHom]:
    """Order a sublocale by the largest relation keeping the inclusion monotone.

    For fixpoints A, B of the nucleus: A <| B iff every parent element U
    with A below j(U) has B below j(up-cone U), and dually with the
    down-cone.  The result is returned with the frame surjection; its
    validity (preorder plus the join law) is checked by construction of
    the OrderedLocale, not assumed.
    """
    if n.frame is not x.frame and n.frame != x.frame:
        raise ValueError("nucleus does not act on this locale's frame")
    sub, surjection, fixed = nucleus_fixpoints(n)
    f = x.frame
    up = x.up_cone_table()
    down = x.down_cone_table()
    rj = [mask_of(u for u in range(f.size) if f.le(a, n.table[u])) for a in fixed]
    k = len(fixed)
    rel = []
    for i in range(k):
        row = 0
        for j in range(k):
            ok = all((rj[j] >> up[u]) & 1 for u in iter_bits(rj[i])) and \
                 all((rj[i] >> down[v]) & 1 for v in iter_bits(rj[j]))
            if ok:
                row |= 1 << j
        rel.append(row)
    return OrderedLocale(sub, tuple(rel)), surjection
