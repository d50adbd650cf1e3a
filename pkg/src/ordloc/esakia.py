"""Priestley and Esakia style recognition on finite ordered spaces.

Finite scale collapses part of the classical picture: a finite space
satisfying the Priestley separation axiom is automatically discrete (it is
Hausdorff, and finite Hausdorff spaces are discrete), so every finite
Priestley space already has open cones in both directions.  Compactness is
likewise automatic.  The recognisers still evaluate their definitions
literally rather than assuming the collapse; the collapse itself is a
tested fact, not a shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError
from .frames import FinFrame, points_of_frame
from .preorders import Preorder, iter_bits, mask_of
from .spaces import FinSpace, OrderedSpace


class HeytingAlg:
    """Finite Heyting algebra: a bounded distributive lattice with implication.

    The implication table is derived by residuation (a -> b is the largest
    c with c meet a below b) and materialised lazily.
    """

    def __init__(self, lattice: FinFrame):
        self.lattice = lattice
        self._implies: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def implies(self) -> tuple[tuple[int, ...], ...]:
        if self._implies is None:
            lat = self.lattice
            self._implies = tuple(
                tuple(lat.heyting(a, b) for b in range(lat.size))
                for a in range(lat.size))
        return self._implies

    def __eq__(self, other):
        return isinstance(other, HeytingAlg) and self.lattice == other.lattice

    def __repr__(self):
        return f"HeytingAlg(size={self.lattice.size})"


def priestley_verdict(os: OrderedSpace) -> tuple[bool, Optional[str]]:
    """Priestley separation with a reason when it fails.

    Requires the order to be a partial order; compactness holds for free
    on finite carriers.
    """
    if not os.order.is_antisymmetric():
        return False, "order is not antisymmetric"
    opens = os.space._open_set()
    clopen_upsets = [u for u in os.space.opens
                     if os.space.full & ~u in opens and os.order.up_set(u) == u]
    for x in range(os.size):
        for y in range(os.size):
            if os.order.leq(x, y):
                continue
            if not any((u >> x) & 1 and not (u >> y) & 1 for u in clopen_upsets):
                return False, f"no clopen upset separates {x} from {y}"
    return True, None


def is_priestley(os: OrderedSpace) -> bool:
    return priestley_verdict(os)[0]


def is_esakia(os: OrderedSpace) -> bool:
    """Priestley with open lower cones."""
    return is_priestley(os) and os.has_open_lower_cones()


def is_co_esakia(os: OrderedSpace) -> bool:
    """Priestley with open upper cones."""
    return is_priestley(os) and os.has_open_upper_cones()


def is_bi_esakia(os: OrderedSpace) -> bool:
    return is_priestley(os) and os.has_open_cones()


def clopen_upset_lattice(os: OrderedSpace) -> tuple[FinFrame, tuple[int, ...]]:
    """Lattice of clopen upsets ordered by inclusion, with the carrier masks."""
    ok, reason = priestley_verdict(os)
    if not ok:
        raise PreconditionError(f"not a Priestley space: {reason}")
    opens = os.space._open_set()
    masks = tuple(sorted(u for u in os.space.opens
                         if os.space.full & ~u in opens and os.order.up_set(u) == u))
    return FinFrame.from_opens(masks), masks


def clopen_upsets(os: OrderedSpace) -> tuple[HeytingAlg, tuple[int, ...]]:
    """Heyting algebra of clopen upsets of a Priestley space."""
    lattice, masks = clopen_upset_lattice(os)
    return HeytingAlg(lattice), masks


def prime_filter_space(h: HeytingAlg) -> tuple[OrderedSpace, tuple[int, ...]]:
    """Space of prime filters under inclusion, with each filter's member mask.

    On a finite distributive lattice the prime filters are the principal
    up-sets of join-irreducible elements; the Stone topology degenerates
    to the discrete one at finite scale.
    """
    lat = h.lattice
    filters = points_of_frame(lat)
    p = len(filters)
    if p > 16:
        raise ValueError("too many prime filters for an extensional discrete topology")
    rows = tuple(mask_of(j for j in range(p)
                         if not filters[i].members & ~filters[j].members)
                 for i in range(p))
    os = OrderedSpace(FinSpace.discrete(p), Preorder(p, rows))
    return os, tuple(f.members for f in filters)


def esakia_roundtrip(h: HeytingAlg) -> bool:
    """Does the algebra survive the trip through its prime filter space?

    Checks that a |-> {prime filters containing a} is a bijection onto the
    clopen upsets, order-preserving both ways, and that it carries the
    implication table exactly.
    """
    lat = h.lattice
    space, filters = prime_filter_space(h)
    alg2, masks2 = clopen_upsets(space)
    index = {m: i for i, m in enumerate(masks2)}
    phi = []
    for a in range(lat.size):
        image = mask_of(i for i, members in enumerate(filters) if (members >> a) & 1)
        if image not in index:
            return False
        phi.append(index[image])
    if len(set(phi)) != lat.size or lat.size != alg2.lattice.size:
        return False
    for a in range(lat.size):
        for b in range(lat.size):
            if lat.le(a, b) != alg2.lattice.le(phi[a], phi[b]):
                return False
    for a in range(lat.size):
        for b in range(lat.size):
            if phi[h.implies[a][b]] != alg2.implies[phi[a]][phi[b]]:
                return False
    return True


def esakia_roundtrip_space(os: OrderedSpace, include_unit_check: bool = True) -> bool:
    """Does a bi-Esakia space survive the trip through its clopen upset algebra?

    Checks x |-> {clopen upsets containing x} against the prime filter
    space: bijective, order-preserving both ways, topologies matching.
    With `include_unit_check` the fixed-point form through the point
    functor (the unit being an order-homeomorphism) is verified as well.
    """
    if not is_bi_esakia(os):
        raise PreconditionError("not a bi-Esakia space")
    lattice, masks = clopen_upset_lattice(os)
    space2, filters = prime_filter_space(HeytingAlg(lattice))
    index = {members: i for i, members in enumerate(filters)}
    psi = []
    for x in range(os.size):
        members = mask_of(a for a, m in enumerate(masks) if (m >> x) & 1)
        if members not in index:
            return False
        psi.append(index[members])
    if len(set(psi)) != os.size or os.size != space2.size:
        return False
    for x in range(os.size):
        for y in range(os.size):
            if os.order.leq(x, y) != space2.order.leq(psi[x], psi[y]):
                return False
    image_opens = {mask_of(psi[x] for x in iter_bits(u)) for u in os.space.opens}
    if image_opens != set(space2.space.opens):
        return False
    if include_unit_check:
        from .duality import OrderFlavour, duality_report
        report = duality_report(os, OrderFlavour.EM)
        if not (report.roundtrip_iso and report.fixed_point):
            return False
    return True
