"""The opens and points functors between ordered spaces and ordered locales.

Both functors come in three flavours, depending on which relation is put
on the open sets (or dually on the points): the upper order (v inside the
up-set of u), the lower order (u inside the down-set of v), or both at
once (Egli-Milner).  The unit sends a point to its neighbourhood filter;
the counit sends a frame element to its set of points.  Fixed points of
the adjunction are detected by `duality_report`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import InvariantError, PreconditionError
from .frames import (FinFrame, FrameHom, PointFilter, frame_of_opens,
                     points_of_frame)
from .locales import (LocaleMap, OrderedLocale, is_lower_monotone,
                      is_monotone, is_upper_monotone)
from .preorders import Preorder, is_monotone_fn, iter_bits, mask_of, preimage
from .spaces import FinSpace, OrderedSpace


class OrderFlavour(Enum):
    EM = "em"
    UPPER = "upper"
    LOWER = "lower"


def monotone_for_flavour(f: LocaleMap, flavour: OrderFlavour) -> bool:
    if flavour is OrderFlavour.UPPER:
        return is_upper_monotone(f)
    if flavour is OrderFlavour.LOWER:
        return is_lower_monotone(f)
    return is_monotone(f)


def cones_for_flavour(os: OrderedSpace, flavour: OrderFlavour) -> bool:
    if flavour is OrderFlavour.UPPER:
        return os.has_open_upper_cones()
    if flavour is OrderFlavour.LOWER:
        return os.has_open_lower_cones()
    return os.has_open_cones()


def separation_for_flavour(os: OrderedSpace, flavour: OrderFlavour) -> bool:
    if flavour is OrderFlavour.UPPER:
        return os.is_tu_ordered()
    if flavour is OrderFlavour.LOWER:
        return os.is_tl_ordered()
    return os.is_t0_ordered()


# --- opens ----------------------------------------------------------------

def space_order_rel(os: OrderedSpace, flavour: OrderFlavour) -> tuple[int, ...]:
    """Rows of the chosen order on the open sets, indexed like os.space.opens."""
    opens = os.space.opens
    n = len(opens)
    ups = [os.order.up_set(u) for u in opens]
    downs = [os.order.down_set(u) for u in opens]
    upper = tuple(mask_of(j for j in range(n) if not opens[j] & ~ups[i])
                  for i in range(n))
    if flavour is OrderFlavour.UPPER:
        return upper
    lower = tuple(mask_of(j for j in range(n) if not opens[i] & ~downs[j])
                  for i in range(n))
    if flavour is OrderFlavour.LOWER:
        return lower
    return tuple(u & l for u, l in zip(upper, lower))


def O_space(os: OrderedSpace, flavour: OrderFlavour = OrderFlavour.EM) -> OrderedLocale:
    """Ordered locale of open sets; element i is os.space.opens[i].

    The join law holds by construction and is re-validated by the
    OrderedLocale constructor.
    """
    frame, _ = frame_of_opens(os.space)
    return OrderedLocale(frame, space_order_rel(os, flavour))


def O_map(g: Sequence[int], source: OrderedSpace, target: OrderedSpace,
          flavour: OrderFlavour = OrderFlavour.EM) -> tuple[LocaleMap, bool]:
    """Locale map of a continuous monotone function, with its monotonicity verdict.

    Continuity and pointwise monotonicity are checked first and reported
    as distinct failures.
    """
    if len(g) != source.size:
        raise ValueError("map is not total on the source carrier")
    pre_tables = []
    src_index = {u: i for i, u in enumerate(source.space.opens)}
    for v in target.space.opens:
        p = preimage(g, v, source.size)
        if p not in src_index:
            raise InvariantError("continuity", (v,), "preimage of an open is not open")
        pre_tables.append(src_index[p])
    if not is_monotone_fn(g, source.order, target.order):
        bad = next((x, y) for x in range(source.size)
                   for y in iter_bits(source.order.rows[x])
                   if not target.order.leq(g[x], g[y]))
        raise InvariantError("monotonicity", bad, "map does not preserve the order")
    xs = O_space(source, flavour)
    xt = O_space(target, flavour)
    hom = FrameHom(xt.frame, xs.frame, tuple(pre_tables))
    lmap = LocaleMap(hom, source=xs, target=xt)
    return lmap, monotone_for_flavour(lmap, flavour)


# --- points ---------------------------------------------------------------

def point_order_rows_direct(x: OrderedLocale,
                            filters: Sequence[PointFilter]) -> tuple[int, ...]:
    """Egli-Milner order on points, straight from the definition.

    F <= G iff every member of F relates to some member of G, and every
    member of G is related from some member of F.
    """
    n = x.frame.size
    dcol = tuple(mask_of(w for w in range(n) if (x.rel[w] >> v) & 1) for v in range(n))
    rows = []
    for i, f in enumerate(filters):
        row = 0
        for j, g in enumerate(filters):
            ok = all(x.rel[u] & g.members for u in iter_bits(f.members)) and \
                 all(dcol[v] & f.members for v in iter_bits(g.members))
            if ok:
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def point_order_rows_via_cones(x: OrderedLocale, filters: Sequence[PointFilter],
                               flavour: OrderFlavour) -> tuple[int, ...]:
    """Point order through localic cones: up-cones of F land in G, down-cones of G in F."""
    up = x.up_cone_table()
    down = x.down_cone_table()
    rows = []
    for f in filters:
        row = 0
        for j, g in enumerate(filters):
            ok = True
            if flavour in (OrderFlavour.EM, OrderFlavour.UPPER):
                ok = all(g.contains(up[u]) for u in iter_bits(f.members))
            if ok and flavour in (OrderFlavour.EM, OrderFlavour.LOWER):
                ok = all(f.contains(down[v]) for v in iter_bits(g.members))
            if ok:
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class PtSpace:
    """Point space of an ordered locale.

    `pt_masks[u]` is the raw set of points containing frame element u, so
    non-spatiality stays observable; the space topology is the
    deduplicated family.  `filters[i].generator` is the frame element
    generating point i.
    """

    locale: OrderedLocale
    flavour: OrderFlavour
    os: OrderedSpace
    filters: tuple[PointFilter, ...]
    pt_masks: tuple[int, ...]


def pt_locale(x: OrderedLocale, flavour: OrderFlavour = OrderFlavour.EM) -> PtSpace:
    filters = points_of_frame(x.frame)
    p = len(filters)
    pt_masks = tuple(mask_of(i for i, f in enumerate(filters) if f.contains(u))
                     for u in range(x.frame.size))
    space = FinSpace(p, tuple(sorted(set(pt_masks))))
    if flavour is OrderFlavour.EM:
        rows = point_order_rows_direct(x, filters)
    else:
        rows = point_order_rows_via_cones(x, filters, flavour)
    return PtSpace(x, flavour, OrderedSpace(space, Preorder(p, rows)), filters, pt_masks)


@dataclass(frozen=True)
class PtMap:
    table: tuple[int, ...]
    source: PtSpace
    target: PtSpace


def pt_map(f: LocaleMap, flavour: OrderFlavour = OrderFlavour.EM) -> PtMap:
    """Continuous monotone point map of a monotone locale map.

    Sends a point to the filter of target elements whose preimage it
    contains; continuity and monotonicity are re-verified on the result.
    """
    if not monotone_for_flavour(f, flavour):
        raise InvariantError("monotonicity", (),
                             f"locale map is not {flavour.value}-monotone")
    src = pt_locale(f.source, flavour)
    tgt = pt_locale(f.target, flavour)
    h = f.hom.table
    index = {g.members: j for j, g in enumerate(tgt.filters)}
    table = []
    for filt in src.filters:
        members = mask_of(v for v in range(f.target.frame.size) if filt.contains(h[v]))
        if members not in index:
            raise InvariantError("point-image", (filt.generator,),
                                 "image filter is not a point of the target")
        table.append(index[members])
    for w in tgt.os.space.opens:
        if preimage(table, w, src.os.size) not in src.os.space._open_set():
            raise InvariantError("continuity", (w,), "point map is not continuous")
    if not is_monotone_fn(table, src.os.order, tgt.os.order):
        raise InvariantError("monotonicity", (), "point map is not monotone")
    return PtMap(tuple(table), src, tgt)


# --- unit and counit -------------------------------------------------------

@dataclass(frozen=True)
class UnitResult:
    """The map x -> neighbourhood filter of x, with its verdicts."""

    table: tuple[int, ...]
    pt: PtSpace
    monotone: bool
    injective: bool
    surjective: bool
    order_reflecting: bool


def unit(os: OrderedSpace, flavour: OrderFlavour = OrderFlavour.EM) -> UnitResult:
    x = O_space(os, flavour)
    p = pt_locale(x, flavour)
    index = {f.members: i for i, f in enumerate(p.filters)}
    table = []
    for pt_ in range(os.size):
        members = mask_of(i for i, u in enumerate(os.space.opens) if (u >> pt_) & 1)
        table.append(index[members])
    table = tuple(table)
    order = p.os.order
    monotone = all(order.leq(table[a], table[b])
                   for a in range(os.size) for b in iter_bits(os.order.rows[a]))
    injective = len(set(table)) == os.size
    surjective = set(table) == set(range(len(p.filters)))
    order_reflecting = all(os.order.leq(a, b)
                           for a in range(os.size) for b in range(os.size)
                           if order.leq(table[a], table[b]))
    return UnitResult(table, p, monotone, injective, surjective, order_reflecting)


@dataclass(frozen=True)
class CounitResult:
    """The frame map u -> points of u, with its verdicts.

    iso means injective (it is surjective onto the point topology by
    construction), i.e. the locale is spatial; the inverse verdict is
    None when there is no inverse.
    """

    hom: FrameHom
    pt: PtSpace
    monotone: bool
    iso: bool
    inverse_monotone: Optional[bool]


def counit(x: OrderedLocale, flavour: OrderFlavour = OrderFlavour.EM) -> CounitResult:
    p = pt_locale(x, flavour)
    pt_frame, pt_opens = frame_of_opens(p.os.space)
    index = {m: i for i, m in enumerate(pt_opens)}
    table = tuple(index[p.pt_masks[u]] for u in range(x.frame.size))
    hom = FrameHom(x.frame, pt_frame, table)
    opt = O_space(p.os, flavour)
    eps = LocaleMap(hom, source=opt, target=x)
    monotone = monotone_for_flavour(eps, flavour)
    iso = len(set(table)) == x.frame.size
    inverse_monotone = None
    if iso:
        inv = [0] * pt_frame.size
        for u, w in enumerate(table):
            inv[w] = u
        inv_map = LocaleMap(FrameHom(pt_frame, x.frame, tuple(inv)),
                            source=x, target=opt)
        inverse_monotone = monotone_for_flavour(inv_map, flavour)
    return CounitResult(hom, p, monotone, iso, inverse_monotone)


# --- the point-transfer law ------------------------------------------------

def axiom_p_direct(x: OrderedLocale) -> bool:
    """Related opens have related point sets, in the Egli-Milner sense."""
    p = pt_locale(x, OrderFlavour.EM)
    order = p.os.order
    for u, v in x.pairs():
        pu, pv = p.pt_masks[u], p.pt_masks[v]
        if pv & ~order.up_set(pu) or pu & ~order.down_set(pv):
            return False
    return True


def axiom_p_via_cones(x: OrderedLocale) -> bool:
    """Cone form: point sets of localic cones are the cones of point sets."""
    p = pt_locale(x, OrderFlavour.EM)
    order = p.os.order
    up = x.up_cone_table()
    down = x.down_cone_table()
    for u in range(x.frame.size):
        if order.up_set(p.pt_masks[u]) != p.pt_masks[up[u]]:
            return False
        if order.down_set(p.pt_masks[u]) != p.pt_masks[down[u]]:
            return False
    return True


def axiom_p_upper(x: OrderedLocale) -> bool:
    """Upper half of the cone form, against the upper order on points."""
    p = pt_locale(x, OrderFlavour.UPPER)
    up = x.up_cone_table()
    return all(p.os.order.up_set(p.pt_masks[u]) == p.pt_masks[up[u]]
               for u in range(x.frame.size))


def axiom_p_lower(x: OrderedLocale) -> bool:
    p = pt_locale(x, OrderFlavour.LOWER)
    down = x.down_cone_table()
    return all(p.os.order.down_set(p.pt_masks[u]) == p.pt_masks[down[u]]
               for u in range(x.frame.size))


def satisfies_axiom_p(x: OrderedLocale, flavour: OrderFlavour = OrderFlavour.EM) -> bool:
    if flavour is OrderFlavour.UPPER:
        return axiom_p_upper(x)
    if flavour is OrderFlavour.LOWER:
        return axiom_p_lower(x)
    return axiom_p_direct(x)


# --- adjunction -------------------------------------------------------------

def check_triangle_identities(os: OrderedSpace, x: OrderedLocale,
                              flavour: OrderFlavour = OrderFlavour.EM) -> bool:
    """Both triangle identities, computed tablewise.

    Preconditions (open cones for the space, the point-transfer law for
    the locale) are enforced, not silently skipped.
    """
    missing = []
    if not cones_for_flavour(os, flavour):
        missing.append("space lacks the open cone condition")
    if not satisfies_axiom_p(x, flavour):
        missing.append("locale fails the point-transfer law")
    if missing:
        raise PreconditionError("; ".join(missing))

    u_res = unit(os, flavour)
    for i, open_mask in enumerate(os.space.opens):
        back = mask_of(pt_ for pt_ in range(os.size)
                       if (u_res.pt.pt_masks[i] >> u_res.table[pt_]) & 1)
        if back != open_mask:
            return False

    p = pt_locale(x, flavour)
    c = counit(x, flavour)
    eps = LocaleMap(c.hom, source=O_space(p.os, flavour), target=x)
    pm = pt_map(eps, flavour)
    eta = unit(p.os, flavour)
    for i in range(len(p.filters)):
        if pm.table[eta.table[i]] != i:
            return False
    return True


# --- fixed point reports ----------------------------------------------------

@dataclass(frozen=True)
class SpaceDualityReport:
    flavour: str
    open_upper_cones: bool
    open_lower_cones: bool
    t0: bool
    sober: bool
    enough_points: bool
    t0_ordered: bool
    tu_ordered: bool
    tl_ordered: bool
    unit_monotone: bool
    unit_injective: bool
    unit_surjective: bool
    unit_order_reflecting: bool
    unit_continuous: bool
    unit_open_map: bool
    fixed_point: bool
    roundtrip_iso: bool
    consistent: bool


@dataclass(frozen=True)
class LocaleDualityReport:
    flavour: str
    spatial: bool
    axiom_p: bool
    counit_monotone: bool
    counit_iso: bool
    counit_inverse_monotone: Optional[bool]
    pt_t0_ordered: bool
    pt_tu_ordered: bool
    pt_tl_ordered: bool
    pt_open_upper_cones: bool
    pt_open_lower_cones: bool
    fixed_point: bool
    roundtrip_iso: bool
    consistent: bool


def duality_report(obj, flavour: OrderFlavour = OrderFlavour.EM):
    """Every fixed-point-relevant verdict for a space or a locale.

    A space is a fixed point when it is sober, order-separated and has
    open cones in the chosen flavour; membership must coincide with the
    unit being an order-homeomorphism.  Dually for locales with
    spatiality and the point-transfer law.
    """
    if isinstance(obj, OrderedSpace):
        return _space_report(obj, flavour)
    if isinstance(obj, OrderedLocale):
        return _locale_report(obj, flavour)
    raise TypeError("duality_report expects an OrderedSpace or an OrderedLocale")


def _space_report(os: OrderedSpace, flavour: OrderFlavour) -> SpaceDualityReport:
    from .frames import has_enough_points
    u = unit(os, flavour)
    continuous = all(
        preimage(u.table, w, os.size) in os.space._open_set()
        for w in u.pt.os.space.opens)
    open_map = all(
        mask_of(u.table[x] for x in iter_bits(o)) in u.pt.os.space._open_set()
        for o in os.space.opens)
    sober = os.space.is_sober()
    if flavour is OrderFlavour.UPPER:
        fixed = sober and os.is_tu_ordered() and os.has_open_upper_cones()
    elif flavour is OrderFlavour.LOWER:
        fixed = sober and os.is_tl_ordered() and os.has_open_lower_cones()
    else:
        fixed = sober and os.is_t0_ordered() and os.has_open_cones()
    roundtrip = (u.injective and u.surjective and u.monotone
                 and u.order_reflecting and continuous and open_map)
    return SpaceDualityReport(
        flavour=flavour.value,
        open_upper_cones=os.has_open_upper_cones(),
        open_lower_cones=os.has_open_lower_cones(),
        t0=os.space.is_t0(),
        sober=sober,
        enough_points=has_enough_points(os.space),
        t0_ordered=os.is_t0_ordered(),
        tu_ordered=os.is_tu_ordered(),
        tl_ordered=os.is_tl_ordered(),
        unit_monotone=u.monotone,
        unit_injective=u.injective,
        unit_surjective=u.surjective,
        unit_order_reflecting=u.order_reflecting,
        unit_continuous=continuous,
        unit_open_map=open_map,
        fixed_point=fixed,
        roundtrip_iso=roundtrip,
        consistent=fixed == roundtrip,
    )


def _locale_report(x: OrderedLocale, flavour: OrderFlavour) -> LocaleDualityReport:
    c = counit(x, flavour)
    p = c.pt
    axp = satisfies_axiom_p(x, flavour)
    # iso in the ordered category: invertible with both directions monotone
    roundtrip = c.iso and c.monotone and bool(c.inverse_monotone)
    fixed = c.iso and axp
    return LocaleDualityReport(
        flavour=flavour.value,
        spatial=c.iso,
        axiom_p=axp,
        counit_monotone=c.monotone,
        counit_iso=c.iso,
        counit_inverse_monotone=c.inverse_monotone,
        pt_t0_ordered=p.os.is_t0_ordered(),
        pt_tu_ordered=p.os.is_tu_ordered(),
        pt_tl_ordered=p.os.is_tl_ordered(),
        pt_open_upper_cones=p.os.has_open_upper_cones(),
        pt_open_lower_cones=p.os.has_open_lower_cones(),
        fixed_point=fixed,
        roundtrip_iso=roundtrip,
        consistent=fixed == roundtrip,
    )
