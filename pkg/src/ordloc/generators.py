"""Exhaustive enumerators and seeded random builders for finite instances.

Random builders take an explicit `random.Random`; suites that want an
environment override should seed it via `seed_from_env` (ORDLOC_SEED).
Everything produced here is validated by the ordinary constructors, so a
generator bug cannot silently poison a test corpus.
"""

from __future__ import annotations

import os as _os
import random
from itertools import combinations
from typing import Iterator, Optional

from .frames import FinFrame, frame_of_opens
from .locales import OrderedLocale
from .preorders import Preorder, iter_bits, mask_of
from .spaces import FinSpace, OrderedSpace

DEFAULT_SEED = 94207


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = _os.environ.get("ORDLOC_SEED")
    return int(raw) if raw else default


def all_preorders(n: int) -> list[Preorder]:
    """Every preorder on n elements, by brute force over off-diagonal entries."""
    if n > 4:
        raise ValueError("brute-force preorder enumeration capped at 4 elements")
    slots = [(x, y) for x in range(n) for y in range(n) if x != y]
    out = []
    for choice in range(1 << len(slots)):
        rows = [1 << x for x in range(n)]
        for k, (x, y) in enumerate(slots):
            if (choice >> k) & 1:
                rows[x] |= 1 << y
        if all(not rows[y] & ~rows[x]
               for x in range(n) for y in iter_bits(rows[x])):
            out.append(Preorder(n, tuple(rows)))
    return out


def all_posets(n: int) -> list[Preorder]:
    """Every partial order on n labelled elements.

    Built by adding element k to each poset on k elements: pick a strict
    down-set D and a disjoint strict up-set U with D x U already related.
    Each labelled poset arises exactly once this way.
    """
    layers: list[list[tuple[int, ...]]] = [[()]]
    for k in range(n):
        grown = []
        for rows in layers[k]:
            up_of = list(rows)
            down_of = [mask_of(w for w in range(k) if (rows[w] >> z) & 1)
                       for z in range(k)]
            down_sets = [m for m in range(1 << k)
                         if all(not down_of[x] & ~m for x in iter_bits(m))]
            up_sets = [m for m in range(1 << k)
                       if all(not up_of[x] & ~m for x in iter_bits(m))]
            for d in down_sets:
                for u in up_sets:
                    if d & u:
                        continue
                    if any(u & ~up_of[x] for x in iter_bits(d)):
                        continue
                    new_rows = tuple(
                        (rows[x] | (1 << k)) if (d >> x) & 1 else rows[x]
                        for x in range(k)) + ((1 << k) | u,)
                    grown.append(new_rows)
        layers.append(grown)
    return [Preorder(n, rows) for rows in layers[n]]


def all_topologies(n: int) -> list[FinSpace]:
    """Every topology on n labelled points; brute force, capped at 4 points."""
    if n > 4:
        raise ValueError("brute-force topology enumeration capped at 4 points")
    full = (1 << n) - 1
    middles = [m for m in range(1 << n) if m not in (0, full)]
    out = []
    for choice in range(1 << len(middles)):
        family = {0, full}
        for k, m in enumerate(middles):
            if (choice >> k) & 1:
                family.add(m)
        if all(a | b in family and a & b in family
               for a, b in combinations(family, 2)):
            out.append(FinSpace(n, tuple(sorted(family))))
    return out


def all_maps(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """Every total map from an m-element carrier into an n-element one."""
    if m == 0:
        yield ()
        return
    for rest in all_maps(m - 1, n):
        for t in range(n):
            yield rest + (t,)


def random_preorder(rng: random.Random, n: int, pair_budget: Optional[int] = None) -> Preorder:
    k = rng.randrange(2 * n + 1) if pair_budget is None else pair_budget
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(k)]
    return Preorder.from_pairs(n, pairs)


def random_poset(rng: random.Random, n: int) -> Preorder:
    """Random partial order: closure of random cover pairs oriented low to high."""
    pairs = []
    for _ in range(rng.randrange(2 * n + 1)):
        x, y = rng.randrange(n), rng.randrange(n)
        if x != y:
            pairs.append((min(x, y), max(x, y)))
    return Preorder.from_pairs(n, pairs)


def random_space(rng: random.Random, n: int, base_count: Optional[int] = None,
                 max_opens: int = 18) -> FinSpace:
    """Random topology via closure of a few random subsets; rejection-capped."""
    for _ in range(64):
        k = rng.randrange(1, n + 2) if base_count is None else base_count
        base = [rng.randrange(1 << n) for _ in range(k)]
        space = FinSpace.from_subbasis(n, base)
        if len(space.opens) <= max_opens:
            return space
    return FinSpace.codiscrete(n)


def random_ordered_space(rng: random.Random, n: int, max_opens: int = 18) -> OrderedSpace:
    return OrderedSpace(random_space(rng, n, max_opens=max_opens),
                        random_preorder(rng, n))


def random_frame(rng: random.Random, max_points: int = 5,
                 max_elements: int = 16) -> FinFrame:
    """Random frame realised as the open-set lattice of a random space."""
    n = rng.randrange(1, max_points + 1)
    frame, _ = frame_of_opens(random_space(rng, n, max_opens=max_elements))
    return frame


def close_order_rel(frame: FinFrame, pairs) -> tuple[int, ...]:
    """Reflexive-transitive-join closure of base pairs over frame elements."""
    n = frame.size
    rows = [1 << u for u in range(n)]
    for u, v in pairs:
        rows[u] |= 1 << v
    changed = True
    while changed:
        changed = False
        related = [(u, v) for u in range(n) for v in iter_bits(rows[u])]
        for u, v in related:
            extra = rows[v] & ~rows[u]
            if extra:
                rows[u] |= extra
                changed = True
        for u, v in related:
            for u2, v2 in related:
                ju, jv = frame.join[u][u2], frame.join[v][v2]
                if not (rows[ju] >> jv) & 1:
                    rows[ju] |= 1 << jv
                    changed = True
    return tuple(rows)


def random_ordered_locale(rng: random.Random, frame: Optional[FinFrame] = None,
                          max_elements: int = 16,
                          pair_budget: Optional[int] = None) -> OrderedLocale:
    """Random valid ordered locale: seed pairs, then close to a fixpoint."""
    if frame is None:
        frame = random_frame(rng, max_elements=max_elements)
    k = rng.randrange(4) if pair_budget is None else pair_budget
    pairs = [(rng.randrange(frame.size), rng.randrange(frame.size)) for _ in range(k)]
    return OrderedLocale(frame, close_order_rel(frame, pairs))


def random_continuous_map(rng: random.Random, source: FinSpace,
                          target: FinSpace, attempts: int = 40) -> tuple[int, ...]:
    """Random continuous map; falls back to a constant map, which always works."""
    opens = {u: None for u in source.opens}
    for _ in range(attempts):
        g = tuple(rng.randrange(target.size) for _ in range(source.size))
        if all(mask_of(x for x in range(source.size) if (v >> g[x]) & 1) in opens
               for v in target.opens):
            return g
    return (rng.randrange(target.size),) * source.size if target.size else ()


def random_monotone_continuous_map(rng: random.Random, source: OrderedSpace,
                                   target: OrderedSpace,
                                   attempts: int = 60) -> tuple[int, ...]:
    """Random map that is both continuous and order-preserving."""
    from .preorders import is_monotone_fn
    opens = {u: None for u in source.space.opens}
    for _ in range(attempts):
        g = tuple(rng.randrange(target.size) for _ in range(source.size))
        if not is_monotone_fn(g, source.order, target.order):
            continue
        if all(mask_of(x for x in range(source.size) if (v >> g[x]) & 1) in opens
               for v in target.space.opens):
            return g
    return (rng.randrange(target.size),) * source.size if target.size else ()
