"""Priestley separation, Esakia recognition, and both round trips."""

import random

import pytest

from ordloc.errors import PreconditionError
from ordloc.esakia import (HeytingAlg, clopen_upset_lattice, clopen_upsets,
                           esakia_roundtrip, esakia_roundtrip_space,
                           is_bi_esakia, is_co_esakia, is_esakia, is_priestley,
                           prime_filter_space, priestley_verdict)
from ordloc.frames import FinFrame
from ordloc.generators import all_posets, all_preorders, all_topologies
from ordloc.preorders import Preorder
from ordloc.spaces import FinSpace, OrderedSpace


def discrete_poset(p: Preorder) -> OrderedSpace:
    return OrderedSpace(FinSpace.discrete(p.size), p)


def chain_alg(n: int) -> HeytingAlg:
    return HeytingAlg(FinFrame.from_opens([(1 << k) - 1 for k in range(n + 1)]))


def boolean_alg(n: int) -> HeytingAlg:
    return HeytingAlg(FinFrame.from_opens(list(range(1 << n))))


def test_priestley_examples():
    assert is_priestley(discrete_poset(Preorder.from_pairs(2, [(0, 1)])))
    cod = OrderedSpace(FinSpace.codiscrete(2), Preorder.from_pairs(2, [(0, 1)]))
    assert not is_priestley(cod)
    se = OrderedSpace(FinSpace.sierpinski(), Preorder.discrete(2))
    assert not is_priestley(se)


def test_priestley_requires_antisymmetry():
    loop = OrderedSpace(FinSpace.discrete(2), Preorder.total(2))
    ok, reason = priestley_verdict(loop)
    assert not ok and "antisymmetric" in reason


def test_esakia_recognition():
    d = discrete_poset(Preorder.from_pairs(3, [(0, 1), (0, 2)]))
    assert is_esakia(d) and is_co_esakia(d) and is_bi_esakia(d)
    cod = OrderedSpace(FinSpace.codiscrete(2), Preorder.from_pairs(2, [(0, 1)]))
    assert not is_esakia(cod)   # conjunction fails on the Priestley part


def test_finite_priestley_collapse():
    """At finite scale the Priestley separation forces a discrete topology,
    so the one-sided and two-sided recognisers coincide; checked by
    exhausting every ordered space on up to 4 points."""
    for n in (1, 2, 3, 4):
        posets = all_posets(n)
        for s in all_topologies(n):
            for p in posets:
                os_ = OrderedSpace(s, p)
                if is_priestley(os_):
                    assert len(s.opens) == 1 << n
                    assert is_esakia(os_) == is_bi_esakia(os_) == True


def test_clopen_upsets_examples():
    two_chain = discrete_poset(Preorder.from_pairs(2, [(0, 1)]))
    alg, masks = clopen_upsets(two_chain)
    assert alg.lattice.size == 3 and masks == (0, 0b10, 0b11)
    antichain = discrete_poset(Preorder.discrete(2))
    alg2, _ = clopen_upsets(antichain)
    assert alg2.lattice.size == 4
    point = discrete_poset(Preorder.discrete(1))
    alg3, _ = clopen_upsets(point)
    assert alg3.lattice.size == 2
    with pytest.raises(PreconditionError, match="Priestley"):
        clopen_upsets(OrderedSpace(FinSpace.codiscrete(2),
                                   Preorder.from_pairs(2, [(0, 1)])))


def test_clopen_upsets_satisfy_residuation():
    alg, _ = clopen_upsets(discrete_poset(Preorder.from_pairs(3, [(0, 1), (1, 2)])))
    lat = alg.lattice
    for a in range(lat.size):
        for b in range(lat.size):
            imp = alg.implies[a][b]
            for c in range(lat.size):
                assert lat.le(c, imp) == lat.le(lat.meet[c][a], b)


def test_prime_filter_space_examples():
    os3, filters3 = prime_filter_space(chain_alg(2))
    assert os3.size == 2
    assert os3.order.leq(0, 1) or os3.order.leq(1, 0)   # a chain
    osb, filtersb = prime_filter_space(boolean_alg(2))
    assert osb.size == 2
    assert osb.order.rows == (1, 2)                     # antichain
    os1, _ = prime_filter_space(chain_alg(1))
    assert os1.size == 1
    for os_ in (os3, osb, os1):
        assert len(os_.space.opens) == 1 << os_.size    # discrete at finite scale


def test_filter_order_orientation_regression():
    """Filters are ordered by inclusion; clopen UPsets then recover the
    algebra.  The three-chain pins the orientation: the filter generated
    by the top sits below the one generated by the middle."""
    alg = chain_alg(2)
    os_, filters = prime_filter_space(alg)
    top_filter = filters.index(0b100)
    mid_filter = filters.index(0b110)
    assert os_.order.leq(top_filter, mid_filter)
    assert not os_.order.leq(mid_filter, top_filter)
    assert esakia_roundtrip(alg)


def test_roundtrip_named_algebras():
    assert esakia_roundtrip(chain_alg(2))
    assert esakia_roundtrip(boolean_alg(2))
    assert esakia_roundtrip(chain_alg(1))
    assert esakia_roundtrip(boolean_alg(3))


def test_roundtrip_all_lattice_fixtures(lattice_fixtures):
    for lat in lattice_fixtures:
        assert esakia_roundtrip(HeytingAlg(lat))


def test_roundtrip_spaces_small():
    two_chain = discrete_poset(Preorder.from_pairs(2, [(0, 1)]))
    assert esakia_roundtrip_space(two_chain)
    with pytest.raises(PreconditionError, match="bi-Esakia"):
        esakia_roundtrip_space(OrderedSpace(FinSpace.sierpinski(),
                                            Preorder.discrete(2)))


def test_roundtrip_all_posets_up_to_five(posets_le5):
    for n, posets in posets_le5.items():
        for p in posets:
            assert esakia_roundtrip_space(discrete_poset(p),
                                          include_unit_check=False)


def test_roundtrip_posets_with_unit_fixed_point(posets_le5, seed):
    rng = random.Random(seed + 4)
    corpus = [p for n in (1, 2, 3, 4) for p in posets_le5[n]]
    corpus += rng.sample(posets_le5[5], 60)
    for p in corpus:
        assert esakia_roundtrip_space(discrete_poset(p), include_unit_check=True)


def test_priestley_implies_order_separation(ordered_le3, posets_le5):
    """Every Priestley fixture is separated on both sides."""
    fixtures = list(ordered_le3) + [discrete_poset(p)
                                    for n in (1, 2, 3, 4) for p in posets_le5[n]]
    seen = 0
    for os_ in fixtures:
        if is_priestley(os_):
            seen += 1
            assert os_.is_tu_ordered() and os_.is_tl_ordered()
    assert seen > 200


def test_implication_tables_preserved_exactly(lattice_fixtures):
    rng = random.Random(8)
    for lat in rng.sample(lattice_fixtures, 40):
        h = HeytingAlg(lat)
        space, filters = prime_filter_space(h)
        alg2, masks2 = clopen_upsets(space)
        index = {m: i for i, m in enumerate(masks2)}
        phi = [index[sum(1 << i for i, mem in enumerate(filters) if (mem >> a) & 1)]
               for a in range(lat.size)]
        for a in range(lat.size):
            for b in range(lat.size):
                assert phi[h.implies[a][b]] == alg2.implies[phi[a]][phi[b]]
