"""Acceptance gate: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines.  Randomised corpora are seeded (ORDLOC_SEED overrides) so every
run checks the same instances.
"""

import json
import random
import time
from contextlib import contextmanager

import pytest

from ordloc.cli import main as cli_main
from ordloc.documents import parse_document, serialize_document
from ordloc.duality import (OrderFlavour, O_space, axiom_p_direct,
                            axiom_p_lower, axiom_p_upper, axiom_p_via_cones,
                            check_triangle_identities, cones_for_flavour,
                            counit, duality_report, pt_locale,
                            satisfies_axiom_p, unit)
from ordloc.esakia import (HeytingAlg, esakia_roundtrip, esakia_roundtrip_space,
                           is_priestley)
from ordloc.frames import FrameHom, frame_of_opens, points_of_frame
from ordloc.generators import (all_maps, all_preorders, random_monotone_continuous_map,
                               random_ordered_locale, random_preorder,
                               random_space, seed_from_env)
from ordloc.locales import (LocaleMap, compose_maps, is_lower_monotone,
                            is_lower_monotone_via_cones, is_monotone,
                            is_monotone_via_cones, is_upper_monotone,
                            is_upper_monotone_via_cones)
from ordloc.preorders import Preorder, is_monotone_fn, iter_bits, mask_of, preimage
from ordloc.spaces import FinSpace, OrderedSpace

from oracles import brute_force_point_masks

EM, UP, LO = OrderFlavour.EM, OrderFlavour.UPPER, OrderFlavour.LOWER


@contextmanager
def criterion(number: int, label: str, budget: float | None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {number:2d} FAIL {label}")
        raise
    elapsed = time.perf_counter() - start
    print(f"criterion {number:2d} PASS {label} ({elapsed:.2f}s)")
    if budget is not None:
        assert elapsed < budget, f"criterion {number} exceeded {budget}s: {elapsed:.2f}s"


def _cone_calculus_laws(p: Preorder, subsets, families):
    full = (1 << p.size) - 1
    for a in subsets:
        up, down = p.up_set(a), p.down_set(a)
        assert not a & ~up and not a & ~down
        assert p.up_set(up) == up and p.down_set(down) == down
        b = a | (a >> 1)
        assert not up & ~p.up_set(b) and not down & ~p.down_set(b)
    for fam in families:
        union = 0
        up_union = down_union = 0
        for m in fam:
            union |= m
            up_union |= p.up_set(m)
            down_union |= p.down_set(m)
        assert p.up_set(union) == up_union
        assert p.down_set(union) == down_union


def _preimage_clauses_agree(g, p, q, q_cones):
    mono = is_monotone_fn(g, p, q)
    pres = [preimage(g, b, p.size) for b in range(1 << q.size)]
    up_ok = all(not p.up_set(pres[b]) & ~preimage(g, q_cones[b][0], p.size)
                for b in range(1 << q.size))
    down_ok = all(not p.down_set(pres[b]) & ~preimage(g, q_cones[b][1], p.size)
                  for b in range(1 << q.size))
    return mono == up_ok and mono == down_ok


def test_criterion_1_cone_calculus(preorders_le3, seed):
    with criterion(1, "cone calculus and monotone map characterisations", 5.0):
        for p in preorders_le3:
            subsets = range(1 << p.size)
            pairs = [(a, b) for a in subsets for b in subsets]
            _cone_calculus_laws(p, subsets, [(a, b) for a, b in pairs[:64]])
        rng = random.Random(seed + 100)
        for _ in range(500):
            p = random_preorder(rng, rng.randrange(1, 7))
            subsets = [rng.randrange(1 << p.size) for _ in range(12)]
            families = [tuple(rng.randrange(1 << p.size)
                              for _ in range(rng.randrange(4)))
                        for _ in range(6)]
            _cone_calculus_laws(p, subsets, families)
        # monotonicity against both preimage-cone clauses, exhaustively <= 3
        cones = {}
        for q in preorders_le3:
            key = id(q)
            cones[key] = [(q.up_set(b), q.down_set(b)) for b in range(1 << q.size)]
        for p in preorders_le3:
            for q in preorders_le3:
                for g in all_maps(p.size, q.size):
                    assert _preimage_clauses_agree(g, p, q, cones[id(q)])
        # and on seeded random instances up to 6 elements
        rng = random.Random(seed + 101)
        for _ in range(500):
            p = random_preorder(rng, rng.randrange(1, 7))
            q = random_preorder(rng, rng.randrange(1, 7))
            qc = [(q.up_set(b), q.down_set(b)) for b in range(1 << q.size)]
            g = tuple(rng.randrange(q.size) for _ in range(p.size))
            assert _preimage_clauses_agree(g, p, q, qc)


def test_criterion_2_open_cone_equivalences(ordered_le3, random_ordered_45):
    with criterion(2, "open cones iff interior characterisation iff push-up", 30.0):
        for os_ in ordered_le3 + random_ordered_45:
            assert (os_.has_open_upper_cones()
                    == os_.satisfies_internal_cone_char_upper()
                    == os_.satisfies_pushup_upper())
            assert (os_.has_open_lower_cones()
                    == os_.satisfies_internal_cone_char_lower()
                    == os_.satisfies_pushup_lower())
            assert os_.has_open_cones() == os_.satisfies_internal_cone_char()
            assert os_.has_open_cones() == os_.satisfies_pushup()


def test_criterion_3_interior_condition_gap(ordered_le3, random_ordered_45,
                                            fixture_dir):
    with criterion(3, "interior cone condition strictly weaker than open cones", None):
        for os_ in ordered_le3 + random_ordered_45:
            if os_.has_open_cones():
                assert os_.satisfies_lambda()
        witnesses = [os_ for os_ in ordered_le3
                     if os_.satisfies_lambda() and not os_.has_open_cones()]
        assert witnesses, "exhaustive search must exhibit the gap"
        doc = parse_document((fixture_dir / "cases" / "lambda_no_cones.json").read_text())
        pinned = doc.payload
        assert pinned.satisfies_lambda() and not pinned.has_open_cones()
        assert any(w.space.opens == pinned.space.opens
                   and w.order.rows == pinned.order.rows for w in witnesses)


def test_criterion_4_points_oracle(lattice_fixtures, random_frames):
    with criterion(4, "join-irreducible points equal brute-force filters", 10.0):
        assert any(f.size >= 17 for f in lattice_fixtures)
        for f in lattice_fixtures + random_frames:
            fast = sorted(p.members for p in points_of_frame(f))
            assert fast == brute_force_point_masks(f)


def _random_locale_map_triples(seed, count):
    rng = random.Random(seed + 102)
    triples = []
    for _ in range(count):
        sizes = [rng.randrange(1, 4) for _ in range(3)]
        spaces = [OrderedSpace(random_space(rng, n, max_opens=10),
                               random_preorder(rng, n)) for n in sizes]
        locs = [random_ordered_locale(rng, frame=frame_of_opens(o.space)[0])
                for o in spaces]
        maps = []
        for k in (0, 1):
            g = random_monotone_continuous_map(rng, spaces[k], spaces[k + 1])
            idx = {m: i for i, m in enumerate(spaces[k].space.opens)}
            table = tuple(idx[mask_of(x for x in range(spaces[k].size)
                                      if (v >> g[x]) & 1)]
                          for v in spaces[k + 1].space.opens)
            maps.append(LocaleMap(FrameHom(locs[k + 1].frame, locs[k].frame, table),
                                  source=locs[k], target=locs[k + 1]))
        triples.append((locs, maps))
    return triples


def test_criterion_5_ordered_locale_laws(random_locales, seed):
    with criterion(5, "ordered locale cone laws, shifts, and map forms", 60.0):
        for x in random_locales:
            f = x.frame
            assert f.size <= 16
            up, down = x.up_cone_table(), x.down_cone_table()
            for u in range(f.size):
                assert f.le(u, up[u]) and f.le(u, down[u])
                for v in iter_bits(x.rel[u]):
                    assert f.le(u, down[v]) and f.le(v, up[u])
                assert x.rel_holds(u, up[u]) and x.rel_holds(down[u], u)
                assert up[up[u]] == up[u] and down[down[u]] == down[u]
                for v in iter_bits(f.leq[u]):
                    assert f.le(up[u], up[v]) and f.le(down[u], down[v])
                for u2 in iter_bits(x.rel[u]):
                    for v in iter_bits(f.leq[u]):
                        v2 = f.join[u2][v]
                        assert x.rel_holds(v, v2) and f.le(u2, v2)
                    for v2 in iter_bits(f.leq[u2]):
                        v = f.join[u][v2]
                        assert f.le(u, v) and x.rel_holds(v, v2)
        for locs, (f1, g1) in _random_locale_map_triples(seed, 300):
            assert is_upper_monotone(f1) == is_upper_monotone_via_cones(f1)
            assert is_lower_monotone(f1) == is_lower_monotone_via_cones(f1)
            assert is_monotone(f1) == is_monotone_via_cones(f1)
            comp = compose_maps(g1, f1)
            rf, rg, rgf = f1.rf_masks(), g1.rf_masks(), comp.rf_masks()
            for u in range(locs[0].frame.size):
                via = 0
                for v in iter_bits(rf[u]):
                    via |= rg[v]
                assert via == rgf[u]
            if is_monotone(f1) and is_monotone(g1):
                assert is_monotone(comp)


def test_criterion_6_axiom_p(random_locales, ordered_le3, random_ordered_45):
    with criterion(6, "point-transfer law: both forms, opens, and cones", None):
        for x in random_locales:
            assert axiom_p_direct(x) == axiom_p_via_cones(x)
            if satisfies_axiom_p(x, EM):
                assert pt_locale(x, EM).os.has_open_cones()
        for os_ in ordered_le3 + random_ordered_45:
            if os_.has_open_cones():
                assert satisfies_axiom_p(O_space(os_, EM), EM)


def test_criterion_7_adjunction(ordered_le3, random_ordered_45, random_locales):
    with criterion(7, "unit/counit monotonicity and triangle identities", 60.0):
        cone_spaces = no_cone_spaces = 0
        for os_ in ordered_le3 + random_ordered_45:
            has = os_.has_open_cones()
            cone_spaces += has
            no_cone_spaces += not has
            assert unit(os_, EM).monotone == has
        assert cone_spaces and no_cone_spaces   # both directions exercised
        for x in random_locales:
            assert counit(x, EM).monotone
        for os_ in ordered_le3:
            if os_.has_open_cones():
                assert check_triangle_identities(os_, O_space(os_, EM), EM)
        for x in random_locales[:150]:
            if satisfies_axiom_p(x, EM):
                assert check_triangle_identities(pt_locale(x, EM).os, x, EM)


def test_criterion_8_duality_fixed_points(ordered_le3, random_ordered_45,
                                          random_locales):
    with criterion(8, "duality fixed points in all three flavours", None):
        for os_ in ordered_le3 + random_ordered_45:
            assert os_.space.is_t0() == os_.space.is_sober()
            for fl, sep, cones in ((EM, os_.is_t0_ordered, os_.has_open_cones),
                                   (UP, os_.is_tu_ordered, os_.has_open_upper_cones),
                                   (LO, os_.is_tl_ordered, os_.has_open_lower_cones)):
                r = duality_report(os_, fl)
                if os_.space.is_sober() and sep() and cones():
                    assert r.roundtrip_iso
                assert r.consistent
        for x in random_locales:
            for fl, axp in ((EM, satisfies_axiom_p), (UP, axiom_p_upper),
                            (LO, axiom_p_lower)):
                c = counit(x, fl)
                want = c.iso and (axp(x, fl) if fl is EM else axp(x))
                if want:
                    assert c.monotone and c.inverse_monotone
                r = duality_report(x, fl)
                assert r.consistent
            assert pt_locale(x, EM).os.is_t0_ordered()
            assert pt_locale(x, UP).os.is_tu_ordered()
            assert pt_locale(x, LO).os.is_tl_ordered()


def test_criterion_9_esakia(lattice_fixtures, posets_le5, ordered_le3, seed):
    with criterion(9, "Esakia round trips and Priestley separation", 30.0):
        for lat in lattice_fixtures:
            assert lat.size <= 20
            assert esakia_roundtrip(HeytingAlg(lat))
        for n, posets in posets_le5.items():
            for p in posets:
                os_ = OrderedSpace(FinSpace.discrete(p.size), p)
                assert esakia_roundtrip_space(os_, include_unit_check=False)
        priestley_seen = 0
        for os_ in ordered_le3:
            if is_priestley(os_):
                priestley_seen += 1
                assert os_.is_tu_ordered() and os_.is_tl_ordered()
        assert priestley_seen
        rng = random.Random(seed + 103)
        corpus = [p for n in (1, 2, 3, 4) for p in posets_le5[n]]
        corpus += rng.sample(posets_le5[5], 40)
        for p in corpus:
            os_ = OrderedSpace(FinSpace.discrete(p.size), p)
            assert esakia_roundtrip_space(os_, include_unit_check=True)


def test_criterion_10_cli_contract(fixture_dir, capsys):
    with criterion(10, "document round trips and CLI exit codes", None):
        files = sorted((fixture_dir / "valid").glob("*.json"))
        files += sorted((fixture_dir / "cases").glob("*.json"))
        for path in files:
            text = path.read_text()
            assert serialize_document(parse_document(text)) == text
        assert cli_main(["check", str(fixture_dir / "valid"), "--all"]) == 0
        capsys.readouterr()
        code = cli_main(["check", str(fixture_dir / "invalid" / "m3_diamond.json"),
                         "--all"])
        out = capsys.readouterr().out
        assert code == 1
        report = json.loads(out)
        assert report["error"]["law"] == "distributivity"
        assert set(report["error"]["witnesses"]) == {"a", "b", "c"}
        assert cli_main(["check", str(fixture_dir / "invalid" / "bad_syntax.json"),
                         "--all"]) == 2
        capsys.readouterr()
        with pytest.raises(SystemExit) as exc:
            cli_main(["check", str(fixture_dir / "valid")])
        assert exc.value.code == 2
        capsys.readouterr()
