#!/usr/bin/env python3
"""Regenerate the shipped JSON fixtures in canonical form.

Valid fixtures pass every applicable law (`ordloc check --all fixtures/valid`
exits 0); the ones under cases/ parse cleanly but carry mixed verdicts and
anchor regression tests; invalid/ holds rejection fixtures and is written
by hand below since the constructors refuse to build them.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ordloc.documents import document_from_obj, serialize_document

ROOT = Path(__file__).parent.parent / "fixtures"

DISCRETE2 = {
    "kind": "ordered_space",
    "points": ["a", "b"],
    "opens": [[], ["a"], ["b"], ["a", "b"]],
    "order": [["a", "b"]],
}

VALID = {
    "discrete_two_chain.json": DISCRETE2,
    "discrete_vee.json": {
        "kind": "ordered_space",
        "points": ["a", "b", "c"],
        "opens": [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"],
                  ["a", "b", "c"]],
        "order": [["a", "b"], ["a", "c"]],
    },
    "discrete_diamond.json": {
        "kind": "ordered_space",
        "points": ["bot", "l", "r", "top"],
        "opens": [[p] for p in ("bot", "l", "r", "top")],
        "order": [["bot", "l"], ["bot", "r"], ["l", "top"], ["r", "top"]],
    },
    "singleton_space.json": {
        "kind": "space",
        "points": ["x"],
        "opens": [[], ["x"]],
    },
    "three_chain_frame.json": {
        "kind": "frame",
        "elements": ["0", "m", "1"],
        "leq": [["0", "m"], ["m", "1"]],
    },
    "boolean4_frame.json": {
        "kind": "frame",
        "elements": ["0", "a", "b", "1"],
        "leq": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
    },
    "heyting_three_chain.json": {
        "kind": "heyting",
        "elements": ["0", "m", "1"],
        "leq": [["0", "m"], ["m", "1"]],
    },
    "two_chain_em_locale.json": {
        # opens of the discrete two-point chain under the two-sided order
        "kind": "ordered_locale",
        "elements": ["{}", "{a}", "{b}", "{a,b}"],
        "leq": [["{}", "{a}"], ["{}", "{b}"], ["{a}", "{a,b}"], ["{b}", "{a,b}"]],
        "rel": [["{a}", "{b}"], ["{a}", "{a,b}"], ["{a,b}", "{b}"]],
    },
    "boolean4_equality_locale.json": {
        "kind": "ordered_locale",
        "elements": ["0", "a", "b", "1"],
        "leq": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
        "rel": [],
    },
    "identity_map_two_chain.json": {
        "kind": "map",
        "source": DISCRETE2,
        "target": DISCRETE2,
        "map": {"a": "a", "b": "b"},
    },
    "one_element_locale.json": {
        "kind": "ordered_locale",
        "elements": ["*"],
        "leq": [],
        "rel": [],
    },
}

CASES = {
    "sierpinski_equality.json": {
        "kind": "ordered_space",
        "points": ["bot", "top"],
        "opens": [[], ["top"], ["bot", "top"]],
        "order": [],
    },
    "codiscrete_pair.json": {
        "kind": "ordered_space",
        "points": ["a", "b"],
        "opens": [[], ["a", "b"]],
        "order": [["a", "b"]],
    },
    "vee_upper_topology.json": {
        "kind": "ordered_space",
        "points": ["a", "b", "c"],
        "opens": [[], ["b"], ["c"], ["b", "c"], ["a", "b", "c"]],
        "order": [["a", "b"], ["a", "c"]],
    },
    # interior-mediated cone condition holds, open cones fail
    "lambda_no_cones.json": {
        "kind": "ordered_space",
        "points": ["x", "y", "z"],
        "opens": [[], ["x"], ["x", "y", "z"]],
        "order": [["x", "y"]],
    },
    # genuine violator of the interior-mediated cone condition
    "lambda_violator.json": {
        "kind": "ordered_space",
        "points": ["p", "v", "x"],
        "opens": [[], ["x"], ["p", "v"], ["p", "v", "x"]],
        "order": [["v", "x"]],
    },
    # spatial but fails the point-transfer law (bottom relates upward)
    "three_chain_inclusion_locale.json": {
        "kind": "ordered_locale",
        "elements": ["0", "m", "1"],
        "leq": [["0", "m"], ["m", "1"]],
        "rel": [["0", "m"], ["m", "1"]],
    },
}

INVALID = {
    "m3_diamond.json": {
        "kind": "frame",
        "elements": ["0", "a", "b", "c", "1"],
        "leq": [["0", "a"], ["0", "b"], ["0", "c"],
                ["a", "1"], ["b", "1"], ["c", "1"]],
    },
    "n5_pentagon.json": {
        "kind": "frame",
        "elements": ["0", "a", "b", "c", "1"],
        "leq": [["0", "a"], ["a", "c"], ["c", "1"], ["0", "b"], ["b", "1"]],
    },
    "missing_full_topology.json": {
        "kind": "space",
        "points": ["a", "b", "c"],
        "opens": [[], ["a"]],
    },
    "nonlattice_frame.json": {
        "kind": "frame",
        "elements": ["a", "b"],
        "leq": [],
    },
    "axiom_v_violation.json": {
        "kind": "ordered_locale",
        "elements": ["0", "a", "b", "1"],
        "leq": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
        "rel": [["a", "b"]],
    },
    "unknown_kind.json": {
        "kind": "poset",
        "points": ["a"],
    },
}


def main() -> None:
    for sub, table, canonical in (("valid", VALID, True), ("cases", CASES, True),
                                  ("invalid", INVALID, False)):
        directory = ROOT / sub
        directory.mkdir(parents=True, exist_ok=True)
        for name, obj in table.items():
            if canonical:
                text = serialize_document(document_from_obj(obj))
            else:
                text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
            (directory / name).write_text(text)
            print("wrote", directory / name)
    bad = ROOT / "invalid" / "bad_syntax.json"
    bad.write_text('{"kind": "space", "points": ["a"\n')
    print("wrote", bad)


if __name__ == "__main__":
    main()
