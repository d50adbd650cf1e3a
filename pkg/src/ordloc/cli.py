"""Command line entry point: check, functor, roundtrip, dot.

Exit codes are a stable contract: 0 all checks passed, 1 a law or
invariant failed (the report names the law and its witnesses), 2 usage,
syntax or schema errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .documents import (Document, document_from_obj, document_to_obj,
                        parse_document, serialize_document, set_name)
from .dot import render
from .duality import (OrderFlavour, O_space, duality_report, pt_locale,
                      satisfies_axiom_p)
from .errors import InvariantError, PreconditionError, SchemaError
from .esakia import is_esakia, priestley_verdict
from .frames import points_of_frame
from .locales import check_axiom_v
from .preorders import iter_bits, mask_of

LAW_NAMES = ("open-cones", "lambda", "pushup", "axiom-v", "axiom-p", "t0-ordered",
             "tu", "tl", "priestley", "esakia", "sober", "spatial")

LAW_KINDS = {
    "open-cones": {"ordered_space"},
    "lambda": {"ordered_space"},
    "pushup": {"ordered_space"},
    "t0-ordered": {"ordered_space"},
    "tu": {"ordered_space"},
    "tl": {"ordered_space"},
    "priestley": {"ordered_space"},
    "esakia": {"ordered_space"},
    "sober": {"space", "ordered_space"},
    "axiom-v": {"ordered_locale"},
    "axiom-p": {"ordered_locale"},
    "spatial": {"frame", "ordered_locale"},
}


def _space_of(doc):
    return doc.payload.space if doc.kind == "ordered_space" else doc.payload


def _law_open_cones(doc):
    os_ = doc.payload
    for u in os_.space.opens:
        if not os_.space.is_open(os_.order.up_set(u)):
            return False, {"open": set_name(u, doc.names), "side": "up"}
        if not os_.space.is_open(os_.order.down_set(u)):
            return False, {"open": set_name(u, doc.names), "side": "down"}
    return True, None


def _law_lambda(doc):
    os_ = doc.payload
    sp, order = os_.space, os_.order
    for u in sp.opens:
        int_down = sp.interior(order.down_set(u))
        int_up = sp.interior(order.up_set(u))
        for v in sp.opens:
            if u & order.up_set(v) & ~order.up_set(int_down & v):
                return False, {"u": set_name(u, doc.names),
                               "v": set_name(v, doc.names), "side": "up"}
            if u & order.down_set(v) & ~order.down_set(int_up & v):
                return False, {"u": set_name(u, doc.names),
                               "v": set_name(v, doc.names), "side": "down"}
    return True, None


def _law_pushup(doc):
    os_ = doc.payload
    for u in os_.space.opens:
        i = os_.space.interior(os_.order.up_set(u))
        if os_.order.up_set(i) & ~i:
            return False, {"open": set_name(u, doc.names), "side": "up"}
        i = os_.space.interior(os_.order.down_set(u))
        if os_.order.down_set(i) & ~i:
            return False, {"open": set_name(u, doc.names), "side": "down"}
    return True, None


def _separation_law(method):
    def run(doc):
        os_ = doc.payload
        if getattr(os_, method)():
            return True, None
        for x in range(os_.size):
            for y in range(os_.size):
                if os_.order.leq(x, y):
                    continue
                up = os_._separated_upper(x, y)
                low = os_._separated_lower(x, y)
                failed = {"is_t0_ordered": not (up or low),
                          "is_tu_ordered": not up,
                          "is_tl_ordered": not low}[method]
                if failed:
                    return False, {"x": doc.names[x], "y": doc.names[y]}
        return True, None
    return run


def _law_priestley(doc):
    ok, reason = priestley_verdict(doc.payload)
    return ok, None if ok else {"reason": reason}


def _law_esakia(doc):
    ok, reason = priestley_verdict(doc.payload)
    if not ok:
        return False, {"reason": reason}
    if not is_esakia(doc.payload):
        return False, {"reason": "lower cones are not open"}
    return True, None


def _law_sober(doc):
    space = _space_of(doc)
    for c in space.irreducible_closed_sets():
        generic = [x for x in iter_bits(c) if space.closure(1 << x) == c]
        if len(generic) != 1:
            return False, {"closed": set_name(c, doc.names),
                           "generic_points": [doc.names[x] for x in generic]}
    return True, None


def _law_axiom_v(doc):
    locale = doc.payload
    return check_axiom_v(locale.frame, locale.rel), None


def _law_axiom_p(doc):
    locale = doc.payload
    if satisfies_axiom_p(locale, OrderFlavour.EM):
        return True, None
    p = pt_locale(locale, OrderFlavour.EM)
    order = p.os.order
    for u, v in locale.pairs():
        pu, pv = p.pt_masks[u], p.pt_masks[v]
        if pv & ~order.up_set(pu) or pu & ~order.down_set(pv):
            return False, {"u": doc.names[u], "v": doc.names[v]}
    return False, None


def _law_spatial(doc):
    frame = doc.payload.frame if doc.kind == "ordered_locale" else doc.payload
    filters = points_of_frame(frame)
    masks = [mask_of(i for i, f in enumerate(filters) if f.contains(u))
             for u in range(frame.size)]
    seen = {}
    for u, m in enumerate(masks):
        if m in seen:
            return False, {"u": doc.names[seen[m]], "v": doc.names[u]}
        seen[m] = u
    return True, None


LAW_RUNNERS = {
    "open-cones": _law_open_cones,
    "lambda": _law_lambda,
    "pushup": _law_pushup,
    "t0-ordered": _separation_law("is_t0_ordered"),
    "tu": _separation_law("is_tu_ordered"),
    "tl": _separation_law("is_tl_ordered"),
    "priestley": _law_priestley,
    "esakia": _law_esakia,
    "sober": _law_sober,
    "axiom-v": _law_axiom_v,
    "axiom-p": _law_axiom_p,
    "spatial": _law_spatial,
}


def _error_obj(e) -> dict:
    if isinstance(e, SchemaError):
        return {"type": "schema", "path": e.path, "message": e.message}
    if isinstance(e, InvariantError):
        return {"type": "invariant", "law": e.law,
                "witnesses": list(e.witnesses), "message": e.message}
    return {"type": "error", "message": str(e)}


def _check_one(path: Path, laws) -> tuple[dict, int]:
    try:
        doc = parse_document(path.read_text())
    except SchemaError as e:
        return {"file": str(path), "error": _error_obj(e)}, 2
    except InvariantError as e:
        return {"file": str(path), "error": _error_obj(e)}, 1
    results = []
    code = 0
    for law in laws:
        if doc.kind not in LAW_KINDS[law]:
            results.append({"law": law, "applicable": False})
            continue
        holds, witness = LAW_RUNNERS[law](doc)
        results.append({"law": law, "applicable": True, "holds": holds,
                        "witness": witness})
        if not holds:
            code = 1
    report = {"file": str(path), "kind": doc.kind, "notes": list(doc.notes),
              "laws": results, "pass": code == 0}
    return report, code


def cmd_check(args) -> int:
    laws = list(LAW_NAMES) if args.all else args.law
    target = Path(args.file)
    files = sorted(target.glob("*.json")) if target.is_dir() else [target]
    if target.is_dir() and not files:
        print(json.dumps({"error": {"type": "schema", "message": "no documents found"}}))
        return 2
    reports, code = [], 0
    for f in files:
        report, c = _check_one(f, laws)
        reports.append(report)
        code = max(code, c)
    out = reports[0] if len(files) == 1 and not target.is_dir() else {"files": reports}
    print(json.dumps(out, indent=2, sort_keys=True))
    return code


def _functor_obj(doc: Document, direction: str, flavour: OrderFlavour) -> dict:
    if direction == "o":
        if doc.kind == "ordered_space":
            locale = O_space(doc.payload, flavour)
            names = [set_name(m, doc.names) for m in doc.payload.space.opens]
            return {"kind": "ordered_locale", "elements": names,
                    "leq": _name_pairs(locale.frame.leq, names),
                    "rel": _name_pairs(locale.rel, names)}
        if doc.kind == "space":
            from .frames import frame_of_opens
            frame, masks = frame_of_opens(doc.payload)
            names = [set_name(m, doc.names) for m in masks]
            return {"kind": "frame", "elements": names,
                    "leq": _name_pairs(frame.leq, names)}
        raise SchemaError("kind", f"functor o expects a space, got {doc.kind!r}")
    if doc.kind == "ordered_locale":
        p = pt_locale(doc.payload, flavour)
        names = [f"F{i:02d}" for i in range(len(p.filters))]
        return {"kind": "ordered_space", "points": names,
                "opens": [[names[i] for i in iter_bits(m)] for m in p.os.space.opens],
                "order": _name_pairs(p.os.order.rows, names)}
    if doc.kind == "frame":
        filters = points_of_frame(doc.payload)
        names = [f"F{i:02d}" for i in range(len(filters))]
        masks = sorted({mask_of(i for i, f in enumerate(filters) if f.contains(u))
                        for u in range(doc.payload.size)})
        return {"kind": "space", "points": names,
                "opens": [[names[i] for i in iter_bits(m)] for m in masks]}
    raise SchemaError("kind", f"functor pt expects a locale, got {doc.kind!r}")


def _name_pairs(rows, names) -> list[list[str]]:
    return sorted([names[x], names[y]]
                  for x, row in enumerate(rows) for y in iter_bits(row) if x != y)


def cmd_functor(args) -> int:
    try:
        doc = parse_document(Path(args.file).read_text())
        image = document_from_obj(_functor_obj(doc, args.direction,
                                               OrderFlavour(args.flavour)))
    except SchemaError as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 2
    except InvariantError as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 1
    text = serialize_document(image)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_roundtrip(args) -> int:
    try:
        doc = parse_document(Path(args.file).read_text())
    except SchemaError as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 2
    except InvariantError as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 1
    if doc.kind not in ("ordered_space", "ordered_locale"):
        print(json.dumps({"error": {"type": "schema", "path": "kind",
                                    "message": "roundtrip expects an ordered space or locale"}}))
        return 2
    report = duality_report(doc.payload, OrderFlavour(args.flavour))
    obj = dataclasses.asdict(report)
    obj["file"] = args.file
    obj["kind"] = doc.kind
    print(json.dumps(obj, indent=2, sort_keys=True))
    return 0


def cmd_dot(args) -> int:
    try:
        doc = parse_document(Path(args.file).read_text())
        sys.stdout.write(render(doc, args.what))
    except SchemaError as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 2
    except (InvariantError, PreconditionError) as e:
        print(json.dumps({"error": _error_obj(e)}, indent=2))
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordloc",
        description="Check, transform and draw finite ordered spaces and locales.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run named laws against a document or directory")
    p.add_argument("file")
    p.add_argument("--law", action="append", choices=LAW_NAMES, default=None)
    p.add_argument("--all", action="store_true", help="run every law")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("functor", help="apply the opens or points functor")
    p.add_argument("file")
    p.add_argument("direction", choices=("o", "pt"))
    p.add_argument("--flavour", choices=("em", "upper", "lower"), default="em")
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_functor)

    p = sub.add_parser("roundtrip", help="duality fixed-point report")
    p.add_argument("file")
    p.add_argument("--flavour", choices=("em", "upper", "lower"), default="em")
    p.set_defaults(run=cmd_roundtrip)

    p = sub.add_parser("dot", help="emit a DOT drawing")
    p.add_argument("file")
    p.add_argument("--what", choices=("hasse", "cones", "topology"), default="hasse")
    p.set_defaults(run=cmd_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and not args.all and not args.law:
        parser.error("check needs --law NAME or --all")
    try:
        return args.run(args)
    except FileNotFoundError as e:
        print(json.dumps({"error": {"type": "schema", "message": str(e)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
