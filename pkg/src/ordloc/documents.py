"""JSON interchange for the structures the CLI operates on.

Carriers are arrays of string names; opens are arrays of name arrays;
order relations are pair lists, closed reflexively and transitively on
ingestion (closure is reported in the document notes, so inputs need not
be pre-closed).  Serialisation is canonical: names sorted, each open
sorted, opens sorted by size then lexicographically, relation pairs the
full strict closure in sorted order.  parse o serialize is the identity
on canonical text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvariantError, SchemaError
from .esakia import HeytingAlg
from .frames import FinFrame
from .locales import OrderedLocale
from .preorders import Preorder, iter_bits, mask_of
from .spaces import FinSpace, OrderedSpace

KINDS = ("space", "ordered_space", "frame", "ordered_locale", "map", "heyting")


@dataclass(frozen=True)
class MapPayload:
    source: "Document"
    target: "Document"
    table: tuple[int, ...]


@dataclass(frozen=True)
class Document:
    kind: str
    names: tuple[str, ...]
    payload: object
    notes: tuple[str, ...] = ()


def set_name(mask: int, names) -> str:
    return "{" + ",".join(names[i] for i in iter_bits(mask)) + "}"


# --- parsing ----------------------------------------------------------------

def parse_document(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}", f"invalid JSON: {e.msg}")
    return document_from_obj(obj)


def document_from_obj(obj, path: str = "") -> Document:
    if not isinstance(obj, dict):
        raise SchemaError(path or "$", "document must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise SchemaError(_join(path, "kind"), f"unknown kind {kind!r}")
    if kind == "space":
        names, space, notes = _parse_space_part(obj, path)
        return Document(kind, names, space, notes)
    if kind == "ordered_space":
        names, space, notes = _parse_space_part(obj, path)
        order, more = _parse_rel_part(obj, "order", names, path)
        return Document(kind, names, OrderedSpace(space, order), notes + more)
    if kind in ("frame", "heyting"):
        names, frame, notes = _parse_frame_part(obj, path)
        payload = HeytingAlg(frame) if kind == "heyting" else frame
        return Document(kind, names, payload, notes)
    if kind == "ordered_locale":
        names, frame, notes = _parse_frame_part(obj, path)
        rel, more = _parse_rel_part(obj, "rel", names, path)
        try:
            locale = OrderedLocale(frame, rel.rows)
        except InvariantError as e:
            raise _named(e, names)
        return Document(kind, names, locale, notes + more)
    return _parse_map(obj, path)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _named(e: InvariantError, names) -> InvariantError:
    witnesses = tuple(names[w] if isinstance(w, int) and 0 <= w < len(names) else w
                      for w in e.witnesses)
    return InvariantError(e.law, witnesses, e.message)


def _named_sets(e: InvariantError, names) -> InvariantError:
    witnesses = tuple(set_name(w, names) if isinstance(w, int) else w
                      for w in e.witnesses)
    return InvariantError(e.law, witnesses, e.message)


def _parse_names(obj, key: str, path: str) -> tuple[str, ...]:
    raw = obj.get(key)
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise SchemaError(_join(path, key), "expected an array of strings")
    if len(set(raw)) != len(raw):
        raise SchemaError(_join(path, key), "duplicate element names")
    return tuple(sorted(raw))


def _parse_space_part(obj, path: str):
    names = _parse_names(obj, "points", path)
    index = {name: i for i, name in enumerate(names)}
    raw = obj.get("opens")
    if not isinstance(raw, list):
        raise SchemaError(_join(path, "opens"), "expected an array of name arrays")
    masks = set()
    for k, entry in enumerate(raw):
        if not isinstance(entry, list) or not all(isinstance(x, str) for x in entry):
            raise SchemaError(_join(path, f"opens[{k}]"), "expected an array of names")
        for x in entry:
            if x not in index:
                raise SchemaError(_join(path, f"opens[{k}]"), f"unknown point {x!r}")
        masks.add(mask_of(index[x] for x in entry))
    notes = []
    closed = set(masks)
    frontier = set(masks)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in closed:
                for c in (a | b, a & b):
                    if c not in closed and c not in fresh:
                        fresh.add(c)
        closed |= fresh
        frontier = fresh
    if closed != masks:
        notes.append(f"opens: closure added {len(closed) - len(masks)} sets")
    try:
        space = FinSpace(len(names), tuple(sorted(closed)))
    except InvariantError as e:
        raise _named_sets(e, names)
    return names, space, tuple(notes)


def _parse_pairs(obj, key: str, names, path: str) -> list[tuple[int, int]]:
    raw = obj.get(key, [])
    index = {name: i for i, name in enumerate(names)}
    if not isinstance(raw, list):
        raise SchemaError(_join(path, key), "expected an array of name pairs")
    pairs = []
    for k, entry in enumerate(raw):
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(x, str) for x in entry)):
            raise SchemaError(_join(path, f"{key}[{k}]"), "expected a pair of names")
        for x in entry:
            if x not in index:
                raise SchemaError(_join(path, f"{key}[{k}]"), f"unknown element {x!r}")
        pairs.append((index[entry[0]], index[entry[1]]))
    return pairs


def _parse_rel_part(obj, key: str, names, path: str) -> tuple[Preorder, tuple[str, ...]]:
    pairs = _parse_pairs(obj, key, names, path)
    order = Preorder.from_pairs(len(names), pairs)
    given = set(pairs) | {(x, x) for x in range(len(names))}
    closed = set(order.pairs())
    notes = ()
    if closed - given:
        notes = (f"{key}: closure added {len(closed - given)} pairs",)
    return order, notes


def _parse_frame_part(obj, path: str):
    names = _parse_names(obj, "elements", path)
    order, notes = _parse_rel_part(obj, "leq", names, path)
    try:
        frame = FinFrame.from_leq(order.rows)
    except InvariantError as e:
        raise _named(e, names)
    return names, frame, notes


def _parse_map(obj, path: str) -> Document:
    for key in ("source", "target"):
        if not isinstance(obj.get(key), dict):
            raise SchemaError(_join(path, key), "expected a nested document")
    source = document_from_obj(obj["source"], _join(path, "source"))
    target = document_from_obj(obj["target"], _join(path, "target"))
    for key, doc in (("source", source), ("target", target)):
        if doc.kind not in ("space", "ordered_space"):
            raise SchemaError(_join(path, key), "map endpoints must be spaces")
    raw = obj.get("map")
    if not isinstance(raw, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in raw.items()):
        raise SchemaError(_join(path, "map"), "expected an object of name -> name")
    tgt_index = {n: i for i, n in enumerate(target.names)}
    table = []
    for name in source.names:
        if name not in raw:
            raise SchemaError(_join(path, f"map.{name}"), "map is not total")
        value = raw[name]
        if value not in tgt_index:
            raise SchemaError(_join(path, f"map.{name}"), f"unknown target element {value!r}")
        table.append(tgt_index[value])
    extra = set(raw) - set(source.names)
    if extra:
        raise SchemaError(_join(path, "map"), f"unknown source element {sorted(extra)[0]!r}")
    names = source.names
    payload = MapPayload(source, target, tuple(table))
    return Document("map", names, payload, source.notes + target.notes)


# --- serialisation -----------------------------------------------------------

def serialize_document(doc: Document) -> str:
    return json.dumps(document_to_obj(doc), indent=2, sort_keys=True) + "\n"


def document_to_obj(doc: Document) -> dict:
    names = doc.names
    if doc.kind == "space":
        return {"kind": "space", "points": list(names),
                "opens": _opens_lists(doc.payload.opens, names)}
    if doc.kind == "ordered_space":
        os_ = doc.payload
        return {"kind": "ordered_space", "points": list(names),
                "opens": _opens_lists(os_.space.opens, names),
                "order": _strict_pairs(os_.order.rows, names)}
    if doc.kind in ("frame", "heyting"):
        frame = doc.payload.lattice if doc.kind == "heyting" else doc.payload
        return {"kind": doc.kind, "elements": list(names),
                "leq": _strict_pairs(frame.leq, names)}
    if doc.kind == "ordered_locale":
        locale = doc.payload
        return {"kind": "ordered_locale", "elements": list(names),
                "leq": _strict_pairs(locale.frame.leq, names),
                "rel": _strict_pairs(locale.rel, names)}
    if doc.kind == "map":
        payload = doc.payload
        return {"kind": "map",
                "source": document_to_obj(payload.source),
                "target": document_to_obj(payload.target),
                "map": {name: payload.target.names[payload.table[i]]
                        for i, name in enumerate(payload.source.names)}}
    raise ValueError(f"cannot serialise kind {doc.kind!r}")


def _opens_lists(masks, names) -> list[list[str]]:
    lists = [[names[i] for i in iter_bits(m)] for m in masks]
    return sorted(lists, key=lambda xs: (len(xs), xs))


def _strict_pairs(rows, names) -> list[list[str]]:
    pairs = [[names[x], names[y]]
             for x, row in enumerate(rows) for y in iter_bits(row) if x != y]
    return sorted(pairs)


def canonicalize_obj(obj: dict) -> Document:
    """Validate and canonicalise a freshly built JSON object."""
    return document_from_obj(obj)
