"""Deterministic DOT renderings of the structures in a document.

Node statements appear in carrier index order and edges sorted, so output
is byte-stable for equal inputs.  Preorder cycles render as a pair of
opposed edges.
"""

from __future__ import annotations

from .documents import Document, set_name
from .errors import PreconditionError
from .frames import FinFrame, frame_of_opens
from .locales import OrderedLocale
from .preorders import Preorder, iter_bits
from .spaces import OrderedSpace


def _quote(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def _graph(name: str, nodes: list[str], edges: list[str]) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {line}" for line in nodes]
    lines += [f"  {line}" for line in sorted(edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _preorder_covers(p: Preorder) -> list[tuple[int, int]]:
    out = []
    for x in range(p.size):
        strict = p.rows[x] & ~(1 << x)
        for y in iter_bits(strict):
            between = [z for z in iter_bits(strict) if z != y and p.leq(z, y)]
            if not between:
                out.append((x, y))
    return out


def dot_hasse(doc: Document) -> str:
    if doc.kind == "ordered_space":
        order = doc.payload.order
        covers = _preorder_covers(order)
        names = doc.names
    elif doc.kind in ("frame", "heyting", "ordered_locale"):
        frame = {"frame": lambda: doc.payload,
                 "heyting": lambda: doc.payload.lattice,
                 "ordered_locale": lambda: doc.payload.frame}[doc.kind]()
        covers = list(frame.covers())
        names = doc.names
    else:
        raise PreconditionError(f"no order to draw for kind {doc.kind!r}")
    nodes = [f"n{i} [label={_quote(names[i])}];" for i in range(len(names))]
    edges = [f"n{x} -> n{y};" for x, y in covers]
    return _graph("hasse", nodes, edges)


def dot_topology(doc: Document) -> str:
    if doc.kind == "space":
        space = doc.payload
    elif doc.kind == "ordered_space":
        space = doc.payload.space
    else:
        raise PreconditionError(f"no topology to draw for kind {doc.kind!r}")
    frame, masks = frame_of_opens(space)
    nodes = [f"n{i} [label={_quote(set_name(masks[i], doc.names))}];"
             for i in range(frame.size)]
    edges = [f"n{x} -> n{y};" for x, y in frame.covers()]
    return _graph("topology", nodes, edges)


def dot_cones(doc: Document) -> str:
    """Hasse diagram of the opens with each open's cones marked."""
    if doc.kind == "ordered_space":
        os_: OrderedSpace = doc.payload
        frame, masks = frame_of_opens(os_.space)
        index = {m: i for i, m in enumerate(masks)}
        labels = [set_name(m, doc.names) for m in masks]
        up = [index[os_.space.interior(os_.order.up_set(m))] for m in masks]
        down = [index[os_.space.interior(os_.order.down_set(m))] for m in masks]
        covers = frame.covers()
    elif doc.kind == "ordered_locale":
        locale: OrderedLocale = doc.payload
        frame = locale.frame
        labels = list(doc.names)
        up = locale.up_cone_table()
        down = locale.down_cone_table()
        covers = frame.covers()
    else:
        raise PreconditionError(f"no cones to draw for kind {doc.kind!r}")
    nodes = [f"n{i} [label={_quote(labels[i])}];" for i in range(frame.size)]
    edges = [f"n{x} -> n{y};" for x, y in covers]
    for i in range(frame.size):
        if up[i] != i:
            edges.append(f'n{i} -> n{up[i]} [style=dashed, label="up"];')
        if down[i] != i:
            edges.append(f'n{i} -> n{down[i]} [style=dotted, label="down"];')
    return _graph("cones", nodes, edges)


def render(doc: Document, what: str) -> str:
    if what == "hasse":
        return dot_hasse(doc)
    if what == "topology":
        return dot_topology(doc)
    if what == "cones":
        return dot_cones(doc)
    raise ValueError(f"unknown view {what!r}")
