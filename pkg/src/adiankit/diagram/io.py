"""Diagram serialization (JSON document schema) and DOT rendering."""

from __future__ import annotations

import json

from ..errors import SchemaError
from ..munn import SignedLetter
from ..presentation import parse_presentation, presentation_to_json
from .core import CellKind, Dart, Diagram, Face, Vertex
from .decompose import simple_components

__all__ = ["diagram_to_json", "diagram_from_json", "render_dot"]


def diagram_to_json(d: Diagram) -> dict:
    def face_kind(f: Face):
        if f.kind is None:
            return "outer"
        return {
            "cell": {
                "relation": f.kind.relation,
                "offset": f.kind.offset,
                "orientation": f.kind.orientation,
            }
        }

    return {
        "presentation": presentation_to_json(d.presentation),
        "vertices": [
            {"id": v.id, "rotation": list(v.rotation)} for v in sorted(d.vertices, key=lambda v: v.id)
        ],
        "darts": [
            {
                "id": x.id,
                "inverse": x.inverse_id,
                "letter": x.label.letter,
                "sign": x.label.sign,
                "tail": x.tail,
                "head": x.head,
            }
            for x in sorted(d.darts, key=lambda x: x.id)
        ],
        "faces": [
            {"id": f.id, "kind": face_kind(f), "boundary": list(f.boundary)}
            for f in sorted(d.faces, key=lambda f: f.id)
        ],
        "base_vertex": d.base_vertex,
    }


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def diagram_from_json(doc: dict | str) -> Diagram:
    """Decode the diagram document, checking only id integrity; run
    :func:`~adiankit.diagram.core.validate` for the semantic invariants."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    _require(isinstance(doc, dict), "diagram document must be a JSON object")
    for key in ("presentation", "vertices", "darts", "faces", "base_vertex"):
        _require(key in doc, f"diagram document missing field {key!r}")
    presentation = parse_presentation(doc["presentation"])

    darts = []
    for entry in doc["darts"]:
        _require(isinstance(entry, dict), "dart entries must be objects")
        try:
            darts.append(
                Dart(
                    id=int(entry["id"]),
                    inverse_id=int(entry["inverse"]),
                    label=SignedLetter(str(entry["letter"]), int(entry["sign"])),
                    tail=int(entry["tail"]),
                    head=int(entry["head"]),
                )
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed dart entry {entry!r}: {e}") from e
    dart_ids = {x.id for x in darts}
    _require(len(dart_ids) == len(darts), "duplicate dart ids")

    vertices = []
    for entry in doc["vertices"]:
        try:
            vertices.append(Vertex(id=int(entry["id"]), rotation=tuple(int(x) for x in entry["rotation"])))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed vertex entry {entry!r}: {e}") from e
    vertex_ids = {v.id for v in vertices}
    _require(len(vertex_ids) == len(vertices), "duplicate vertex ids")

    faces = []
    for entry in doc["faces"]:
        try:
            kind_doc = entry["kind"]
            if kind_doc == "outer":
                kind = None
            else:
                cell = kind_doc["cell"]
                kind = CellKind(
                    relation=int(cell["relation"]),
                    offset=int(cell["offset"]),
                    orientation=int(cell["orientation"]),
                )
            faces.append(
                Face(id=int(entry["id"]), boundary=tuple(int(x) for x in entry["boundary"]), kind=kind)
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed face entry {entry!r}: {e}") from e
    _require(len({f.id for f in faces}) == len(faces), "duplicate face ids")

    for x in darts:
        _require(x.inverse_id in dart_ids, f"dart {x.id}: unknown inverse {x.inverse_id}")
        _require(x.tail in vertex_ids and x.head in vertex_ids, f"dart {x.id}: unknown endpoint")
    for v in vertices:
        for x in v.rotation:
            _require(x in dart_ids, f"vertex {v.id}: unknown dart {x} in rotation")
    for f in faces:
        for x in f.boundary:
            _require(x in dart_ids, f"face {f.id}: unknown dart {x} on boundary")
    base = int(doc["base_vertex"])
    _require(base in vertex_ids, f"base vertex {base} is not a vertex")

    return Diagram(presentation, tuple(vertices), tuple(darts), tuple(faces), base)


def render_dot(d: Diagram) -> str:
    """Stable DOT text: positive darts as directed labeled edges, the base
    vertex doubly circled, cut vertices diamond-shaped, faces in comments."""
    decomposition = simple_components(d)
    cuts = set(decomposition.cut_vertices)
    lines = ["digraph diagram {"]
    for f in sorted(d.faces, key=lambda f: f.id):
        if f.kind is None:
            lines.append(f"  // face {f.id}: outer, boundary {list(f.boundary)}")
        else:
            lines.append(
                f"  // face {f.id}: cell relation={f.kind.relation} "
                f"offset={f.kind.offset} orientation={f.kind.orientation} "
                f"boundary {list(f.boundary)}"
            )
    for v in sorted(d.vertices, key=lambda v: v.id):
        attrs = []
        if v.id == d.base_vertex:
            attrs.append("shape=doublecircle")
        elif v.id in cuts:
            attrs.append("shape=diamond")
        else:
            attrs.append("shape=circle")
        if v.id in cuts:
            attrs.append('xlabel="cut"')
        lines.append(f"  v{v.id} [{', '.join(attrs)}];")
    for x in sorted(d.darts, key=lambda x: x.id):
        if x.label.sign > 0:
            lines.append(f'  v{x.tail} -> v{x.head} [label="{x.label.letter}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
