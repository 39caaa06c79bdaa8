"""Certificate data model and its JSON document form.

A certificate is a tree of justified rewrite steps proving that its subject
word is an idempotent of the presented inverse semigroup.  Every step reduces
the claim to the claims of its children:

* ``DyckBase`` - the subject freely reduces to the empty word.
* ``RelationSubst`` - one occurrence of a relation side (or its inverse) is
  replaced by the other side; the single child carries the rewritten word.
* ``DropIdempotents`` - the subject factors as x0 E1 x1 ... En xn where every
  Ei is an idempotent (a literal p p^-1 factor, or certified by a child); the
  final child carries the concatenation x0 x1 ... xn.
* ``ProductOfIdempotents`` - the subject splits into consecutive factors, each
  certified idempotent by a child.

Verifiers recompute every rewritten word; subjects stored in a file are
cross-checked, never trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from ..errors import SchemaError
from ..munn import Word, format_word, parse_word

__all__ = [
    "DyckBase",
    "RelationSubst",
    "DropFactor",
    "DropIdempotents",
    "ProductFactor",
    "ProductOfIdempotents",
    "Step",
    "Certificate",
    "WitnessStatistics",
    "WitnessReport",
    "certificate_to_json",
    "certificate_from_json",
    "compute_statistics",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DyckBase:
    kind = "dyck_base"


@dataclass(frozen=True)
class RelationSubst:
    relation: int
    direction: str  # "lhs_to_rhs" or "rhs_to_lhs"
    position: int
    inverted: bool = False
    kind = "relation_subst"


@dataclass(frozen=True)
class DropFactor:
    kind: str  # "pp_inverse" or "certified"
    start: int
    end: int
    child: int | None = None  # child index for certified factors


@dataclass(frozen=True)
class DropIdempotents:
    factors: tuple[DropFactor, ...]
    kind = "drop_idempotents"


@dataclass(frozen=True)
class ProductFactor:
    start: int
    end: int


@dataclass(frozen=True)
class ProductOfIdempotents:
    factors: tuple[ProductFactor, ...]
    kind = "product_of_idempotents"


Step = Union[DyckBase, RelationSubst, DropIdempotents, ProductOfIdempotents]


@dataclass(frozen=True)
class Certificate:
    subject: Word
    step: Step
    children: tuple["Certificate", ...] = ()


@dataclass(frozen=True)
class WitnessStatistics:
    step_counts: tuple[tuple[str, int], ...]
    depth: int
    leaves: int


@dataclass(frozen=True)
class WitnessReport:
    certificate: Certificate
    statistics: WitnessStatistics


def compute_statistics(cert: Certificate) -> WitnessStatistics:
    counts: dict[str, int] = {}
    leaves = 0
    stack = [(cert, 1)]
    depth = 0
    while stack:
        node, level = stack.pop()
        depth = max(depth, level)
        counts[node.step.kind] = counts.get(node.step.kind, 0) + 1
        if not node.children:
            leaves += 1
        stack.extend((child, level + 1) for child in node.children)
    return WitnessStatistics(tuple(sorted(counts.items())), depth, leaves)


def _step_to_json(step: Step) -> dict:
    if isinstance(step, DyckBase):
        return {"kind": "dyck_base"}
    if isinstance(step, RelationSubst):
        return {
            "kind": "relation_subst",
            "relation": step.relation,
            "direction": step.direction,
            "position": step.position,
            "inverted": step.inverted,
        }
    if isinstance(step, DropIdempotents):
        factors = []
        for f in step.factors:
            entry = {"kind": f.kind, "start": f.start, "end": f.end}
            if f.kind == "certified":
                entry["child"] = f.child
            factors.append(entry)
        return {"kind": "drop_idempotents", "factors": factors}
    if isinstance(step, ProductOfIdempotents):
        return {
            "kind": "product_of_idempotents",
            "factors": [{"start": f.start, "end": f.end} for f in step.factors],
        }
    raise SchemaError(f"unknown step type {type(step).__name__}")


def _node_to_json(cert: Certificate) -> dict:
    return {
        "subject": format_word(cert.subject),
        "step": _step_to_json(cert.step),
        "children": [_node_to_json(c) for c in cert.children],
    }


def certificate_to_json(cert: Certificate) -> dict:
    doc = _node_to_json(cert)
    doc["version"] = SCHEMA_VERSION
    return doc


def _int_field(doc: dict, key: str, what: str) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{what}: field {key!r} must be an integer")
    return value


def _step_from_json(doc: object) -> Step:
    if not isinstance(doc, dict):
        raise SchemaError("step must be an object")
    kind = doc.get("kind")
    if kind == "dyck_base":
        return DyckBase()
    if kind == "relation_subst":
        direction = doc.get("direction")
        if direction not in ("lhs_to_rhs", "rhs_to_lhs"):
            raise SchemaError(f"relation_subst: bad direction {direction!r}")
        inverted = doc.get("inverted", False)
        if not isinstance(inverted, bool):
            raise SchemaError("relation_subst: 'inverted' must be a boolean")
        return RelationSubst(
            relation=_int_field(doc, "relation", "relation_subst"),
            direction=direction,
            position=_int_field(doc, "position", "relation_subst"),
            inverted=inverted,
        )
    if kind == "drop_idempotents":
        factors = doc.get("factors")
        if not isinstance(factors, list):
            raise SchemaError("drop_idempotents: 'factors' must be an array")
        parsed = []
        for f in factors:
            if not isinstance(f, dict):
                raise SchemaError("drop_idempotents: factor entries must be objects")
            fkind = f.get("kind")
            if fkind == "pp_inverse":
                parsed.append(
                    DropFactor("pp_inverse", _int_field(f, "start", "factor"), _int_field(f, "end", "factor"))
                )
            elif fkind == "certified":
                parsed.append(
                    DropFactor(
                        "certified",
                        _int_field(f, "start", "factor"),
                        _int_field(f, "end", "factor"),
                        _int_field(f, "child", "factor"),
                    )
                )
            else:
                raise SchemaError(f"drop_idempotents: unknown factor kind {fkind!r}")
        return DropIdempotents(tuple(parsed))
    if kind == "product_of_idempotents":
        factors = doc.get("factors")
        if not isinstance(factors, list):
            raise SchemaError("product_of_idempotents: 'factors' must be an array")
        parsed_factors = []
        for f in factors:
            if not isinstance(f, dict):
                raise SchemaError("product_of_idempotents: factor entries must be objects")
            parsed_factors.append(
                ProductFactor(_int_field(f, "start", "factor"), _int_field(f, "end", "factor"))
            )
        return ProductOfIdempotents(tuple(parsed_factors))
    raise SchemaError(f"unknown step kind {kind!r}")


def _node_from_json(doc: object) -> Certificate:
    if not isinstance(doc, dict):
        raise SchemaError("certificate node must be an object")
    if "subject" not in doc or "step" not in doc:
        raise SchemaError("certificate node needs 'subject' and 'step'")
    subject_text = doc["subject"]
    if not isinstance(subject_text, str):
        raise SchemaError("'subject' must be a word string")
    children_doc = doc.get("children", [])
    if not isinstance(children_doc, list):
        raise SchemaError("'children' must be an array")
    return Certificate(
        subject=parse_word(subject_text),
        step=_step_from_json(doc["step"]),
        children=tuple(_node_from_json(c) for c in children_doc),
    )


def certificate_from_json(doc: dict | str) -> Certificate:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise SchemaError("certificate document must be a JSON object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported certificate version {version!r} (expected {SCHEMA_VERSION})")
    return _node_from_json(doc)
