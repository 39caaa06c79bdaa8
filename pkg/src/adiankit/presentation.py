"""Positive presentations, their left/right graphs, and the Adian condition.

A positive presentation is a finite alphabet together with a list of relations
between nonempty positive words.  The left graph has the alphabet as vertex
set and, for every relation, one undirected edge joining the first letters of
the two sides; the right graph joins last letters.  A presentation is Adian
(cycle-free) when neither graph contains a cycle in the multigraph sense: a
loop, a pair of parallel edges, or a longer cycle all disqualify.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SchemaError

__all__ = [
    "Letter",
    "PositiveWord",
    "Relation",
    "Presentation",
    "SideEdge",
    "SideGraph",
    "CycleWitness",
    "AdianVerdict",
    "make_presentation",
    "parse_presentation",
    "presentation_to_json",
    "left_graph",
    "right_graph",
    "is_adian",
]

Letter = str
PositiveWord = tuple[str, ...]


def _check_letter(token: object) -> str:
    if not isinstance(token, str) or not token or any(c.isspace() for c in token):
        raise SchemaError(f"invalid letter token {token!r}")
    return token


@dataclass(frozen=True)
class Relation:
    """One defining relation lhs = rhs between nonempty positive words."""

    lhs: PositiveWord
    rhs: PositiveWord
    index: int

    def __post_init__(self) -> None:
        if not self.lhs or not self.rhs:
            raise SchemaError(f"relation {self.index}: both sides must be nonempty")

    def side(self, which: str) -> PositiveWord:
        if which == "lhs":
            return self.lhs
        if which == "rhs":
            return self.rhs
        raise SchemaError(f"unknown relation side {which!r}")


@dataclass(frozen=True)
class Presentation:
    alphabet: frozenset[str]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if not self.alphabet:
            raise SchemaError("alphabet must be nonempty")


def make_presentation(
    alphabet: Iterable[str], relation_pairs: Iterable[tuple[Sequence[str], Sequence[str]]]
) -> Presentation:
    """Build a presentation from letter tokens and (lhs, rhs) word pairs,
    checking that every letter used in a relation belongs to the alphabet."""
    letters = frozenset(_check_letter(x) for x in alphabet)
    relations = []
    for i, (lhs, rhs) in enumerate(relation_pairs):
        rel = Relation(tuple(lhs), tuple(rhs), i)
        for x in rel.lhs + rel.rhs:
            if x not in letters:
                raise SchemaError(f"relation {i}: unknown letter {x!r}")
        relations.append(rel)
    return Presentation(letters, tuple(relations))


def parse_presentation(text: str | dict) -> Presentation:
    """Parse the presentation document.

    Schema: ``{"alphabet": ["a","b"], "relations": [[["a","b","a"],["b","a","b"]]]}``.
    Accepts either the JSON text or the already-decoded object.  Relations keep
    document order.  Syntax errors report line and column.
    """
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    else:
        doc = text
    if not isinstance(doc, dict):
        raise SchemaError("presentation document must be a JSON object")
    unknown = set(doc) - {"alphabet", "relations"}
    if unknown:
        raise SchemaError(f"unknown presentation fields: {sorted(unknown)}")
    alphabet = doc.get("alphabet")
    relations = doc.get("relations")
    if not isinstance(alphabet, list) or not isinstance(relations, list):
        raise SchemaError("presentation needs 'alphabet' and 'relations' arrays")
    pairs = []
    for i, entry in enumerate(relations):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(side, list) for side in entry)
        ):
            raise SchemaError(f"relation {i} must be a pair of letter arrays")
        lhs = tuple(_check_letter(x) for x in entry[0])
        rhs = tuple(_check_letter(x) for x in entry[1])
        if not lhs or not rhs:
            raise SchemaError(f"relation {i}: empty side (sides must be nonempty positive words)")
        pairs.append((lhs, rhs))
    return make_presentation(alphabet, pairs)


def presentation_to_json(p: Presentation) -> dict:
    return {
        "alphabet": sorted(p.alphabet),
        "relations": [[list(r.lhs), list(r.rhs)] for r in p.relations],
    }


@dataclass(frozen=True)
class SideEdge:
    """Undirected edge of a side graph, tagged with its originating relation."""

    ends: tuple[str, str]  # stored sorted
    relation: int

    @staticmethod
    def between(x: str, y: str, relation: int) -> "SideEdge":
        return SideEdge(tuple(sorted((x, y))), relation)  # type: ignore[arg-type]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class SideGraph:
    vertices: frozenset[str]
    edges: tuple[SideEdge, ...]


def left_graph(p: Presentation) -> SideGraph:
    """One edge per relation joining the first letters of the two sides."""
    edges = tuple(SideEdge.between(r.lhs[0], r.rhs[0], r.index) for r in p.relations)
    return SideGraph(p.alphabet, edges)


def right_graph(p: Presentation) -> SideGraph:
    """Dual of the left graph, joining last letters."""
    edges = tuple(SideEdge.between(r.lhs[-1], r.rhs[-1], r.index) for r in p.relations)
    return SideGraph(p.alphabet, edges)


@dataclass(frozen=True)
class CycleWitness:
    """A concrete cycle: which graph it lives in and the edges forming it."""

    graph: str  # "left" or "right"
    edges: tuple[SideEdge, ...]

    def describe(self) -> str:
        if len(self.edges) == 1:
            e = self.edges[0]
            return f"loop at {e.ends[0]} ({self.graph} graph, relation {e.relation})"
        if len(self.edges) == 2 and self.edges[0].ends == self.edges[1].ends:
            x, y = self.edges[0].ends
            rels = ", ".join(str(e.relation) for e in self.edges)
            return f"parallel edges {x}-{y} ({self.graph} graph, relations {rels})"
        path = " ".join(f"{e.ends[0]}-{e.ends[1]}@{e.relation}" for e in self.edges)
        return f"cycle {path} ({self.graph} graph)"


@dataclass(frozen=True)
class AdianVerdict:
    adian: bool
    witness: CycleWitness | None = None

    def __bool__(self) -> bool:
        return self.adian


def _find_cycle(graph: SideGraph, name: str) -> CycleWitness | None:
    """Incremental forest check; returns a concrete cycle if one exists."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    adjacency: dict[str, list[tuple[str, SideEdge]]] = {}
    for edge in graph.edges:
        x, y = edge.ends
        if edge.is_loop:
            return CycleWitness(name, (edge,))
        if find(x) == find(y):
            # Close the cycle: path from x to y through accepted edges.
            prev: dict[str, tuple[str, SideEdge] | None] = {x: None}
            queue = [x]
            while queue:
                v = queue.pop(0)
                if v == y:
                    break
                for u, via in adjacency.get(v, []):
                    if u not in prev:
                        prev[u] = (v, via)
                        queue.append(u)
            path: list[SideEdge] = []
            v = y
            while prev[v] is not None:
                v, via = prev[v]  # type: ignore[misc]
                path.append(via)
            path.reverse()
            return CycleWitness(name, tuple(path) + (edge,))
        parent[find(y)] = find(x)
        adjacency.setdefault(x, []).append((y, edge))
        adjacency.setdefault(y, []).append((x, edge))
    return None


def is_adian(p: Presentation) -> AdianVerdict:
    """Adian exactly when both side graphs are forests in the multigraph
    sense; on failure the verdict carries a concrete cycle."""
    for graph, name in ((left_graph(p), "left"), (right_graph(p), "right")):
        witness = _find_cycle(graph, name)
        if witness is not None:
            return AdianVerdict(False, witness)
    return AdianVerdict(True)
