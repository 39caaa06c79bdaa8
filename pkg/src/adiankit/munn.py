"""Free-inverse-semigroup utilities: signed words, free reduction, Dyck-word
detection, and Munn trees.

A signed word is a sequence of generator letters each carrying an exponent of
+1 or -1.  Free reduction cancels adjacent ``x x'`` / ``x' x`` pairs; a word is
a Dyck word when its free reduction is empty.  The Munn tree of a word is the
edge-folded trace of the word: a birooted, deterministically labeled tree.  A
word is an idempotent of the free inverse semigroup exactly when the two roots
of its Munn tree coincide, which must agree with the Dyck test.

The empty word is representable here as an internal value (it is the reduction
of every Dyck word) but operations that denote semigroup elements reject it:
the semigroups presented downstream have no identity element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError, SchemaError

__all__ = [
    "SignedLetter",
    "Word",
    "MunnTree",
    "positive_word",
    "inverse_word",
    "parse_word",
    "format_word",
    "free_reduce",
    "is_dyck",
    "munn_tree",
    "fim_idempotent",
]


@dataclass(frozen=True)
class SignedLetter:
    """A generator letter with exponent +1 or -1."""

    letter: str
    sign: int = 1

    def __post_init__(self) -> None:
        if not self.letter or any(c.isspace() for c in self.letter):
            raise SchemaError(f"invalid letter token {self.letter!r}")
        if self.sign not in (1, -1):
            raise SchemaError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.letter, -self.sign)

    def __str__(self) -> str:
        return self.letter + ("'" if self.sign < 0 else "")


# A word is a tuple of signed letters; the empty tuple is the empty word.
Word = tuple[SignedLetter, ...]


def positive_word(letters: Iterable[str]) -> Word:
    """Lift a sequence of plain letters to a signed word with all signs +1."""
    return tuple(SignedLetter(x, 1) for x in letters)


def inverse_word(w: Sequence[SignedLetter]) -> Word:
    """(a1 ... an)^-1 = an^-1 ... a1^-1."""
    return tuple(x.inverse() for x in reversed(w))


def parse_word(text: str) -> Word:
    """Parse the textual word form: letters separated by spaces, a trailing
    apostrophe marks an inverse letter (``a b' a``)."""
    out: list[SignedLetter] = []
    for token in text.split():
        if token.endswith("'"):
            body, sign = token[:-1], -1
        else:
            body, sign = token, 1
        if not body or "'" in body:
            raise SchemaError(f"unparsable word token {token!r}")
        out.append(SignedLetter(body, sign))
    return tuple(out)


def format_word(w: Sequence[SignedLetter]) -> str:
    return " ".join(str(x) for x in w)


def free_reduce(w: Sequence[SignedLetter]) -> Word:
    """The unique word with no adjacent ``x x'`` or ``x' x`` factor obtained by
    repeated cancellation."""
    stack: list[SignedLetter] = []
    for x in w:
        if stack and stack[-1].letter == x.letter and stack[-1].sign == -x.sign:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_dyck(w: Sequence[SignedLetter]) -> bool:
    """True when the free reduction of ``w`` is empty."""
    return not free_reduce(w)


@dataclass(frozen=True)
class MunnTree:
    """Birooted edge-labeled tree in canonical form.

    Vertices are renumbered breadth-first from ``start_root`` with the edges at
    each vertex explored in sorted label order, so structurally equal trees
    compare equal.  Edges are (tail, letter, head) triples denoting a
    positively labeled edge.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, str, int], ...]
    start_root: int
    end_root: int


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _trace_and_fold(w: Sequence[SignedLetter], rng: random.Random | None):
    """Trace ``w`` from vertex 0 and fold edges sharing a source and letter.

    Returns (edge set, start class, end class) with vertices as union-find
    classes.  ``rng`` shuffles the fold worklist; the folded result is
    independent of that order.
    """
    n = len(w)
    uf = _UnionFind(n + 1)
    # Positive orientation of each traced edge.
    raw_edges = []
    for i, x in enumerate(w):
        if x.sign > 0:
            raw_edges.append((i, x.letter, i + 1))
        else:
            raw_edges.append((i + 1, x.letter, i))

    changed = True
    while changed:
        changed = False
        edges = sorted({(uf.find(t), a, uf.find(h)) for (t, a, h) in raw_edges})
        if rng is not None:
            rng.shuffle(edges)
        by_source: dict[tuple[int, str], int] = {}
        by_target: dict[tuple[int, str], int] = {}
        for t, a, h in edges:
            if (t, a) in by_source and by_source[(t, a)] != h:
                uf.union(by_source[(t, a)], h)
                changed = True
                break
            by_source[(t, a)] = h
            if (h, a) in by_target and by_target[(h, a)] != t:
                uf.union(by_target[(h, a)], t)
                changed = True
                break
            by_target[(h, a)] = t

    edges = {(uf.find(t), a, uf.find(h)) for (t, a, h) in raw_edges}
    return edges, uf.find(0), uf.find(n)


def munn_tree(w: Sequence[SignedLetter], *, _fold_rng: random.Random | None = None) -> MunnTree:
    """The Munn tree of a nonempty word, in canonical form."""
    if not w:
        raise PreconditionError("munn_tree requires a nonempty word")
    edges, start, end = _trace_and_fold(w, _fold_rng)

    # Canonical renumbering: BFS from the start root, neighbors in sorted
    # (letter, direction) order.  Folding makes both maps deterministic, so
    # each (vertex, letter) key has at most one outgoing and one incoming edge.
    out_map: dict[int, list[tuple[str, int]]] = {}
    in_map: dict[int, list[tuple[str, int]]] = {}
    for t, a, h in edges:
        out_map.setdefault(t, []).append((a, h))
        in_map.setdefault(h, []).append((a, t))
    number = {start: 0}
    queue = [start]
    while queue:
        v = queue.pop(0)
        nbrs = [(a, 0, h) for (a, h) in sorted(out_map.get(v, []))]
        nbrs += [(a, 1, t) for (a, t) in sorted(in_map.get(v, []))]
        for _, _, u in sorted(nbrs):
            if u not in number:
                number[u] = len(number)
                queue.append(u)
    canon_edges = tuple(sorted((number[t], a, number[h]) for (t, a, h) in edges))
    # Folding a word trace always yields a tree.
    assert len(canon_edges) == len(number) - 1
    return MunnTree(
        vertices=tuple(range(len(number))),
        edges=canon_edges,
        start_root=0,
        end_root=number[end],
    )


def fim_idempotent(w: Sequence[SignedLetter]) -> bool:
    """True when ``w`` is an idempotent of the free inverse semigroup: the two
    roots of its Munn tree coincide.  Agrees with :func:`is_dyck`."""
    if not w:
        raise PreconditionError("fim_idempotent requires a nonempty word")
    tree = munn_tree(w)
    return tree.start_root == tree.end_root
