"""Diagram constructors: single cells, boundary gluings, wedges, attached
trees, mirror images, and the seeded random generator.

All surgery happens at the level of face orbits.  Each operation computes the
new outer-face orbit (and, for gluings, the new cell's orbit) and rebuilds the
rotation system from the full orbit list; the result is revalidated before it
is returned, so constructors either produce a valid diagram or raise
:class:`~adiankit.errors.BuildError`.
"""

from __future__ import annotations

import random
from typing import Sequence

from ..errors import BuildError, PreconditionError
from ..munn import SignedLetter, Word, munn_tree
from ..presentation import Presentation, is_adian
from .core import (
    CellKind,
    Dart,
    Diagram,
    Face,
    assemble,
    classify_cell_label,
    reverse_inverse_ids,
    rotate,
    validate,
)

__all__ = [
    "single_cell",
    "attach_cell",
    "wedge",
    "attach_tree",
    "tree_diagram",
    "mirror_diagram",
    "random_diagram",
]


def _finish(diagram: Diagram, what: str) -> Diagram:
    report = validate(diagram)
    if not report.ok:
        raise BuildError(f"{what} produced an invalid diagram: {report.violations[0]}")
    return diagram


def single_cell(p: Presentation, relation_index: int, mirrored: bool = False) -> Diagram:
    """One-cell diagram for a relation, based at the cell's initial vertex.

    The boundary word from the base reads lhs * rhs^-1; with ``mirrored`` the
    reflected embedding is produced and the boundary reads rhs * lhs^-1.
    """
    if not 0 <= relation_index < len(p.relations):
        raise PreconditionError(f"no relation {relation_index}")
    rel = p.relations[relation_index]
    u, v = rel.lhs, rel.rhs
    m, n = len(u), len(v)

    darts: list[Dart] = []

    def path(letters: Sequence[str], first_vertex: int, id_base: int) -> list[int]:
        ids = []
        for j, letter in enumerate(letters):
            tail = 0 if j == 0 else first_vertex + j - 1
            head = m if j == len(letters) - 1 else first_vertex + j
            pos, neg = id_base + 2 * j, id_base + 2 * j + 1
            darts.append(Dart(pos, neg, SignedLetter(letter, 1), tail, head))
            darts.append(Dart(neg, pos, SignedLetter(letter, -1), head, tail))
            ids.append(pos)
        return ids

    u_ids = path(u, 1, 0)
    v_ids = path(v, m + 1, 2 * m)

    cell_first, outer_first = (u_ids, v_ids) if not mirrored else (v_ids, u_ids)
    cell_orbit = tuple(cell_first) + tuple(x + 1 for x in reversed(outer_first))
    outer_orbit = tuple(outer_first) + tuple(x + 1 for x in reversed(cell_first))
    kind = CellKind(relation_index, 0, 1 if not mirrored else -1)
    diagram = assemble(p, darts, [(0, cell_orbit, kind), (1, outer_orbit, None)], base_vertex=0)
    return _finish(diagram, "single_cell")


def _cyclic_find(orbit: Sequence[int], segment: Sequence[int]) -> int | None:
    n, k = len(orbit), len(segment)
    if k == 0 or k > n:
        return None
    for i in range(n):
        if all(orbit[(i + j) % n] == segment[j] for j in range(k)):
            return i
    return None


def _mirror_reading_ids(d_new_labels: Word) -> Word:
    from .core import _mirror_reading

    return _mirror_reading(d_new_labels)


def attach_cell(
    d: Diagram,
    path: Sequence[int],
    relation_index: int,
    side: str,
    at: int | None = None,
) -> Diagram:
    """Glue a new cell for a relation onto a positively labeled boundary path.

    ``path`` is a chain of positive dart ids on the outer boundary; its label
    must occur in the chosen side of the relation at offset ``at`` (inferred
    when omitted).  The remainder of the glued side and the whole other side
    are added as fresh vertices and darts.  Gluings that would create a mirror
    pair of cells are rejected.
    """
    if not 0 <= relation_index < len(d.presentation.relations):
        raise PreconditionError(f"no relation {relation_index}")
    rel = d.presentation.relations[relation_index]
    if side not in ("lhs", "rhs"):
        raise PreconditionError(f"side must be 'lhs' or 'rhs', got {side!r}")
    if not path:
        raise BuildError("glue path must be nonempty")

    path = [d.dart(x).id for x in path]
    for a, b in zip(path, path[1:]):
        if d.dart(a).head != d.dart(b).tail:
            raise BuildError("glue path does not chain")
    if any(d.dart(x).label.sign < 0 for x in path):
        raise BuildError("glue path must be positively labeled")
    path_vertices = [d.dart(path[0]).tail] + [d.dart(x).head for x in path]
    if len(set(path_vertices)) != len(path_vertices):
        raise BuildError("glue path revisits a vertex")

    glue_word = tuple(d.dart(x).label.letter for x in path)
    side_word = rel.side(side)
    other_word = rel.side("rhs" if side == "lhs" else "lhs")
    k = len(glue_word)
    if at is None:
        at = next(
            (i for i in range(len(side_word) - k + 1) if side_word[i : i + k] == glue_word),
            None,
        )
        if at is None:
            raise BuildError(
                f"label {''.join(glue_word)} does not occur in the {side} of relation {relation_index}"
            )
    if not (0 <= at and at + k <= len(side_word)) or side_word[at : at + k] != glue_word:
        raise BuildError("glue path label does not match the glued side at the given offset")

    outer = d.outer_face.boundary
    forward_pos = _cyclic_find(outer, path)
    backward_pos = _cyclic_find(outer, reverse_inverse_ids(d, path))
    if forward_pos is None and backward_pos is None:
        raise BuildError("glue path is not contiguous on the outer boundary")
    use_forward = forward_pos is not None

    v0, vk = path_vertices[0], path_vertices[-1]
    next_vertex, next_dart, next_face = d.next_ids()
    new_darts: list[Dart] = []

    def fresh_path(letters: Sequence[str], start: int, end: int) -> list[int]:
        """Fresh positive path from start to end through new vertices."""
        nonlocal next_vertex, next_dart
        ids = []
        cur = start
        for j, letter in enumerate(letters):
            if j == len(letters) - 1:
                nxt = end
            else:
                nxt = next_vertex
                next_vertex += 1
            pos, neg = next_dart, next_dart + 1
            next_dart += 2
            new_darts.append(Dart(pos, neg, SignedLetter(letter, 1), cur, nxt))
            new_darts.append(Dart(neg, pos, SignedLetter(letter, -1), nxt, cur))
            ids.append(pos)
            cur = nxt
        return ids

    prefix_word, suffix_word = side_word[:at], side_word[at + k :]
    if prefix_word:
        initial = next_vertex
        next_vertex += 1
    else:
        initial = v0
    if suffix_word:
        terminal = next_vertex
        next_vertex += 1
    else:
        terminal = vk
    p1 = fresh_path(prefix_word, initial, v0)
    p2 = fresh_path(suffix_word, vk, terminal)
    t_ids = fresh_path(other_word, initial, terminal)

    def revinv(ids: Sequence[int]) -> tuple[int, ...]:
        table = {x.id: x for x in new_darts}
        return tuple(table[i].inverse_id for i in reversed(ids))

    if use_forward:
        segment = tuple(path)
        start = forward_pos
        replacement = revinv(p1) + tuple(t_ids) + revinv(p2)
        cell_orbit = segment + tuple(p2) + revinv(t_ids) + tuple(p1)
    else:
        segment = reverse_inverse_ids(d, path)
        start = backward_pos
        replacement = tuple(p2) + revinv(t_ids) + tuple(p1)
        cell_orbit = segment + revinv(p1) + tuple(t_ids) + revinv(p2)

    rotated = rotate(outer, start)
    new_outer = replacement + rotated[k:]

    all_darts = list(d.darts) + new_darts
    lookup = {x.id: x for x in all_darts}
    cell_label = tuple(lookup[i].label for i in cell_orbit)
    kind = classify_cell_label(cell_label, rel)
    assert kind is not None, "glued cell label must be a relation conjugate"

    # Reducedness: compare the new cell against the old cell (if any) across
    # every glued edge.
    shared = segment
    for q in shared:
        other_dart = lookup[q].inverse_id
        old_face = d.face_by_id[d.face_of_dart[other_dart]]
        if old_face.is_outer:
            continue
        w_new = tuple(lookup[i].label for i in rotate(cell_orbit, cell_orbit.index(q)))
        w_old = d.walk_labels(rotate(old_face.boundary, old_face.boundary.index(other_dart)))
        if w_old == _mirror_reading_ids(w_new):
            raise BuildError(
                f"gluing would create a mirror pair with cell {old_face.id} "
                f"across edge {{{q},{other_dart}}}"
            )

    orbits: list[tuple[int, tuple[int, ...], CellKind | None]] = [
        (f.id, f.boundary, f.kind) for f in d.cells
    ]
    orbits.append((d.outer_face.id, new_outer, None))
    orbits.append((next_face, cell_orbit, kind))
    diagram = assemble(d.presentation, all_darts, orbits, d.base_vertex)
    return _finish(diagram, "attach_cell")


def wedge(d1: Diagram, d2: Diagram, v1: int, v2: int) -> Diagram:
    """Join two diagrams at a single vertex (v1 in d1, v2 in d2), keeping the
    base vertex of the first."""
    if d1.presentation != d2.presentation:
        raise BuildError("wedge requires both diagrams over the same presentation")
    if v1 not in d1.boundary_vertices:
        raise BuildError(f"vertex {v1} is not on the boundary of the first diagram")
    if v2 not in d2.boundary_vertices:
        raise BuildError(f"vertex {v2} is not on the boundary of the second diagram")
    if not d1.darts or not d2.darts:
        raise BuildError("cannot wedge a single-vertex diagram")

    dv, dd, df = d1.next_ids()

    def map_vertex(v: int) -> int:
        return v1 if v == v2 else v + dv

    def map_dart(dart: Dart) -> Dart:
        return Dart(dart.id + dd, dart.inverse_id + dd, dart.label, map_vertex(dart.tail), map_vertex(dart.head))

    darts = list(d1.darts) + [map_dart(x) for x in d2.darts]

    o1 = d1.outer_face.boundary
    o2 = tuple(x + dd for x in d2.outer_face.boundary)
    i = next(j for j, x in enumerate(o1) if d1.dart(x).tail == v1)
    j = next(
        idx for idx, x in enumerate(d2.outer_face.boundary) if d2.dart(x).tail == v2
    )
    new_outer = o1[:i] + o2[j:] + o2[:j] + o1[i:]

    orbits: list[tuple[int, tuple[int, ...], CellKind | None]] = [
        (f.id, f.boundary, f.kind) for f in d1.cells
    ]
    orbits += [(f.id + df, tuple(x + dd for x in f.boundary), f.kind) for f in d2.cells]
    orbits.append((d1.outer_face.id, new_outer, None))
    diagram = assemble(d1.presentation, darts, orbits, d1.base_vertex)
    return _finish(diagram, "wedge")


def _tree_parts(w: Word, root: int, next_vertex: int, next_dart: int):
    """Darts and Euler tour of the Munn tree of ``w`` hung at ``root``.

    Returns (darts, tour dart ids, next_vertex, next_dart).  The tour starts
    and ends at the root; children are explored in sorted label order.
    """
    tree = munn_tree(w)
    vmap: dict[int, int] = {tree.start_root: root}
    for tv in tree.vertices:
        if tv != tree.start_root:
            vmap[tv] = next_vertex
            next_vertex += 1

    darts: list[Dart] = []
    down: dict[tuple[int, int], int] = {}  # (parent, child) in tree ids -> dart id
    adjacency: dict[int, list[tuple[str, int, int]]] = {}
    for t, a, h in tree.edges:
        pos, neg = next_dart, next_dart + 1
        next_dart += 2
        darts.append(Dart(pos, neg, SignedLetter(a, 1), vmap[t], vmap[h]))
        darts.append(Dart(neg, pos, SignedLetter(a, -1), vmap[h], vmap[t]))
        adjacency.setdefault(t, []).append((a, 0, h))
        adjacency.setdefault(h, []).append((a, 1, t))
        down[(t, h)] = pos
        down[(h, t)] = neg

    tour: list[int] = []

    def visit(x: int, parent: int | None) -> None:
        for _, _, y in sorted(adjacency.get(x, [])):
            if y == parent:
                continue
            tour.append(down[(x, y)])
            visit(y, x)
            tour.append(down[(y, x)])

    visit(tree.start_root, None)
    return darts, tour, next_vertex, next_dart


def attach_tree(d: Diagram, v: int, w: Word) -> Diagram:
    """Hang the Munn tree of ``w`` at a boundary vertex."""
    if v not in d.boundary_vertices:
        raise BuildError(f"vertex {v} is not on the boundary")
    if not w:
        raise PreconditionError("attach_tree requires a nonempty word")
    next_vertex, next_dart, _ = d.next_ids()
    tree_darts, tour, _, _ = _tree_parts(w, v, next_vertex, next_dart)

    outer = d.outer_face.boundary
    i = next(j for j, x in enumerate(outer) if d.dart(x).tail == v)
    new_outer = outer[:i] + tuple(tour) + outer[i:]

    orbits: list[tuple[int, tuple[int, ...], CellKind | None]] = [
        (f.id, f.boundary, f.kind) for f in d.cells
    ]
    orbits.append((d.outer_face.id, new_outer, None))
    diagram = assemble(d.presentation, list(d.darts) + tree_darts, orbits, d.base_vertex)
    return _finish(diagram, "attach_tree")


def tree_diagram(p: Presentation, w: Word) -> Diagram:
    """The Munn tree of ``w`` as a diagram with no cells, based at the root."""
    if not w:
        raise PreconditionError("tree_diagram requires a nonempty word")
    darts, tour, _, _ = _tree_parts(w, 0, 1, 0)
    diagram = assemble(p, darts, [(0, tuple(tour), None)], base_vertex=0)
    return _finish(diagram, "tree_diagram")


def mirror_diagram(d: Diagram) -> Diagram:
    """The reflected embedding: every face orbit is reversed and inverted, so
    the boundary word from the base becomes the inverse word."""
    orbits: list[tuple[int, tuple[int, ...], CellKind | None]] = []
    for f in d.faces:
        orbit = reverse_inverse_ids(d, f.boundary)
        if f.is_outer:
            orbits.append((f.id, orbit, None))
        else:
            rel = d.presentation.relations[f.kind.relation]
            kind = classify_cell_label(d.walk_labels(orbit), rel)
            assert kind is not None
            orbits.append((f.id, orbit, kind))
    diagram = assemble(d.presentation, d.darts, orbits, d.base_vertex)
    return _finish(diagram, "mirror_diagram")


def _attach_candidates(d: Diagram) -> list[tuple[tuple[int, ...], int, str, int]]:
    """Every (path, relation, side, offset) gluing site on the current
    boundary, in deterministic order."""
    outer = d.outer_face.boundary
    n = len(outer)
    max_len = max(
        (len(r.side(s)) for r in d.presentation.relations for s in ("lhs", "rhs")),
        default=0,
    )
    sites = []
    seen = set()
    for length in range(1, max_len + 1):
        if length > n:
            break
        for i in range(n):
            segment = tuple(outer[(i + j) % n] for j in range(length))
            for candidate in (segment, reverse_inverse_ids(d, segment)):
                if any(d.dart(x).label.sign < 0 for x in candidate):
                    continue
                if any(d.dart(a).head != d.dart(b).tail for a, b in zip(candidate, candidate[1:])):
                    continue
                vertices = [d.dart(candidate[0]).tail] + [d.dart(x).head for x in candidate]
                if len(set(vertices)) != len(vertices):
                    continue
                word = tuple(d.dart(x).label.letter for x in candidate)
                for rel in d.presentation.relations:
                    for side in ("lhs", "rhs"):
                        side_word = rel.side(side)
                        for at in range(len(side_word) - length + 1):
                            if side_word[at : at + length] == word:
                                key = (candidate, rel.index, side, at)
                                if key not in seen:
                                    seen.add(key)
                                    sites.append(key)
    return sites


def random_diagram(p: Presentation, cells: int, seed: int) -> Diagram:
    """Deterministic random diagram with the requested number of cells, grown
    by gluing, wedging, and hanging trees.  Requires an Adian presentation."""
    if not is_adian(p):
        raise PreconditionError("random_diagram requires an Adian presentation")
    if cells < 1:
        raise PreconditionError("cells must be >= 1")
    rng = random.Random(seed)
    letters = sorted(p.alphabet)

    d = single_cell(p, rng.randrange(len(p.relations)), mirrored=rng.random() < 0.5)
    trees_budget = rng.randrange(3)
    while len(d.cells) < cells or trees_budget > 0:
        if len(d.cells) >= cells:
            op = "tree"
            trees_budget -= 1
        else:
            roll = rng.random()
            op = "attach" if roll < 0.6 else ("wedge" if roll < 0.85 else "tree")
        if op == "attach":
            sites = _attach_candidates(d)
            rng.shuffle(sites)
            attached = False
            for path, rel_index, side, at in sites[:40]:
                try:
                    d = attach_cell(d, path, rel_index, side, at)
                    attached = True
                    break
                except BuildError:
                    continue
            if not attached:
                op = "wedge"  # always possible
        if op == "wedge":
            cell = single_cell(p, rng.randrange(len(p.relations)), mirrored=rng.random() < 0.5)
            v1 = rng.choice(sorted(d.boundary_vertices))
            v2 = rng.choice(sorted(cell.boundary_vertices))
            d = wedge(d, cell, v1, v2)
        if op == "tree":
            word = tuple(
                SignedLetter(rng.choice(letters), rng.choice((1, -1)))
                for _ in range(rng.randrange(1, 5))
            )
            v = rng.choice(sorted(d.boundary_vertices))
            d = attach_tree(d, v, word)
    return d
