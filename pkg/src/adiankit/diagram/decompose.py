"""Diagram decomposition: cactoid structure, directed transversals, splitting,
and special cells.

A diagram decomposes at its cut vertices into simple components (maximal
subdiagrams bounded by a simple closed curve; exactly the biconnected blocks
of the 1-skeleton that contain a cell) connected by arcs and attached trees.

Inside a single simple component with more than one cell, every interior
positive dart extends to a directed transversal, any directed transversal
splits the component into two smaller one-component diagrams, and repeated
splitting locates a special cell: a cell with one full side on the outer
boundary, bounded by a transversal whose split leaves that cell alone on one
side.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from .core import Diagram, Face, Vertex, cell_sides, rotate, validate

__all__ = [
    "Transversal",
    "CutPoint",
    "CactoidDecomposition",
    "simple_components",
    "pieces_at_cut_vertex",
    "extend_to_transversal",
    "split_along_transversal",
    "find_special_cells",
    "find_special_cell_constructive",
    "check_transversal",
]


@dataclass(frozen=True)
class Transversal:
    """A directed transversal: a positively labeled interior path between two
    distinct boundary vertices, with all vertices distinct and intermediate
    vertices interior."""

    darts: tuple[int, ...]

    def endpoints(self, d: Diagram) -> tuple[int, int]:
        return d.dart(self.darts[0]).tail, d.dart(self.darts[-1]).head

    def vertices(self, d: Diagram) -> tuple[int, ...]:
        return (d.dart(self.darts[0]).tail,) + tuple(d.dart(x).head for x in self.darts)


def check_transversal(d: Diagram, darts: tuple[int, ...]) -> Transversal:
    if not darts:
        raise PreconditionError("not a transversal: empty path")
    for a, b in zip(darts, darts[1:]):
        if d.dart(a).head != d.dart(b).tail:
            raise PreconditionError("not a transversal: path does not chain")
    if any(d.dart(x).label.sign < 0 for x in darts):
        raise PreconditionError("not a transversal: path is not positively labeled")
    if any(d.edge_on_boundary(x) for x in darts):
        raise PreconditionError("not a transversal: contains a boundary edge")
    t = Transversal(tuple(darts))
    vertices = t.vertices(d)
    if len(set(vertices)) != len(vertices):
        raise PreconditionError("not a transversal: repeated vertex")
    first, last = vertices[0], vertices[-1]
    if first not in d.boundary_vertices or last not in d.boundary_vertices:
        raise PreconditionError("not a transversal: endpoints must be boundary vertices")
    for v in vertices[1:-1]:
        if v in d.boundary_vertices:
            raise PreconditionError("not a transversal: intermediate vertex on the boundary")
    return t


# ---------------------------------------------------------------------------
# Blocks, cut vertices, cactoid structure
# ---------------------------------------------------------------------------


def _edge_id(d: Diagram, dart_id: int) -> int:
    dart = d.dart(dart_id)
    return min(dart.id, dart.inverse_id)


def _blocks_and_cut_vertices(d: Diagram) -> tuple[list[frozenset[int]], set[int]]:
    """Biconnected blocks (as sets of edge ids) and articulation points of the
    1-skeleton, treating parallel edges as distinct."""
    adjacency: dict[int, list[tuple[int, int]]] = {v.id: [] for v in d.vertices}
    for dart in d.darts:
        if dart.id < dart.inverse_id:
            adjacency[dart.tail].append((dart.id, dart.head))
            adjacency[dart.head].append((dart.id, dart.tail))

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    blocks: list[frozenset[int]] = []
    counter = 0
    for root in sorted(adjacency):
        if root in disc:
            continue
        edge_stack: list[int] = []
        root_children = 0
        disc[root] = low[root] = counter
        counter += 1
        stack: list[tuple[int, int | None, int]] = [(root, None, 0)]
        while stack:
            v, in_edge, idx = stack.pop()
            advanced = False
            while idx < len(adjacency[v]):
                edge, w = adjacency[v][idx]
                idx += 1
                if edge == in_edge:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(edge)
                    if v == root:
                        root_children += 1
                    stack.append((v, in_edge, idx))
                    stack.append((w, edge, 0))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(edge)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            # v is fully explored; propagate to its parent.
            if stack:
                parent, parent_in, _ = stack[-1]
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block: list[int] = []
                    while edge_stack:
                        e = edge_stack.pop()
                        block.append(e)
                        if e == in_edge:
                            break
                    blocks.append(frozenset(block))
                    if parent != root or root_children > 1:
                        cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


@dataclass(frozen=True)
class CutPoint:
    vertex: int
    components: tuple[int, ...]
    arcs_and_trees: tuple[int, ...]


@dataclass(frozen=True)
class CactoidDecomposition:
    components: tuple[Diagram, ...]
    component_cells: tuple[frozenset[int], ...]  # face ids in the parent diagram
    component_darts: tuple[frozenset[int], ...]
    arcs_and_trees: tuple[frozenset[int], ...]  # dart-id sets, inverse closed
    cut_vertices: tuple[int, ...]
    incidence: tuple[CutPoint, ...]


def restrict(
    d: Diagram,
    keep_darts: frozenset[int],
    base: int | None = None,
    first_walk_dart: int | None = None,
) -> Diagram:
    """Restriction of a diagram to an inverse-closed dart subset whose region
    is a disk: the surviving cells keep their faces, and exactly one new outer
    face arises.  Dart and vertex ids are preserved.

    ``first_walk_dart`` pins the corner at which the boundary walk starts:
    useful when the base vertex is visited more than once, so that the
    restricted walk lines up with a chosen stretch of the parent's walk.
    """
    assert all(d.dart(x).inverse_id in keep_darts for x in keep_darts)
    darts = tuple(x for x in d.darts if x.id in keep_darts)
    vertex_ids = sorted({x.tail for x in darts})
    vertices = []
    sigma: dict[int, int] = {}
    for vid in vertex_ids:
        old = d.vertex_by_id[vid].rotation
        kept = tuple(x for x in old if x in keep_darts)
        vertices.append(Vertex(vid, kept))
        for i, x in enumerate(kept):
            sigma[x] = kept[(i + 1) % len(kept)]

    by_id = {x.id: x for x in darts}
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for x in darts:
        if x.id in seen:
            continue
        orbit = [x.id]
        seen.add(x.id)
        cur = sigma[by_id[x.id].inverse_id]
        while cur != x.id:
            orbit.append(cur)
            seen.add(cur)
            cur = sigma[by_id[cur].inverse_id]
        orbits.append(tuple(orbit))

    faces: list[Face] = []
    outer_orbits = []
    surviving = {
        frozenset(f.boundary): f for f in d.cells if set(f.boundary) <= keep_darts
    }
    for orbit in orbits:
        old = surviving.get(frozenset(orbit))
        if old is not None:
            assert rotate(orbit, orbit.index(old.boundary[0])) == old.boundary
            faces.append(old)
        else:
            outer_orbits.append(orbit)
    assert len(outer_orbits) == 1, "restriction region must be a disk"
    outer_orbit = outer_orbits[0]
    if first_walk_dart is not None:
        # The boundary walk is the reversed-inverted outer orbit, so the walk
        # starts at ``first_walk_dart`` when its inverse ends the orbit.
        target = by_id[first_walk_dart].inverse_id
        idx = outer_orbit.index(target)
        outer_orbit = rotate(outer_orbit, (idx + 1) % len(outer_orbit))
    faces.append(Face(d.outer_face.id, outer_orbit, None))

    if first_walk_dart is not None and base is not None:
        assert by_id[first_walk_dart].tail == base, "walk anchor must leave the base vertex"
    restricted = Diagram(d.presentation, tuple(vertices), darts, tuple(faces), d.base_vertex)
    if base is None:
        base = (
            d.base_vertex
            if d.base_vertex in restricted.boundary_vertices
            else min(restricted.boundary_vertices)
        )
    if base not in restricted.boundary_vertices:
        raise PreconditionError(f"vertex {base} is not on the boundary of the restriction")
    return Diagram(d.presentation, tuple(vertices), darts, tuple(faces), base)


def simple_components(d: Diagram) -> CactoidDecomposition:
    """Block decomposition at cut vertices: blocks containing a cell become
    simple components, bridge blocks group into connecting arcs and attached
    trees."""
    blocks, cuts = _blocks_and_cut_vertices(d)
    edge_to_darts = {
        _edge_id(d, dart.id): (dart.id, dart.inverse_id)
        for dart in d.darts
        if dart.id < dart.inverse_id
    }

    cell_blocks = sorted(
        (b for b in blocks if len(b) >= 2), key=lambda b: min(b)
    )
    bridge_edges = [next(iter(b)) for b in blocks if len(b) == 1]

    component_darts = []
    component_cells = []
    components = []
    for block in cell_blocks:
        keep = frozenset(x for e in block for x in edge_to_darts[e])
        sub = restrict(d, keep)
        component_darts.append(keep)
        component_cells.append(
            frozenset(f.id for f in d.cells if set(f.boundary) <= keep)
        )
        components.append(sub)

    # Group bridges into connected arc/tree pieces.
    parent: dict[int, int] = {e: e for e in bridge_edges}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, list[int]] = {}
    for e in bridge_edges:
        dart = d.dart(e)
        for v in (dart.tail, dart.head):
            for other in by_vertex.get(v, []):
                parent[find(e)] = find(other)
            by_vertex.setdefault(v, []).append(e)
    groups: dict[int, list[int]] = {}
    for e in bridge_edges:
        groups.setdefault(find(e), []).append(e)
    trees = sorted(
        (
            frozenset(x for e in grp for x in edge_to_darts[e])
            for grp in groups.values()
        ),
        key=min,
    )

    incidence = []
    for v in sorted(cuts):
        comp_idx = tuple(
            i
            for i, keep in enumerate(component_darts)
            if any(d.dart(x).tail == v for x in keep)
        )
        tree_idx = tuple(
            i
            for i, keep in enumerate(trees)
            if any(d.dart(x).tail == v for x in keep)
        )
        incidence.append(CutPoint(v, comp_idx, tree_idx))

    return CactoidDecomposition(
        components=tuple(components),
        component_cells=tuple(component_cells),
        component_darts=tuple(component_darts),
        arcs_and_trees=tuple(trees),
        cut_vertices=tuple(sorted(cuts)),
        incidence=tuple(incidence),
    )


def pieces_at_cut_vertex(d: Diagram, v: int) -> list[frozenset[int]]:
    """Dart sets of the connected pieces obtained by deleting ``v`` (each piece
    keeps its darts incident to ``v``)."""
    piece_of: dict[int, int] = {}
    next_piece = 0
    for u in sorted(x.id for x in d.vertices):
        if u == v or u in piece_of:
            continue
        queue = [u]
        piece_of[u] = next_piece
        while queue:
            x = queue.pop()
            for dart_id in d.vertex_by_id[x].rotation:
                y = d.dart(dart_id).head
                if y != v and y not in piece_of:
                    piece_of[y] = next_piece
                    queue.append(y)
        next_piece += 1
    pieces: dict[int, set[int]] = {i: set() for i in range(next_piece)}
    for dart in d.darts:
        anchor = dart.head if dart.tail == v else dart.tail
        pieces[piece_of[anchor]].add(dart.id)
    return [frozenset(p) for _, p in sorted(pieces.items()) if p]


def extremal_vertices(d: Diagram) -> list[int]:
    return sorted(v.id for v in d.vertices if len(v.rotation) == 1)


# ---------------------------------------------------------------------------
# Transversals and splitting
# ---------------------------------------------------------------------------


def extend_to_transversal(d: Diagram, dart_id: int) -> Transversal:
    """Extend an interior positive dart to a directed transversal, walking
    forward and backward and taking the least dart id at every choice point."""
    start = d.dart(dart_id)
    if start.label.sign < 0:
        raise PreconditionError(f"dart {dart_id} is negatively labeled")
    if d.edge_on_boundary(dart_id):
        raise PreconditionError(f"dart {dart_id} is not interior")
    decomposition = simple_components(d)
    if len(decomposition.components) != 1:
        raise PreconditionError("extend_to_transversal requires a single simple component")

    chain = [dart_id]
    budget = len(d.darts) + 1
    cur = start.head
    while cur not in d.boundary_vertices:
        budget -= 1
        if budget < 0:
            raise PreconditionError("walk did not terminate; diagram has a directed cycle")
        out = min(
            x for x in d.vertex_by_id[cur].rotation if d.dart(x).label.sign > 0
        )
        chain.append(out)
        cur = d.dart(out).head
    cur = start.tail
    while cur not in d.boundary_vertices:
        budget -= 1
        if budget < 0:
            raise PreconditionError("walk did not terminate; diagram has a directed cycle")
        incoming = min(
            d.dart(x).inverse_id
            for x in d.vertex_by_id[cur].rotation
            if d.dart(x).label.sign < 0
        )
        chain.insert(0, incoming)
        cur = d.dart(incoming).tail
    return check_transversal(d, tuple(chain))


def split_along_transversal(
    d: Diagram,
    t: Transversal,
    base_first: int | None = None,
    base_second: int | None = None,
) -> tuple[Diagram, Diagram]:
    """Split a one-component diagram along a directed transversal.

    Returns the two transversal subdiagrams; the first is the one lying to the
    left of the transversal's first dart.  The transversal darts appear on
    both boundaries (both halves keep them, with their original ids).  Both
    halves revalidate and are again one-component diagrams without extremal
    vertices.
    """
    decomposition = simple_components(d)
    if len(decomposition.components) != 1:
        raise PreconditionError("split requires a diagram with exactly one simple component")
    if extremal_vertices(d):
        raise PreconditionError("split requires a diagram without extremal vertices")
    if len(d.cells) < 2:
        raise PreconditionError("no transversal exists: the diagram has a single cell")
    t = check_transversal(d, t.darts)

    t_edges = {x for dart_id in t.darts for x in (dart_id, d.dart(dart_id).inverse_id)}
    neighbors: dict[int, set[int]] = {f.id: set() for f in d.cells}
    outer_id = d.outer_face.id
    for dart in d.darts:
        if dart.id > dart.inverse_id or dart.id in t_edges:
            continue
        f1 = d.face_of_dart[dart.id]
        f2 = d.face_of_dart[dart.inverse_id]
        if f1 != outer_id and f2 != outer_id and f1 != f2:
            neighbors[f1].add(f2)
            neighbors[f2].add(f1)

    first_cell = d.face_of_dart[t.darts[0]]
    seen = {first_cell}
    queue = [first_cell]
    while queue:
        f = queue.pop()
        for g in neighbors[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    side1 = frozenset(seen)
    side2 = frozenset(f.id for f in d.cells) - side1
    if not side2:
        raise PreconditionError("t does not divide the diagram: not a transversal of d")

    alpha = d.dart(t.darts[0]).tail

    def half(cell_ids: frozenset[int], base: int | None) -> Diagram:
        keep = frozenset(
            x
            for fid in cell_ids
            for dart_id in d.face_by_id[fid].boundary
            for x in (dart_id, d.dart(dart_id).inverse_id)
        )
        sub = restrict(d, keep, base if base is not None else alpha)
        report = validate(sub)
        assert report.ok, f"split produced an invalid half: {report.violations[0]}"
        return sub

    return half(side1, base_first), half(side2, base_second)


# ---------------------------------------------------------------------------
# Special cells
# ---------------------------------------------------------------------------


def _side_on_boundary(d: Diagram, darts: tuple[int, ...]) -> bool:
    return all(d.edge_on_boundary(x) for x in darts)


def find_special_cells(d: Diagram) -> list[int]:
    """All cells with a full side on the outer boundary."""
    decomposition = simple_components(d)
    if len(decomposition.components) != 1:
        raise PreconditionError("find_special_cells requires a single simple component")
    out = []
    for f in d.cells:
        sides = cell_sides(d, f)
        if _side_on_boundary(d, sides.lhs_darts) or _side_on_boundary(d, sides.rhs_darts):
            out.append(f.id)
    return sorted(out)


def _compose_transversals(d: Diagram, t_cur: Transversal, t_inner: Transversal) -> Transversal:
    """Extend a transversal of a half to a transversal of the whole diagram by
    prepending/appending the surviving stretch of the current transversal."""
    alpha1 = d.dart(t_inner.darts[0]).tail
    beta1 = d.dart(t_inner.darts[-1]).head
    cur_vertices = t_cur.vertices(d)
    prefix: tuple[int, ...] = ()
    suffix: tuple[int, ...] = ()
    if alpha1 not in d.boundary_vertices:
        idx = cur_vertices.index(alpha1)
        prefix = t_cur.darts[:idx]
    if beta1 not in d.boundary_vertices:
        idx = cur_vertices.index(beta1)
        suffix = t_cur.darts[idx:]
    return check_transversal(d, prefix + t_inner.darts + suffix)


def _shrink_to_special(
    d: Diagram, t0: Transversal, active_cells: frozenset[int], active_half: Diagram
) -> tuple[int, Transversal]:
    """Shrink a transversal subdiagram to a single cell, maintaining a
    transversal of the full diagram that cuts the active cell set off."""
    t_cur, cells, half = t0, active_cells, active_half
    while len(cells) > 1:
        interior = half.interior_positive_darts()
        assert interior, "multi-cell half must have an interior edge"
        t_inner = extend_to_transversal(half, interior[0].id)
        t_new = _compose_transversals(d, t_cur, t_inner)
        g1, g2 = split_along_transversal(d, t_new)
        c1 = frozenset(f.id for f in g1.cells)
        c2 = frozenset(f.id for f in g2.cells)
        if c1 < cells:
            cells, half = c1, g1
        else:
            assert c2 < cells, "composed transversal must shrink the active side"
            cells, half = c2, g2
        t_cur = t_new
    return next(iter(cells)), t_cur


def find_special_cell_constructive(d: Diagram, avoid: int) -> tuple[int, Transversal]:
    """A special cell together with the directed transversal bounding it, such
    that splitting along the transversal leaves the cell alone on one side and
    a one-component diagram on the other, and ``avoid`` is not interior to the
    cell's stretch of the outer boundary."""
    decomposition = simple_components(d)
    if len(decomposition.components) != 1:
        raise PreconditionError("find_special_cell_constructive requires a single simple component")
    if len(d.cells) < 2:
        raise PreconditionError("single-cell diagram")

    interior = d.interior_positive_darts()
    t0 = extend_to_transversal(d, interior[0].id)
    h1, h2 = split_along_transversal(d, t0)
    candidates = []
    for half in (h1, h2):
        cells = frozenset(f.id for f in half.cells)
        candidates.append(_shrink_to_special(d, t0, cells, half))

    for face_id, t in sorted(candidates):
        boundary_part = {
            v
            for dart_id in d.face_by_id[face_id].boundary
            for v in (d.dart(dart_id).tail, d.dart(dart_id).head)
        }
        allowed = set(t.endpoints(d))
        if avoid not in boundary_part - allowed:
            return face_id, t
    raise AssertionError("no special cell avoids the distinguished vertex")
