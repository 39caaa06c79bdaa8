"""Planar combinatorial maps encoding van Kampen diagrams.

A diagram is stored as darts (directed half-edges closed under a fixed-point
free involution), a rotation system (the counterclockwise cyclic order of the
darts leaving each vertex), and an explicit face list.  Faces must coincide
with the orbits of the next-dart-on-face map

    phi(d) = rotation_next(inverse(d)),

under which every face keeps its own region to the left of each of its darts.
Exactly one face is the outer face.  The boundary cycle of the diagram, read
so that the interior stays on the traverser's left, is the reverse of the
outer-face orbit with every dart inverted.

Cell faces carry the relation they instantiate together with a rotation
offset and an orientation flag: orientation +1 means the face label is a
cyclic rotation of lhs * rhs^-1, orientation -1 a rotation of rhs * lhs^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import PreconditionError, SchemaError
from ..munn import SignedLetter, Word, inverse_word, positive_word
from ..presentation import Presentation, Relation

__all__ = [
    "Dart",
    "Vertex",
    "CellKind",
    "Face",
    "Diagram",
    "Violation",
    "ValidationReport",
    "assemble",
    "validate",
    "boundary_word",
    "interior_sources_sinks",
    "cell_sides",
    "CellSides",
    "relation_cell_word",
    "classify_cell_label",
    "rotate",
    "reverse_inverse",
]


@dataclass(frozen=True)
class Dart:
    id: int
    inverse_id: int
    label: SignedLetter
    tail: int
    head: int


@dataclass(frozen=True)
class Vertex:
    id: int
    rotation: tuple[int, ...]  # dart ids with tail == id, counterclockwise


@dataclass(frozen=True)
class CellKind:
    relation: int
    offset: int
    orientation: int  # +1 or -1


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[int, ...]
    kind: CellKind | None  # None marks the outer face

    @property
    def is_outer(self) -> bool:
        return self.kind is None


@dataclass(frozen=True)
class Diagram:
    presentation: Presentation
    vertices: tuple[Vertex, ...]
    darts: tuple[Dart, ...]
    faces: tuple[Face, ...]
    base_vertex: int

    # Lookup tables.  The dataclass is frozen; caches live in __dict__.

    @cached_property
    def dart_by_id(self) -> dict[int, Dart]:
        table = {d.id: d for d in self.darts}
        if len(table) != len(self.darts):
            raise SchemaError("duplicate dart ids")
        return table

    @cached_property
    def vertex_by_id(self) -> dict[int, Vertex]:
        table = {v.id: v for v in self.vertices}
        if len(table) != len(self.vertices):
            raise SchemaError("duplicate vertex ids")
        return table

    @cached_property
    def face_by_id(self) -> dict[int, Face]:
        table = {f.id: f for f in self.faces}
        if len(table) != len(self.faces):
            raise SchemaError("duplicate face ids")
        return table

    def dart(self, dart_id: int) -> Dart:
        try:
            return self.dart_by_id[dart_id]
        except KeyError:
            raise SchemaError(f"unknown dart id {dart_id}") from None

    @cached_property
    def outer_face(self) -> Face:
        outer = [f for f in self.faces if f.is_outer]
        if len(outer) != 1:
            raise SchemaError(f"diagram must have exactly one outer face, found {len(outer)}")
        return outer[0]

    @cached_property
    def cells(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if not f.is_outer)

    @cached_property
    def sigma_next(self) -> dict[int, int]:
        """Rotation successor of each dart at its tail vertex."""
        table: dict[int, int] = {}
        for v in self.vertices:
            rot = v.rotation
            for i, d in enumerate(rot):
                table[d] = rot[(i + 1) % len(rot)]
        return table

    def phi(self, dart_id: int) -> int:
        """Next dart on the face that has this dart on its boundary."""
        return self.sigma_next[self.dart(dart_id).inverse_id]

    @cached_property
    def face_of_dart(self) -> dict[int, int]:
        table: dict[int, int] = {}
        for f in self.faces:
            for d in f.boundary:
                table[d] = f.id
        return table

    @cached_property
    def outer_walk(self) -> tuple[int, ...]:
        """Boundary cycle darts with the interior on the left."""
        return reverse_inverse_ids(self, self.outer_face.boundary)

    @cached_property
    def boundary_vertices(self) -> frozenset[int]:
        if not self.darts:
            return frozenset(v.id for v in self.vertices)
        return frozenset(self.dart(d).tail for d in self.outer_walk)

    def edge_on_boundary(self, dart_id: int) -> bool:
        """True when the underlying edge of the dart borders the outer face."""
        d = self.dart(dart_id)
        outer = self.outer_face.id
        return self.face_of_dart[d.id] == outer or self.face_of_dart[d.inverse_id] == outer

    @cached_property
    def positive_darts(self) -> tuple[Dart, ...]:
        return tuple(d for d in self.darts if d.label.sign > 0)

    def interior_positive_darts(self) -> tuple[Dart, ...]:
        return tuple(
            d for d in sorted(self.positive_darts, key=lambda d: d.id)
            if not self.edge_on_boundary(d.id)
        )

    def walk_labels(self, darts: Sequence[int]) -> Word:
        return tuple(self.dart(i).label for i in darts)

    def next_ids(self) -> tuple[int, int, int]:
        """Fresh (vertex, dart, face) id counters."""
        nv = 1 + max((v.id for v in self.vertices), default=-1)
        nd = 1 + max((d.id for d in self.darts), default=-1)
        nf = 1 + max((f.id for f in self.faces), default=-1)
        return nv, nd, nf


def rotate(seq: Sequence, k: int) -> tuple:
    k %= max(len(seq), 1)
    return tuple(seq[k:]) + tuple(seq[:k])


def reverse_inverse(word: Sequence[SignedLetter]) -> Word:
    return inverse_word(word)


def reverse_inverse_ids(d: Diagram, darts: Sequence[int]) -> tuple[int, ...]:
    return tuple(d.dart(i).inverse_id for i in reversed(darts))


def relation_cell_word(rel: Relation, orientation: int) -> Word:
    """The cell boundary word in the chosen orientation: lhs*rhs^-1 for +1,
    rhs*lhs^-1 for -1."""
    u, v = positive_word(rel.lhs), positive_word(rel.rhs)
    if orientation == 1:
        return u + inverse_word(v)
    if orientation == -1:
        return v + inverse_word(u)
    raise SchemaError(f"orientation must be +1 or -1, got {orientation}")


def classify_cell_label(label: Sequence[SignedLetter], rel: Relation) -> CellKind | None:
    """Match a face label against all rotations of the relation's two boundary
    words; returns the kind (with offset and orientation) or None."""
    label = tuple(label)
    for orientation in (1, -1):
        word = relation_cell_word(rel, orientation)
        if len(word) != len(label):
            continue
        for offset in range(len(word)):
            if rotate(word, offset) == label:
                return CellKind(rel.index, offset, orientation)
    return None


def assemble(
    presentation: Presentation,
    darts: Iterable[Dart],
    orbits: Sequence[tuple[int, tuple[int, ...], CellKind | None]],
    base_vertex: int,
    extra_vertices: Iterable[int] = (),
) -> Diagram:
    """Build a diagram from darts plus the full list of face orbits.

    The rotation system is derived from the orbits: the rotation successor of
    a dart e is phi(inverse(e)), so supplying every face orbit determines the
    embedding.  Raises if the orbits do not define a single rotation cycle at
    every vertex.
    """
    dart_list = tuple(sorted(darts, key=lambda d: d.id))
    by_id = {d.id: d for d in dart_list}
    phi: dict[int, int] = {}
    for _, orbit, _ in orbits:
        for i, dd in enumerate(orbit):
            phi[dd] = orbit[(i + 1) % len(orbit)]
    if set(phi) != set(by_id):
        raise SchemaError("face orbits must cover every dart exactly once")

    sigma = {by_id[e].inverse_id: phi[e] for e in phi}
    at_vertex: dict[int, list[int]] = {}
    for d in dart_list:
        at_vertex.setdefault(d.tail, []).append(d.id)
    vertices = []
    for vid in sorted(set(at_vertex) | set(extra_vertices)):
        here = at_vertex.get(vid, [])
        if not here:
            vertices.append(Vertex(vid, ()))
            continue
        start = min(here)
        cycle = [start]
        cur = sigma[start]
        while cur != start:
            cycle.append(cur)
            cur = sigma[cur]
            if len(cycle) > len(here):
                raise SchemaError(f"rotation at vertex {vid} does not close")
        if len(cycle) != len(here):
            raise SchemaError(f"face orbits split vertex {vid} into several rotation cycles")
        vertices.append(Vertex(vid, tuple(cycle)))

    faces = tuple(Face(fid, tuple(orbit), kind) for fid, orbit, kind in orbits)
    return Diagram(presentation, tuple(vertices), dart_list, faces, base_vertex)


def compute_orbits(d: Diagram) -> list[tuple[int, ...]]:
    """Orbits of phi, recomputed from the rotation system."""
    seen: set[int] = set()
    orbits = []
    for dart in d.darts:
        if dart.id in seen:
            continue
        orbit = [dart.id]
        seen.add(dart.id)
        cur = d.phi(dart.id)
        while cur != dart.id:
            orbit.append(cur)
            seen.add(cur)
            cur = d.phi(cur)
        orbits.append(tuple(orbit))
    return orbits


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _check_structure(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    for dart in d.darts:
        if dart.inverse_id not in d.dart_by_id:
            out.append(Violation("involution", f"dart {dart.id}: inverse {dart.inverse_id} missing"))
            continue
        inv = d.dart(dart.inverse_id)
        if inv.id == dart.id:
            out.append(Violation("involution", f"dart {dart.id} is its own inverse"))
        if inv.inverse_id != dart.id:
            out.append(Violation("involution", f"dart {dart.id}: inverse of inverse is {inv.inverse_id}"))
        if inv.label != dart.label.inverse():
            out.append(Violation("involution", f"dart {dart.id}: inverse label mismatch"))
        if (inv.tail, inv.head) != (dart.head, dart.tail):
            out.append(Violation("involution", f"dart {dart.id}: inverse does not swap endpoints"))
        if dart.tail not in d.vertex_by_id or dart.head not in d.vertex_by_id:
            out.append(Violation("structure", f"dart {dart.id}: endpoint not a listed vertex"))
    for v in d.vertices:
        expected = sorted(x.id for x in d.darts if x.tail == v.id)
        if sorted(v.rotation) != expected:
            out.append(
                Violation(
                    "rotation",
                    f"vertex {v.id}: rotation {list(v.rotation)} does not list exactly the darts leaving it",
                )
            )
    return out


def _check_faces(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    outer = [f for f in d.faces if f.is_outer]
    if len(outer) != 1:
        out.append(Violation("outer-face", f"expected exactly one outer face, found {len(outer)}"))
        return out
    if not d.darts:
        # Single-vertex diagram: just the outer face with an empty boundary.
        if len(d.faces) != 1 or d.faces[0].boundary:
            out.append(Violation("faces", "a diagram without darts has only the empty outer face"))
        return out
    orbits = {frozenset(o): o for o in compute_orbits(d)}
    if len(orbits) != len(d.faces):
        out.append(
            Violation(
                "faces",
                f"rotation system defines {len(orbits)} face orbits but {len(d.faces)} faces are stored",
            )
        )
        return out
    for f in d.faces:
        key = frozenset(f.boundary)
        orbit = orbits.get(key)
        if orbit is None:
            out.append(Violation("faces", f"face {f.id}: boundary is not a face orbit"))
            return out
        if rotate(orbit, orbit.index(f.boundary[0])) != tuple(f.boundary):
            out.append(Violation("faces", f"face {f.id}: boundary disagrees with its orbit order"))
            return out
    if d.base_vertex not in d.vertex_by_id:
        out.append(Violation("base-vertex", f"base vertex {d.base_vertex} is not a vertex"))
    elif d.base_vertex not in d.boundary_vertices:
        out.append(Violation("base-vertex", f"base vertex {d.base_vertex} does not lie on the outer face"))
    return out


def _check_euler_connectivity(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    if len(d.darts) % 2 != 0:
        out.append(Violation("structure", "odd number of darts"))
        return out
    v, e, f = len(d.vertices), len(d.darts) // 2, len(d.faces)
    if v - e + f != 2:
        out.append(Violation("euler", f"V - E + F = {v} - {e} + {f} = {v - e + f}, expected 2"))
    if d.vertices:
        seen = {d.vertices[0].id}
        queue = [d.vertices[0].id]
        adjacency: dict[int, list[int]] = {}
        for dart in d.darts:
            adjacency.setdefault(dart.tail, []).append(dart.head)
        while queue:
            x = queue.pop()
            for y in adjacency.get(x, []):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(d.vertices):
            out.append(Violation("connectivity", f"{len(d.vertices) - len(seen)} vertices unreachable"))
    return out


def _check_cell_labels(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    relations = d.presentation.relations
    for f in d.cells:
        kind = f.kind
        assert kind is not None
        if not 0 <= kind.relation < len(relations):
            out.append(Violation("cell-label", f"face {f.id}: unknown relation index {kind.relation}"))
            continue
        rel = relations[kind.relation]
        label = d.walk_labels(f.boundary)
        if kind.orientation not in (1, -1):
            out.append(Violation("cell-label", f"face {f.id}: bad orientation {kind.orientation}"))
            continue
        expected = rotate(relation_cell_word(rel, kind.orientation), kind.offset)
        if label != expected:
            u, v = rel.lhs, rel.rhs
            out.append(
                Violation(
                    "cell-label",
                    f"face {f.id}: label is not the declared conjugate of "
                    f"{''.join(u)}({''.join(v)})^-1 for relation {kind.relation}",
                )
            )
    return out


def _mirror_reading(w1: Word) -> Word:
    return (w1[0].inverse(),) + inverse_word(w1[1:])


def _check_reducedness(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    for dart in d.darts:
        if dart.id > dart.inverse_id:
            continue
        f1 = d.face_by_id[d.face_of_dart[dart.id]]
        f2 = d.face_by_id[d.face_of_dart[dart.inverse_id]]
        if f1.is_outer or f2.is_outer:
            continue
        w1 = d.walk_labels(rotate(f1.boundary, f1.boundary.index(dart.id)))
        w2 = d.walk_labels(rotate(f2.boundary, f2.boundary.index(dart.inverse_id)))
        if w2 == _mirror_reading(w1):
            out.append(
                Violation(
                    "reducedness",
                    f"cells {f1.id} and {f2.id} are mirror images across edge "
                    f"{{{dart.id},{dart.inverse_id}}}",
                )
            )
    return out


def _check_directed_cycles(d: Diagram) -> list[Violation]:
    indeg: dict[int, int] = {v.id: 0 for v in d.vertices}
    succs: dict[int, list[int]] = {v.id: [] for v in d.vertices}
    for dart in d.positive_darts:
        succs[dart.tail].append(dart.head)
        indeg[dart.head] += 1
    queue = [v for v, k in indeg.items() if k == 0]
    removed = 0
    while queue:
        x = queue.pop()
        removed += 1
        for y in succs[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if removed != len(d.vertices):
        stuck = sorted(v for v, k in indeg.items() if k > 0)
        return [Violation("directed-cycle", f"directed cycle through vertices {stuck}")]
    return []


def interior_sources_sinks(d: Diagram) -> list[int]:
    """Interior vertices whose incident darts all leave positively (sources)
    or all leave negatively (sinks)."""
    bad = []
    for v in d.vertices:
        if v.id in d.boundary_vertices or not v.rotation:
            continue
        signs = {d.dart(x).label.sign for x in v.rotation}
        if signs == {1} or signs == {-1}:
            bad.append(v.id)
    return sorted(bad)


def _check_sources_sinks(d: Diagram) -> list[Violation]:
    bad = interior_sources_sinks(d)
    if bad:
        return [Violation("source-sink", f"interior sources or sinks at vertices {bad}")]
    return []


def validate(d: Diagram) -> ValidationReport:
    """Run every diagram invariant in order and report all violations found.

    Structural breakage (involution or rotation inconsistencies, faces that do
    not match the rotation orbits) stops the later semantic checks, which
    would otherwise be meaningless.
    """
    violations = _check_structure(d)
    if violations:
        return ValidationReport(tuple(violations))
    violations += _check_euler_connectivity(d)
    face_violations = _check_faces(d)
    violations += face_violations
    if face_violations:
        return ValidationReport(tuple(violations))
    violations += _check_cell_labels(d)
    violations += _check_reducedness(d)
    violations += _check_directed_cycles(d)
    violations += _check_sources_sinks(d)
    return ValidationReport(tuple(violations))


def boundary_word(d: Diagram, from_vertex: int | None = None) -> Word:
    """Label of the boundary cycle starting at ``from_vertex`` (default: the
    base vertex), traversed with the interior on the left."""
    return d.walk_labels(boundary_walk(d, from_vertex))


def boundary_walk(d: Diagram, from_vertex: int | None = None) -> tuple[int, ...]:
    start = d.base_vertex if from_vertex is None else from_vertex
    if start not in d.boundary_vertices:
        raise PreconditionError(f"vertex {start} does not lie on the outer face")
    walk = d.outer_walk
    for i, dart_id in enumerate(walk):
        if d.dart(dart_id).tail == start:
            return rotate(walk, i)
    return ()  # no darts: single-vertex diagram


@dataclass(frozen=True)
class CellSides:
    """The two positive side paths of a two-sided cell face."""

    initial: int
    terminal: int
    lhs_darts: tuple[int, ...]
    rhs_darts: tuple[int, ...]

    def side_darts(self, which: str) -> tuple[int, ...]:
        return self.lhs_darts if which == "lhs" else self.rhs_darts


def cell_sides(d: Diagram, face: Face) -> CellSides:
    """Recover the two side paths of a cell from its stored boundary."""
    kind = face.kind
    if kind is None:
        raise PreconditionError("outer face has no sides")
    rel = d.presentation.relations[kind.relation]
    n = len(face.boundary)
    orbit0 = rotate(face.boundary, (-kind.offset) % n)
    first_len = len(rel.lhs) if kind.orientation == 1 else len(rel.rhs)
    forward = orbit0[:first_len]
    backward = reverse_inverse_ids(d, orbit0[first_len:])
    if kind.orientation == 1:
        lhs_darts, rhs_darts = forward, backward
    else:
        lhs_darts, rhs_darts = backward, forward
    return CellSides(
        initial=d.dart(forward[0]).tail,
        terminal=d.dart(forward[-1]).head,
        lhs_darts=lhs_darts,
        rhs_darts=rhs_darts,
    )
