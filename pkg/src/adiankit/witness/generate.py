"""Certificate generation from diagrams.

The generator mirrors the structure of the correctness argument:

* a diagram with no cells is a tree, and its boundary word is a Dyck word;
* a one-cell diagram's boundary word from any boundary vertex rewrites, by a
  single relation substitution, into a literal Dyck word;
* inside a one-component multi-cell diagram, a special cell is located whose
  bounding transversal splits it off; substituting across that cell and
  dropping the two p p^-1 factors reduces the claim to the smaller half;
* attached trees contribute Dyck excursions that are dropped as idempotent
  factors (conjugating first when the base vertex sits on a tree);
* at a cut vertex the boundary word factors into the pieces' boundary words,
  an idempotent product (or, off the cut vertex, a drop step around it).

Every recursion step re-reads the actual boundary walk and asserts that the
emitted child subjects equal the words of the smaller diagrams, so generation
failures surface immediately rather than as verifier rejections.
"""

from __future__ import annotations

from ..diagram.core import Diagram, boundary_walk, boundary_word, cell_sides, validate
from ..diagram.decompose import (
    extremal_vertices,
    find_special_cell_constructive,
    pieces_at_cut_vertex,
    restrict,
    simple_components,
    split_along_transversal,
)
from ..errors import EmptyBoundaryError, PreconditionError
from ..munn import Word, inverse_word, is_dyck, positive_word
from .certificate import (
    Certificate,
    DropFactor,
    DropIdempotents,
    DyckBase,
    ProductFactor,
    ProductOfIdempotents,
    RelationSubst,
    WitnessReport,
    compute_statistics,
)

__all__ = ["witness_simple_component", "witness_idempotent"]


def witness_idempotent(d: Diagram) -> WitnessReport:
    """Certificate that the boundary word from the base vertex is idempotent."""
    report = validate(d)
    if not report.ok:
        raise PreconditionError(f"diagram is invalid: {report.violations[0]}")
    if not d.darts:
        raise EmptyBoundaryError(
            "single-vertex diagram: the boundary word is empty and denotes no semigroup element"
        )
    cert = _witness_any(d, d.base_vertex)
    return WitnessReport(cert, compute_statistics(cert))


def _witness_any(d: Diagram, base: int) -> Certificate:
    decomposition = simple_components(d)
    k = len(decomposition.components)
    if k == 0:
        word = boundary_word(d, base)
        assert is_dyck(word), "tree boundary word must be a Dyck word"
        return Certificate(word, DyckBase())
    if k == 1:
        return witness_simple_component(d, base)
    return _witness_at_cut_vertex(d, base, decomposition)


# ---------------------------------------------------------------------------
# Cut-vertex induction
# ---------------------------------------------------------------------------


def _choose_cut_vertex(d: Diagram, decomposition) -> int:
    """Smallest-id cut vertex all of whose pieces have strictly fewer simple
    components than the whole diagram."""
    k = len(decomposition.components)
    for gamma in decomposition.cut_vertices:
        pieces = pieces_at_cut_vertex(d, gamma)
        counts = [
            sum(1 for comp in decomposition.component_darts if comp <= piece)
            for piece in pieces
        ]
        if len(pieces) > 1 and all(c < k for c in counts):
            return gamma
    raise AssertionError("no cut vertex separates the simple components")


def _runs_by_piece(d: Diagram, walk: tuple[int, ...], pieces: list[frozenset[int]]):
    """Split a boundary walk into maximal runs of darts of the same piece."""
    piece_of = {dart: i for i, piece in enumerate(pieces) for dart in piece}
    runs: list[tuple[int, int, int]] = []  # (piece index, start, end)
    start = 0
    for i in range(1, len(walk) + 1):
        if i == len(walk) or piece_of[walk[i]] != piece_of[walk[start]]:
            runs.append((piece_of[walk[start]], start, i))
            start = i
    return runs


def _witness_at_cut_vertex(d: Diagram, base: int, decomposition) -> Certificate:
    gamma = _choose_cut_vertex(d, decomposition)
    pieces = pieces_at_cut_vertex(d, gamma)

    def piece_cert(piece: frozenset[int], piece_base: int, anchor: int) -> Certificate:
        sub = restrict(d, piece, piece_base, first_walk_dart=anchor)
        return _witness_any(sub, piece_base)

    if base == gamma:
        walk = boundary_walk(d, gamma)
        word = d.walk_labels(walk)
        runs = _runs_by_piece(d, walk, pieces)
        assert len(runs) == len(pieces), "pieces must form contiguous boundary runs"
        factors = []
        children = []
        for piece_index, start, end in runs:
            factors.append(ProductFactor(start, end))
            child = piece_cert(pieces[piece_index], gamma, walk[start])
            assert child.subject == word[start:end]
            children.append(child)
        return Certificate(word, ProductOfIdempotents(tuple(factors)), tuple(children))

    walk = boundary_walk(d, base)
    word = d.walk_labels(walk)
    runs = _runs_by_piece(d, walk, pieces)
    home = runs[0][0]
    assert runs[-1][0] == home and len(runs) == len(pieces) + 1, (
        "walk from an off-cut base must start and end in the base's piece"
    )
    factors = []
    children = []
    for child_index, (piece_index, start, end) in enumerate(runs[1:-1]):
        factors.append(DropFactor("certified", start, end, child_index))
        child = piece_cert(pieces[piece_index], gamma, walk[start])
        assert child.subject == word[start:end]
        children.append(child)
    remainder = word[: runs[0][2]] + word[runs[-1][1] :]
    final = piece_cert(pieces[home], base, walk[0])
    assert final.subject == remainder
    children.append(final)
    return Certificate(word, DropIdempotents(tuple(factors)), tuple(children))


# ---------------------------------------------------------------------------
# Single simple component (with attached trees)
# ---------------------------------------------------------------------------


def _is_literal_pp_inverse(word: Word) -> bool:
    if len(word) % 2 != 0:
        return False
    half = len(word) // 2
    return word[half:] == inverse_word(word[:half])


def witness_simple_component(d: Diagram, from_vertex: int) -> Certificate:
    """Certificate for the boundary word read from ``from_vertex`` of a
    diagram with exactly one simple component (attached trees allowed)."""
    decomposition = simple_components(d)
    if len(decomposition.components) != 1:
        raise PreconditionError("witness_simple_component requires exactly one simple component")
    if from_vertex not in d.boundary_vertices:
        raise PreconditionError(f"vertex {from_vertex} is not on the boundary")
    core_darts = decomposition.component_darts[0]
    core_vertices = {d.dart(x).tail for x in core_darts}

    if from_vertex not in core_vertices:
        return _witness_from_tree_vertex(d, from_vertex, core_darts)

    walk = boundary_walk(d, from_vertex)
    word = d.walk_labels(walk)
    tree_positions = [i for i, x in enumerate(walk) if x not in core_darts]
    if not tree_positions:
        return _witness_core(d, from_vertex)

    # Maximal tree-dart runs are closed Dyck excursions; drop them.
    runs: list[tuple[int, int]] = []
    for i in tree_positions:
        if runs and runs[-1][1] == i:
            runs[-1] = (runs[-1][0], i + 1)
        else:
            runs.append((i, i + 1))
    factors = []
    children = []
    child_index = 0
    for start, end in runs:
        excursion = word[start:end]
        assert is_dyck(excursion), "tree excursion must be a Dyck word"
        if _is_literal_pp_inverse(excursion):
            factors.append(DropFactor("pp_inverse", start, end))
        else:
            factors.append(DropFactor("certified", start, end, child_index))
            children.append(Certificate(excursion, DyckBase()))
            child_index += 1
    first_core = next(x for x in walk if x in core_darts)
    core = restrict(d, core_darts, from_vertex, first_walk_dart=first_core)
    final = _witness_core(core, from_vertex)
    remainder: Word = ()
    prev = 0
    for start, end in runs:
        remainder += word[prev:start]
        prev = end
    remainder += word[prev:]
    assert final.subject == remainder, "core boundary word must equal the walk minus excursions"
    children.append(final)
    return Certificate(word, DropIdempotents(tuple(factors)), tuple(children))


def _witness_from_tree_vertex(
    d: Diagram, from_vertex: int, core_darts: frozenset[int]
) -> Certificate:
    """Base vertex on an attached tree: w = B * middle * A with B*A a Dyck
    word and middle the boundary word of the diagram without this branch."""
    walk = boundary_walk(d, from_vertex)
    word = d.walk_labels(walk)
    first = next(i for i, x in enumerate(walk) if x in core_darts)
    last = max(i for i, x in enumerate(walk) if x in core_darts)
    prefix_darts, suffix_darts = walk[:first], walk[last + 1 :]
    attach = d.dart(walk[first]).tail

    branch = set(prefix_darts) | set(suffix_darts)
    assert all(d.dart(x).inverse_id in branch for x in branch), "branch tour must close"
    rest = restrict(
        d,
        frozenset(x.id for x in d.darts) - frozenset(branch),
        attach,
        first_walk_dart=walk[first],
    )
    middle_cert = witness_simple_component(rest, attach)
    middle = word[first : last + 1]
    assert middle_cert.subject == middle

    closing = word[:first] + word[last + 1 :]
    assert closing and is_dyck(closing), "pruned branch tour must be a nonempty Dyck word"
    children = (middle_cert, Certificate(closing, DyckBase()))
    factors = (DropFactor("certified", first, last + 1, 0),)
    return Certificate(word, DropIdempotents(factors), children)


# ---------------------------------------------------------------------------
# One simple component, no trees: induction on cells
# ---------------------------------------------------------------------------


def _witness_core(d: Diagram, from_vertex: int) -> Certificate:
    assert not extremal_vertices(d), "core diagram must have no attached trees"
    if len(d.cells) == 1:
        return _witness_one_cell(d, from_vertex)
    return _witness_peel_special_cell(d, from_vertex)


def _witness_one_cell(d: Diagram, from_vertex: int) -> Certificate:
    """One cell: one relation substitution away from a literal Dyck word."""
    word = boundary_word(d, from_vertex)
    face = d.cells[0]
    sides = cell_sides(d, face)
    rel = d.presentation.relations[face.kind.relation]

    for own in ("lhs", "rhs"):
        other = "rhs" if own == "lhs" else "lhs"
        own_darts = sides.side_darts(own)
        own_word = positive_word(rel.side(own))
        other_word = positive_word(rel.side(other))
        path_vertices = [d.dart(own_darts[0]).tail] + [d.dart(x).head for x in own_darts]
        direction = "lhs_to_rhs" if other == "lhs" else "rhs_to_lhs"
        for split, vertex in enumerate(path_vertices):
            if vertex != from_vertex:
                continue
            a_word, b_word = own_word[:split], own_word[split:]
            if word == b_word + inverse_word(other_word) + a_word:
                step = RelationSubst(rel.index, direction, len(b_word), inverted=True)
                child_word = b_word + inverse_word(own_word) + a_word
                assert is_dyck(child_word)
                return Certificate(word, step, (Certificate(child_word, DyckBase()),))
            if word == inverse_word(a_word) + other_word + inverse_word(b_word):
                step = RelationSubst(rel.index, direction, len(a_word), inverted=False)
                child_word = inverse_word(a_word) + own_word + inverse_word(b_word)
                assert is_dyck(child_word)
                return Certificate(word, step, (Certificate(child_word, DyckBase()),))
    raise AssertionError("one-cell boundary word did not match any side split")


def _witness_peel_special_cell(d: Diagram, from_vertex: int) -> Certificate:
    word = boundary_word(d, from_vertex)
    walk = boundary_walk(d, from_vertex)
    face_id, transversal = find_special_cell_constructive(d, avoid=from_vertex)
    face = d.face_by_id[face_id]
    sides = cell_sides(d, face)
    rel = d.presentation.relations[face.kind.relation]

    t_darts = transversal.darts
    if set(t_darts) <= set(sides.lhs_darts):
        trans_side, boundary_side = "lhs", "rhs"
    else:
        assert set(t_darts) <= set(sides.rhs_darts)
        trans_side, boundary_side = "rhs", "lhs"
    split_darts = sides.side_darts(trans_side)
    pos = split_darts.index(t_darts[0])
    assert split_darts[pos : pos + len(t_darts)] == t_darts, "transversal must be one stretch of the side"
    s_darts = split_darts[:pos]
    tt_darts = split_darts[pos + len(t_darts) :]
    p_darts = sides.side_darts(boundary_side)

    def revinv(ids):
        return tuple(d.dart(x).inverse_id for x in reversed(ids))

    s_word = d.walk_labels(s_darts)
    tt_word = d.walk_labels(tt_darts)
    r_word = d.walk_labels(t_darts)
    p_word = d.walk_labels(p_darts)

    def locate(segment: tuple[int, ...]) -> int | None:
        if not segment:
            return None
        try:
            i = walk.index(segment[0])
        except ValueError:
            return None
        if walk[i : i + len(segment)] == segment:
            return i
        return None

    segment_fwd = revinv(s_darts) + tuple(p_darts) + revinv(tt_darts)
    segment_bwd = tuple(tt_darts) + revinv(p_darts) + tuple(s_darts)
    direction = "lhs_to_rhs" if boundary_side == "lhs" else "rhs_to_lhs"

    idx = locate(segment_fwd)
    if idx is not None:
        # w = g s^-1 p tt^-1 h, substitute p -> s r tt.
        g = word[:idx]
        h = word[idx + len(segment_fwd) :]
        step = RelationSubst(rel.index, direction, idx + len(s_word), inverted=False)
        rewritten = (
            g
            + inverse_word(s_word)
            + s_word
            + r_word
            + tt_word
            + inverse_word(tt_word)
            + h
        )
        drop_spans = [
            (len(g), len(g) + 2 * len(s_word)),
            (len(g) + 2 * len(s_word) + len(r_word), len(g) + 2 * len(s_word) + len(r_word) + 2 * len(tt_word)),
        ]
        remainder = g + r_word + h
    else:
        idx = locate(segment_bwd)
        assert idx is not None, "special cell boundary stretch must appear on the walk"
        # w = g tt p^-1 s h, substitute p^-1 -> (s r tt)^-1 = tt^-1 r^-1 s^-1.
        g = word[:idx]
        h = word[idx + len(segment_bwd) :]
        step = RelationSubst(rel.index, direction, idx + len(tt_word), inverted=True)
        rewritten = (
            g
            + tt_word
            + inverse_word(tt_word)
            + inverse_word(r_word)
            + inverse_word(s_word)
            + s_word
            + h
        )
        drop_spans = [
            (len(g), len(g) + 2 * len(tt_word)),
            (len(g) + 2 * len(tt_word) + len(r_word), len(g) + 2 * len(tt_word) + len(r_word) + 2 * len(s_word)),
        ]
        remainder = g + inverse_word(r_word) + h

    special_first = d.face_of_dart[t_darts[0]] == face_id
    if special_first:
        _, rest = split_along_transversal(d, transversal, base_second=from_vertex)
    else:
        rest, _ = split_along_transversal(d, transversal, base_first=from_vertex)
    assert boundary_word(rest, from_vertex) == remainder, (
        "peeled half must carry the reduced boundary word"
    )
    final = _witness_core(rest, from_vertex)

    spans = [span for span in drop_spans if span[0] != span[1]]
    if spans:
        factors = tuple(DropFactor("pp_inverse", start, end) for start, end in spans)
        middle = Certificate(rewritten, DropIdempotents(factors), (final,))
    else:
        assert rewritten == remainder
        middle = final
    return Certificate(word, step, (middle,))
