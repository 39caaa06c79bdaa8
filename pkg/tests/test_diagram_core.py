import pytest

from adiankit.diagram import (
    CellKind,
    Dart,
    assemble,
    boundary_word,
    cell_sides,
    diagram_from_json,
    diagram_to_json,
    interior_sources_sinks,
    render_dot,
    single_cell,
    validate,
    wedge,
)
from adiankit.errors import PreconditionError, SchemaError
from adiankit.munn import SignedLetter, format_word, parse_word
from adiankit.presentation import make_presentation

P_ABC = make_presentation(["a", "b", "c"], [(("a", "b"), ("c",)), (("b", "a"), ("c",))])
P_ABA = make_presentation(["a", "b"], [(("a", "b", "a"), ("b", "a", "b"))])


def edge_pair(pos, tail, head, letter):
    """Positive dart with id pos and its inverse pos+1."""
    return [
        Dart(pos, pos + 1, SignedLetter(letter, 1), tail, head),
        Dart(pos + 1, pos, SignedLetter(letter, -1), head, tail),
    ]


def test_single_cell_aba_bab_counts():
    d = single_cell(P_ABA, 0)
    assert len(d.vertices) == 6
    assert len(d.darts) // 2 == 6
    assert len(d.faces) == 2
    assert len(d.vertices) - len(d.darts) // 2 + len(d.faces) == 2
    assert validate(d).ok
    assert format_word(boundary_word(d)) == "a b a b' a' b'"


def test_single_cell_boundary_and_sides():
    d = single_cell(P_ABC, 0)
    assert format_word(boundary_word(d)) == "a b c'"
    sides = cell_sides(d, d.cells[0])
    assert d.walk_labels(sides.lhs_darts) == parse_word("a b")
    assert d.walk_labels(sides.rhs_darts) == parse_word("c")
    assert sides.initial == 0

    mirrored = single_cell(P_ABC, 0, mirrored=True)
    assert format_word(boundary_word(mirrored)) == "c b' a'"
    assert validate(mirrored).ok


def test_boundary_word_requires_boundary_vertex():
    d = single_cell(P_ABC, 0)
    with pytest.raises(PreconditionError):
        boundary_word(d, from_vertex=99)


def test_mirror_pair_is_flagged():
    # Two copies of the (ab,c) cell glued along the c-edge as mirror images.
    darts = (
        edge_pair(0, 0, 1, "a")  # A -> M1
        + edge_pair(2, 1, 2, "b")  # M1 -> B
        + edge_pair(4, 0, 2, "c")  # A -> B, shared
        + edge_pair(6, 0, 3, "a")  # A -> M2
        + edge_pair(8, 3, 2, "b")  # M2 -> B
    )
    orbits = [
        (0, (0, 2, 5), CellKind(0, 0, 1)),  # a b c^-1
        (1, (4, 9, 7), CellKind(0, 0, -1)),  # c b^-1 a^-1
        (2, (3, 1, 6, 8), None),
    ]
    d = assemble(P_ABC, darts, orbits, base_vertex=0)
    report = validate(d)
    assert not report.ok
    assert [v.code for v in report.violations] == ["reducedness"]
    assert "mirror images" in report.violations[0].message


def test_non_conjugate_label_is_flagged():
    # A disk whose cell reads a b b^-1 a^-1 over the presentation (ab, ba).
    p = make_presentation(["a", "b"], [(("a", "b"), ("b", "a"))])
    darts = (
        edge_pair(0, 0, 1, "a")  # A -> M
        + edge_pair(2, 1, 2, "b")  # M -> B
        + edge_pair(4, 3, 2, "b")  # M' -> B
        + edge_pair(6, 0, 3, "a")  # A -> M'
    )
    orbits = [
        (0, (0, 2, 5, 7), CellKind(0, 0, 1)),
        (1, (6, 4, 3, 1), None),
    ]
    d = assemble(p, darts, orbits, base_vertex=0)
    report = validate(d)
    assert [v.code for v in report.violations] == ["cell-label"]
    assert "not the declared conjugate" in report.violations[0].message


def wheel_with_interior_source():
    """Triangle rim around a hub whose spokes all point outward."""
    darts = (
        edge_pair(0, 0, 1, "a")  # O -> A
        + edge_pair(2, 0, 2, "a")  # O -> B
        + edge_pair(4, 0, 3, "a")  # O -> C
        + edge_pair(6, 1, 2, "b")  # A -> B
        + edge_pair(8, 2, 3, "b")  # B -> C
        + edge_pair(10, 3, 1, "b")  # C -> A
    )
    orbits = [
        (0, (0, 6, 3), CellKind(0, 0, 1)),
        (1, (2, 8, 5), CellKind(0, 0, 1)),
        (2, (4, 10, 1), CellKind(0, 0, 1)),
        (3, (7, 11, 9), None),
    ]
    return assemble(P_ABC, darts, orbits, base_vertex=1)


def test_interior_source_detected_and_diagram_invalid():
    d = wheel_with_interior_source()
    assert interior_sources_sinks(d) == [0]
    report = validate(d)
    codes = {v.code for v in report.violations}
    assert "source-sink" in codes
    assert "directed-cycle" in codes  # the rim is a positive cycle
    assert "cell-label" in codes


def test_interior_sources_sinks_empty_on_valid_diagrams():
    d = single_cell(P_ABA, 0)
    assert interior_sources_sinks(d) == []
    d2 = single_cell(P_ABC, 0)
    c_dart = next(x for x in d2.darts if x.label.letter == "c" and x.label.sign > 0)
    from adiankit.diagram import attach_cell

    glued = attach_cell(d2, [c_dart.id], 1, "rhs")
    assert interior_sources_sinks(glued) == []
    # Both endpoints of the interior c-edge stay on the boundary.
    assert c_dart.tail in glued.boundary_vertices
    assert c_dart.head in glued.boundary_vertices


def test_json_round_trip_and_schema_errors():
    d = single_cell(P_ABA, 0)
    doc = diagram_to_json(d)
    back = diagram_from_json(doc)
    assert validate(back).ok
    assert boundary_word(back) == boundary_word(d)
    assert diagram_to_json(back) == doc

    with pytest.raises(SchemaError):
        diagram_from_json('{"vertices": []}')
    bad = diagram_to_json(d)
    bad["darts"][0]["inverse"] = 999
    with pytest.raises(SchemaError, match="unknown inverse"):
        diagram_from_json(bad)
    with pytest.raises(SchemaError, match="line 1"):
        diagram_from_json("{not json")


def test_render_dot_contents_and_stability():
    d = single_cell(P_ABC, 0)
    text = render_dot(d)
    assert text == render_dot(d)
    assert text.count("->") == 3
    for letter in "abc":
        assert f'[label="{letter}"]' in text
    assert "doublecircle" in text

    wedged = wedge(single_cell(P_ABC, 0), single_cell(P_ABC, 0), 0, 0)
    assert 'xlabel="cut"' in render_dot(wedged)


def test_single_vertex_diagram_is_valid_with_empty_boundary():
    from adiankit.diagram import Diagram, Face, Vertex

    d = Diagram(P_ABC, (Vertex(0, ()),), (), (Face(0, (), None),), 0)
    assert validate(d).ok
    assert boundary_word(d) == ()
