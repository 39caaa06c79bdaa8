"""Van Kampen diagrams as planar combinatorial maps: representation,
validation, construction, and surgical decomposition."""

from .core import (
    CellKind,
    CellSides,
    Dart,
    Diagram,
    Face,
    ValidationReport,
    Vertex,
    Violation,
    assemble,
    boundary_walk,
    boundary_word,
    cell_sides,
    classify_cell_label,
    interior_sources_sinks,
    relation_cell_word,
    validate,
)
from .decompose import (
    CactoidDecomposition,
    CutPoint,
    Transversal,
    check_transversal,
    extend_to_transversal,
    extremal_vertices,
    find_special_cell_constructive,
    find_special_cells,
    pieces_at_cut_vertex,
    restrict,
    simple_components,
    split_along_transversal,
)
from .io import diagram_from_json, diagram_to_json, render_dot
from .surgery import (
    attach_cell,
    attach_tree,
    mirror_diagram,
    random_diagram,
    single_cell,
    tree_diagram,
    wedge,
)

__all__ = [
    "CellKind",
    "CellSides",
    "Dart",
    "Diagram",
    "Face",
    "ValidationReport",
    "Vertex",
    "Violation",
    "assemble",
    "boundary_walk",
    "boundary_word",
    "cell_sides",
    "classify_cell_label",
    "interior_sources_sinks",
    "relation_cell_word",
    "validate",
    "CactoidDecomposition",
    "CutPoint",
    "Transversal",
    "check_transversal",
    "extend_to_transversal",
    "extremal_vertices",
    "find_special_cell_constructive",
    "find_special_cells",
    "pieces_at_cut_vertex",
    "restrict",
    "simple_components",
    "split_along_transversal",
    "diagram_from_json",
    "diagram_to_json",
    "render_dot",
    "attach_cell",
    "attach_tree",
    "mirror_diagram",
    "random_diagram",
    "single_cell",
    "tree_diagram",
    "wedge",
]
