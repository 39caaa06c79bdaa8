"""Acceptance suite.

Each test exercises one acceptance criterion at its stated tolerance and
prints one PASS line (run with ``pytest -s`` to see them).  The corpus used by
criteria 2-5 is the shared session fixture: 500 seeded random diagrams with up
to 12 cells over the three sample Adian presentations.
"""

import itertools
import json
import random
import time

from adiankit.cli import main
from adiankit.diagram import (
    boundary_word,
    diagram_to_json,
    find_special_cell_constructive,
    find_special_cells,
    interior_sources_sinks,
    simple_components,
    single_cell,
    split_along_transversal,
    validate,
)
from adiankit.munn import SignedLetter, inverse_word, positive_word
from adiankit.presentation import is_adian, left_graph, make_presentation, right_graph
from adiankit.witness import (
    Certificate,
    DropFactor,
    DropIdempotents,
    DyckBase,
    ProductFactor,
    ProductOfIdempotents,
    RelationSubst,
    verify,
    witness_idempotent,
    witness_simple_component,
)


def report(n, message, elapsed, limit=None):
    timing = f" ({elapsed:.1f}s" + (f", limit {limit}s)" if limit else ")")
    print(f"PASS criterion {n}: {message}{timing}")
    if limit is not None:
        assert elapsed < limit, f"criterion {n} exceeded its {limit}s budget: {elapsed:.1f}s"


# -- Criterion 1: Adian checker against a brute-force forest oracle ----------


def oracle_has_cycle(edges):
    """Exhaustive edge-subset oracle: some nonempty subset has more edges than
    touched vertices minus touched components."""
    for r in range(1, len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            touched = sorted({x for e in subset for x in e})
            parent = {x: x for x in touched}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for x, y in subset:
                if x != y:
                    parent[find(y)] = find(x)
            components = len({find(x) for x in touched})
            if len(subset) > len(touched) - components:
                return True
    return False


def test_criterion_1_adian_oracle_equivalence():
    t0 = time.perf_counter()
    alphabet = ["a", "b", "c"]
    words = [w for n in (1, 2) for w in itertools.product(alphabet, repeat=n)]
    pairs = list(itertools.product(words, repeat=2))
    checked = 0
    for combo in itertools.chain(
        ((pair,) for pair in pairs), itertools.product(pairs, repeat=2)
    ):
        p = make_presentation(alphabet, list(combo))
        expected = not (
            oracle_has_cycle([e.ends for e in left_graph(p).edges])
            or oracle_has_cycle([e.ends for e in right_graph(p).edges])
        )
        assert bool(is_adian(p)) == expected, combo
        checked += 1
    report(1, f"is_adian agrees with the forest oracle on all {checked} presentations",
           time.perf_counter() - t0, limit=30)


# -- Criteria 2 and 3: no interior sources/sinks, no directed cycles ---------


def test_criterion_2_no_interior_sources_or_sinks(corpus):
    build_seconds, items = corpus
    t0 = time.perf_counter()
    for _, d in items:
        assert validate(d).ok
        assert interior_sources_sinks(d) == []
    elapsed = build_seconds + (time.perf_counter() - t0)
    report(2, f"all {len(items)} corpus diagrams valid with no interior sources/sinks",
           elapsed, limit=10)


def topological_order_exists(vertices, arcs):
    indegree = {v: 0 for v in vertices}
    out = {v: [] for v in vertices}
    for tail, head in arcs:
        out[tail].append(head)
        indegree[head] += 1
    queue = [v for v, k in indegree.items() if k == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                queue.append(w)
    return seen == len(vertices)


def test_criterion_3_no_directed_cycles(corpus):
    _, items = corpus
    t0 = time.perf_counter()
    for _, d in items:
        arcs = [(x.tail, x.head) for x in d.darts if x.label.sign > 0]
        assert topological_order_exists([v.id for v in d.vertices], arcs)
    report(3, f"all {len(items)} corpus diagrams are free of directed cycles",
           time.perf_counter() - t0)


# -- Criterion 4: special cells -----------------------------------------------


def test_criterion_4_special_cells(corpus):
    _, items = corpus
    t0 = time.perf_counter()
    examined = 0
    for _, d in items:
        for component in simple_components(d).components:
            if len(component.cells) < 2:
                continue
            examined += 1
            specials = find_special_cells(component)
            assert len(specials) >= 2, f"only {specials} special cells"
            face_id, transversal = find_special_cell_constructive(
                component, component.base_vertex
            )
            assert face_id in specials
            h1, h2 = split_along_transversal(component, transversal)
            alone = h1 if face_id in {f.id for f in h1.cells} else h2
            rest = h2 if alone is h1 else h1
            assert [f.id for f in alone.cells] == [face_id]
            assert len(simple_components(rest).components) == 1
    report(4, f"{examined} multi-cell components each have >=2 special cells "
              "and a constructive cell with the split property",
           time.perf_counter() - t0)


# -- Criterion 5: end-to-end generate/verify through the CLI -----------------


def test_criterion_5_witness_end_to_end(corpus, tmp_path):
    _, items = corpus
    t0 = time.perf_counter()
    pres_paths = {}
    for index, (p, d) in enumerate(items):
        if id(p) not in pres_paths:
            path = tmp_path / f"pres{len(pres_paths)}.json"
            path.write_text(json.dumps({
                "alphabet": sorted(p.alphabet),
                "relations": [[list(r.lhs), list(r.rhs)] for r in p.relations],
            }))
            pres_paths[id(p)] = str(path)
        diagram_path = tmp_path / "diagram.json"
        cert_path = tmp_path / "cert.json"
        diagram_path.write_text(json.dumps(diagram_to_json(d)))
        assert main(["witness", "generate", str(diagram_path), "-o", str(cert_path)]) == 0
        assert main(["witness", "verify", str(cert_path), pres_paths[id(p)]]) == 0

    # The verifier is a separate code path: its module never imports the
    # generator or the diagram machinery.
    import importlib

    verifier_module = importlib.import_module("adiankit.witness.verify")
    source = open(verifier_module.__file__).read()
    import_lines = [
        line for line in source.splitlines() if line.strip().startswith(("import ", "from "))
    ]
    assert not any("generate" in line or "diagram" in line for line in import_lines)

    report(5, f"witness generate -> verify exits 0 on all {len(items)} corpus diagrams",
           time.perf_counter() - t0, limit=60)


# -- Criterion 6: one-cell base case, exhaustively ----------------------------


def test_criterion_6_one_cell_base_case(samples):
    t0 = time.perf_counter()
    checked = 0
    for p in samples:
        for rel in p.relations:
            for mirrored in (False, True):
                d = single_cell(p, rel.index, mirrored=mirrored)
                for own in ("lhs", "rhs"):
                    own_word = positive_word(rel.side(own))
                    side_vertices = _side_vertices(d, own)
                    for split, vertex in enumerate(side_vertices):
                        cert = witness_simple_component(d, vertex)
                        x, y = own_word[:split], own_word[split:]
                        literal_normal = y + inverse_word(y) + inverse_word(x) + x
                        literal_mirror = inverse_word(x) + x + y + inverse_word(y)
                        child = cert.children[0]
                        assert isinstance(child.step, DyckBase)
                        assert child.subject in (literal_normal, literal_mirror)
                        assert verify(cert, p)
                        checked += 1
    report(6, f"all {checked} cyclic splits rewrite to literal y y' x' x Dyck words",
           time.perf_counter() - t0)


def _side_vertices(d, side):
    from adiankit.diagram import cell_sides

    sides = cell_sides(d, d.cells[0])
    darts = sides.side_darts(side)
    return [d.dart(darts[0]).tail] + [d.dart(x).head for x in darts]


# -- Criterion 7: Munn tree oracle, exhaustively ------------------------------


def scan_reduce_empty(word):
    word = list(word)
    again = True
    while again:
        again = False
        for i in range(len(word) - 1):
            if word[i].letter == word[i + 1].letter and word[i].sign == -word[i + 1].sign:
                del word[i : i + 2]
                again = True
                break
    return not word


def test_criterion_7_munn_oracle():
    from adiankit.munn import fim_idempotent, is_dyck

    t0 = time.perf_counter()
    count = 0
    frontier = [()]
    for _ in range(8):
        longer = []
        for w in frontier:
            for letter in ("a", "b"):
                for sign in (1, -1):
                    longer.append(w + (SignedLetter(letter, sign),))
        for w in longer:
            expected = scan_reduce_empty(w)
            assert is_dyck(w) == expected
            assert fim_idempotent(w) == expected
            count += 1
        frontier = longer
    report(7, f"fim_idempotent == is_dyck == stack oracle on all {count} words",
           time.perf_counter() - t0, limit=20)


# -- Criterion 8: adversarial verifier fuzz -----------------------------------


def _local_step_ok(node, p):
    """Independent re-implementation of a single node's side conditions."""
    subject, step, children = node.subject, node.step, node.children
    if len(subject) == 0:
        return False
    if isinstance(step, DyckBase):
        return not children and scan_reduce_empty(subject)
    if isinstance(step, RelationSubst):
        if step.relation < 0 or step.relation >= len(p.relations):
            return False
        rel = p.relations[step.relation]
        if step.direction == "lhs_to_rhs":
            pat, rep = rel.lhs, rel.rhs
        elif step.direction == "rhs_to_lhs":
            pat, rep = rel.rhs, rel.lhs
        else:
            return False
        pattern = tuple(SignedLetter(x, 1) for x in pat)
        replacement = tuple(SignedLetter(x, 1) for x in rep)
        if step.inverted:
            pattern = tuple(x.inverse() for x in reversed(pattern))
            replacement = tuple(x.inverse() for x in reversed(replacement))
        i = step.position
        if i < 0 or i + len(pattern) > len(subject):
            return False
        if subject[i : i + len(pattern)] != pattern:
            return False
        if len(children) != 1:
            return False
        return children[0].subject == subject[:i] + replacement + subject[i + len(pattern) :]
    if isinstance(step, DropIdempotents):
        if not step.factors:
            return False
        certified = [f for f in step.factors if f.kind == "certified"]
        if len(children) != len(certified) + 1:
            return False
        used = set()
        cursor = 0
        rest = ()
        for f in step.factors:
            if not (cursor <= f.start < f.end <= len(subject)):
                return False
            rest += subject[cursor : f.start]
            cursor = f.end
            piece = subject[f.start : f.end]
            if f.kind == "pp_inverse":
                half, rem = divmod(len(piece), 2)
                expected = tuple(x.inverse() for x in reversed(piece[:half]))
                if rem or piece[half:] != expected:
                    return False
            elif f.kind == "certified":
                if (
                    f.child is None
                    or not 0 <= f.child < len(children) - 1
                    or f.child in used
                ):
                    return False
                used.add(f.child)
                if children[f.child].subject != piece:
                    return False
            else:
                return False
        rest += subject[cursor:]
        return bool(rest) and children[-1].subject == rest
    if isinstance(step, ProductOfIdempotents):
        if not step.factors or len(children) != len(step.factors):
            return False
        cursor = 0
        for f, child in zip(step.factors, children):
            if f.start != cursor or not f.start < f.end <= len(subject):
                return False
            if child.subject != subject[f.start : f.end]:
                return False
            cursor = f.end
        return cursor == len(subject)
    return False


def _nodes_with_paths(cert, path=()):
    yield path, cert
    for i, child in enumerate(cert.children):
        yield from _nodes_with_paths(child, path + (i,))


def _replace_node(cert, path, new_node):
    if not path:
        return new_node
    i = path[0]
    children = list(cert.children)
    children[i] = _replace_node(children[i], path[1:], new_node)
    return Certificate(cert.subject, cert.step, tuple(children))


def _mutate_step(step, rng):
    """One random single-field mutation; None when the step has no fields."""
    if isinstance(step, RelationSubst):
        field = rng.choice(["relation", "position", "direction", "inverted"])
        if field == "relation":
            return RelationSubst(step.relation + rng.choice([1, -1, 7]),
                                 step.direction, step.position, step.inverted)
        if field == "position":
            return RelationSubst(step.relation, step.direction,
                                 step.position + rng.choice([1, -1, 2, 5]), step.inverted)
        if field == "direction":
            flipped = "rhs_to_lhs" if step.direction == "lhs_to_rhs" else "lhs_to_rhs"
            return RelationSubst(step.relation, flipped, step.position, step.inverted)
        return RelationSubst(step.relation, step.direction, step.position, not step.inverted)
    if isinstance(step, DropIdempotents):
        i = rng.randrange(len(step.factors))
        f = step.factors[i]
        field = rng.choice(["start", "end", "child", "kind"])
        if field == "start":
            f = DropFactor(f.kind, f.start + rng.choice([1, -1]), f.end, f.child)
        elif field == "end":
            f = DropFactor(f.kind, f.start, f.end + rng.choice([1, -1]), f.child)
        elif field == "child":
            f = DropFactor(f.kind, f.start, f.end,
                           (f.child or 0) + rng.choice([1, -1]) if f.kind == "certified" else f.child)
            if f == step.factors[i]:
                return None
        else:
            f = DropFactor("certified" if f.kind == "pp_inverse" else "pp_inverse",
                           f.start, f.end, f.child)
        factors = list(step.factors)
        factors[i] = f
        return DropIdempotents(tuple(factors))
    if isinstance(step, ProductOfIdempotents):
        i = rng.randrange(len(step.factors))
        f = step.factors[i]
        if rng.random() < 0.5:
            f = ProductFactor(f.start + rng.choice([1, -1]), f.end)
        else:
            f = ProductFactor(f.start, f.end + rng.choice([1, -1]))
        factors = list(step.factors)
        factors[i] = f
        return ProductOfIdempotents(tuple(factors))
    return None  # DyckBase carries no fields


def test_criterion_8_adversarial_fuzz(corpus):
    _, items = corpus
    t0 = time.perf_counter()
    rng = random.Random(0)
    pool = []
    for p, d in items[:40]:
        cert = witness_idempotent(d).certificate
        assert verify(cert, p)
        pool.append((p, cert))

    mutations = 0
    false_acceptances = 0
    while mutations < 1000:
        p, cert = pool[rng.randrange(len(pool))]
        nodes = list(_nodes_with_paths(cert))
        path, node = nodes[rng.randrange(len(nodes))]
        new_step = _mutate_step(node.step, rng)
        if new_step is None:
            continue
        mutated_node = Certificate(node.subject, new_step, node.children)
        mutated = _replace_node(cert, path, mutated_node)
        accepted = verify(mutated, p)
        side_conditions_hold = _local_step_ok(mutated_node, p)
        if accepted and not side_conditions_hold:
            false_acceptances += 1
        # A mutation is accepted exactly when it still forms a valid step.
        assert accepted == side_conditions_hold
        mutations += 1

    assert false_acceptances == 0
    report(8, f"{mutations} single-field mutations, {false_acceptances} false acceptances",
           time.perf_counter() - t0)
