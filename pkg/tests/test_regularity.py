"""Isolated sets, maximal intersections, pair graphs, and sweeps."""

from __future__ import annotations

import pytest

from formatio.classes import (
    ABELIAN,
    NILPOTENT,
    SOLUBLE,
    SUPERSOLUBLE,
    TRIVIAL,
    V_SUPERSOLUBLE,
    cap,
    is_member,
    p_nilpotent,
    sylow_tower,
    vstar,
)
from formatio.constructions import cyclic, dihedral
from formatio.errors import EmptyClass, TheoremViolation
from formatio.groups import center
from formatio.regularity import (
    graph_to_dot,
    is_theorem_backed_regular,
    isolated_set,
    maximal_intersection,
    non_class_graph,
    regularity_sweep,
)
from formatio.structure import hypercenter, soluble_radical


def brute_isolated(G, spec):
    """Oracle: test every ordered pair through a fresh closure."""
    from formatio.groups import generated_subgroup

    out = []
    for x in range(G.order):
        if all(is_member(generated_subgroup(G, [x, y]).as_group(), spec)
               for y in range(G.order)):
            out.append(x)
    return tuple(out)


def test_isolated_abelian_is_center(s3, q8, z6):
    for G in (s3, q8, z6):
        assert isolated_set(G, ABELIAN) == center(G).elems
        assert isolated_set(G, ABELIAN) == brute_isolated(G, ABELIAN)


def test_isolated_abelian_on_abelian_group(z6):
    assert isolated_set(z6, ABELIAN) == tuple(range(6))


def test_isolated_soluble_a5_is_trivial(a5):
    assert isolated_set(a5, SOLUBLE) == soluble_radical(a5).elems == (0,)


def test_maximal_intersection_s3_nilpotent(s3):
    assert maximal_intersection(s3, NILPOTENT) == (0,)


def test_maximal_intersection_of_member_is_whole(s3, q8):
    assert maximal_intersection(s3, SOLUBLE) == tuple(range(6))
    assert maximal_intersection(q8, NILPOTENT) == tuple(range(8))


def test_maximal_intersection_nilpotent_is_hypercenter(catalog_groups):
    for G in catalog_groups:
        if G.order > 30 and G.order != 60:
            continue
        assert maximal_intersection(G, NILPOTENT) == hypercenter(G, NILPOTENT).elems


def test_maximal_intersection_empty_class(s3):
    from formatio.classes import TrivialClass

    class Nothing(TrivialClass):
        def text(self):
            return "nothing"

        def _member(self, G):
            return False

    with pytest.raises(EmptyClass):
        maximal_intersection(s3, Nothing())


def test_non_class_graph_s3_nilpotent(s3):
    graph = non_class_graph(s3, NILPOTENT)
    # oracle: S3's only non-nilpotent subgroup is S3 itself, so edges are the
    # pairs generating everything: 3 x 2 transposition-rotation pairs plus
    # the 3 transposition-transposition pairs
    brute_edges = 0
    from formatio.groups import generated_subgroup

    for x in range(6):
        for y in range(x + 1, 6):
            if generated_subgroup(s3, [x, y]).order == 6:
                brute_edges += 1
    assert brute_edges == 9
    assert graph.edge_count == 9
    assert graph.isolated == (0,)


def test_graph_of_member_group_has_no_edges(z6):
    assert non_class_graph(z6, NILPOTENT).edge_count == 0


def test_graph_isolated_equals_isolated_set(a4):
    for spec in (ABELIAN, NILPOTENT, SUPERSOLUBLE, V_SUPERSOLUBLE):
        graph = non_class_graph(a4, spec)
        assert graph.isolated == isolated_set(a4, spec)


def test_graph_self_loops_mark_non_member_cyclics(s3):
    # with the trivial class, every non-identity element has a self loop and
    # even the identity is joined to everything else, so nothing is isolated
    graph = non_class_graph(s3, TRIVIAL)
    assert graph.isolated == ()
    assert graph.adjacency[1][1]
    assert not graph.adjacency[0][0]
    assert graph.adjacency[0][1]


def test_dot_export(s3):
    dot = graph_to_dot(non_class_graph(s3, NILPOTENT))
    assert dot.startswith('graph "S3 vs nilpotent"')
    assert dot.count(" -- ") == 9
    assert "ord 3" in dot
    assert "fillcolor=lightgray" in dot  # the isolated identity vertex


def test_theorem_backed_detection():
    assert is_theorem_backed_regular(V_SUPERSOLUBLE)
    assert is_theorem_backed_regular(vstar(SUPERSOLUBLE))
    assert is_theorem_backed_regular(vstar(NILPOTENT))
    assert is_theorem_backed_regular(cap(p_nilpotent(2), SOLUBLE))
    assert is_theorem_backed_regular(sylow_tower(2, 3, 5))
    assert not is_theorem_backed_regular(ABELIAN)
    assert not is_theorem_backed_regular(SUPERSOLUBLE)
    assert not is_theorem_backed_regular(SOLUBLE)  # regular, but not via these shapes


def test_sweep_empty_catalog():
    report = regularity_sweep([], V_SUPERSOLUBLE)
    assert report.rows == ()
    assert report.violations == ()


def test_sweep_rows_sorted_and_witnessed(s3, a4):
    report = regularity_sweep([a4, s3, cyclic(2)], SUPERSOLUBLE, enforce=False)
    assert [r.group_name for r in report.rows] == ["Z2", "S3", "A4"]
    a4_row = report.rows[-1]
    # A4: the supersoluble-maximal subgroups are V4 and the Z3s, meeting
    # trivially, and the isolated set is trivial too
    assert a4_row.equal


def test_sweep_violation_raises():
    from formatio.classes import VSupersolubleClass

    class Lying(VSupersolubleClass):
        """Claims the theorem-backed shape but answers like the trivial class."""

        def text(self):
            return "lying-vU"

        def _member(self, G):
            return G.order == 1

    with pytest.raises(TheoremViolation) as err:
        regularity_sweep([dihedral(4)], Lying())
    assert err.value.report is not None
    assert err.value.report.violations


def test_sweep_json_shape(s3):
    report = regularity_sweep([s3], NILPOTENT, enforce=False)
    payload = report.to_json()
    row = payload["rows"][0]
    assert set(row) == {"group", "spec", "order", "soluble", "int", "iset",
                        "equal", "witness"}
    assert row["spec"] == "nilpotent"
    assert row["int"] == [0] and row["iset"] == [0] and row["equal"]


def test_informational_sweep_for_non_regular_specs(catalog_groups):
    # abelian and supersoluble are not claimed regular; record agreement
    # rates without pass/fail semantics, but the isolated set must sit
    # inside the maximal intersection for these hereditary classes
    for spec in (ABELIAN, SUPERSOLUBLE):
        report = regularity_sweep(
            [G for G in catalog_groups if G.order <= 24], spec, enforce=False)
        for row in report.rows:
            assert set(row.isolated) <= set(row.maximal_intersection), \
                (spec.text(), row.group_name)
