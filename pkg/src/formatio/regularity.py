"""The isolated-set vs maximal-intersection comparison and its sweeps.

For a class spec F and a group G two element sets are computed:
  * the isolated set: elements x with <x, y> in F for every y (exactly the
    isolated vertices of the pair graph whose edges are the non-member pairs);
  * the maximal intersection: common elements of all subgroups that are
    maximal among the F-subgroups of G.

For the spec shapes the theory guarantees to be regular, a sweep asserts the
two sets agree on every soluble group and fails loudly otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classes import (
    ClassSpec,
    ExponentFormationClass,
    IntersectionClass,
    PNilpotentClass,
    SolubleClass,
    SylowTowerClass,
    VStarClass,
    VSupersolubleClass,
    is_member,
)
from .errors import EmptyClass, TheoremViolation
from .groups import FiniteGroup, _closure, materialize
from .structure import all_subgroups


def _pair_subgroup(G: FiniteGroup, x: int, y: int) -> tuple[int, ...]:
    """Element set of <x, y>, cached per unordered pair."""
    if y < x:
        x, y = y, x
    cache = G._derived.setdefault("pair_subgroups", {})
    got = cache.get((x, y))
    if got is None:
        got = cache[(x, y)] = _closure(G.table, (x, y))
    return got


def _pair_member(G: FiniteGroup, x: int, y: int, spec: ClassSpec) -> bool:
    return is_member(materialize(G, _pair_subgroup(G, x, y)), spec)


def isolated_set(G: FiniteGroup, spec: ClassSpec) -> tuple[int, ...]:
    """Elements generating a member of the class together with every element
    (the pair x, x counts, via the cyclic subgroup <x>)."""
    out = []
    for x in range(G.order):
        if all(_pair_member(G, x, y, spec) for y in range(G.order)):
            out.append(x)
    return tuple(out)


def maximal_intersection(G: FiniteGroup, spec: ClassSpec) -> tuple[int, ...]:
    """Common elements of the subgroups maximal among the class members."""
    lattice = all_subgroups(G)
    members = [s for s in lattice.subgroups if is_member(s.as_group(), spec)]
    if not members:
        raise EmptyClass(f"{G.name} has no subgroup in {spec.text()}")
    member_sets = [s.elem_set for s in members]
    maximal = [s for i, s in enumerate(members)
               if not any(member_sets[i] < other for other in member_sets)]
    common = set(maximal[0].elems)
    for s in maximal[1:]:
        common &= s.elem_set
    return tuple(sorted(common))


@dataclass(frozen=True)
class NonClassGraph:
    """Pair graph of a group: an edge joins x and y when <x, y> is not in the
    class; loops (x = x) follow the same rule through <x>."""

    group: FiniteGroup
    spec_text: str
    adjacency: tuple[tuple[bool, ...], ...]
    isolated: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        """Unordered pairs x < y joined by an edge (loops not counted)."""
        n = len(self.adjacency)
        return sum(1 for x in range(n) for y in range(x + 1, n)
                   if self.adjacency[x][y])


def non_class_graph(G: FiniteGroup, spec: ClassSpec) -> NonClassGraph:
    n = G.order
    adjacency = tuple(
        tuple(not _pair_member(G, x, y, spec) for y in range(n))
        for x in range(n))
    isolated = tuple(x for x in range(n) if not any(adjacency[x]))
    assert isolated == isolated_set(G, spec), "graph/isolated-set disagreement"
    return NonClassGraph(G, spec.text(), adjacency, isolated)


def graph_to_dot(graph: NonClassGraph) -> str:
    G = graph.group
    lines = [f'graph "{G.name} vs {graph.spec_text}" {{']
    lines.append("  node [shape=circle];")
    isolated = set(graph.isolated)
    for x in range(G.order):
        style = ' style=filled fillcolor=lightgray' if x in isolated else ""
        lines.append(f'  {x} [label="{x} (ord {G.element_order[x]})"{style}];')
    for x in range(G.order):
        for y in range(x + 1, G.order):
            if graph.adjacency[x][y]:
                lines.append(f"  {x} -- {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Sweeps


def is_theorem_backed_regular(spec: ClassSpec) -> bool:
    """Spec shapes the theory proves regular on soluble groups: the
    prime-chain class, class-subnormal closures of hereditary soluble classes,
    soluble p-nilpotent intersections, normal-Hall-tower classes, and classes
    defined by an exponent function."""
    if isinstance(spec, (VSupersolubleClass, SylowTowerClass, ExponentFormationClass)):
        return True
    if isinstance(spec, VStarClass):
        return spec.inner.hereditary and spec.inner.soluble_only
    if isinstance(spec, IntersectionClass):
        kinds = {type(s) for s in spec.parts}
        if kinds == {PNilpotentClass, SolubleClass}:
            return True
    return False


@dataclass(frozen=True)
class SweepRow:
    group_name: str
    order: int
    soluble: bool
    maximal_intersection: tuple[int, ...]
    isolated: tuple[int, ...]
    equal: bool
    witness: int | None

    def to_json(self, spec_text: str | None = None) -> dict:
        return {
            "group": self.group_name,
            "spec": spec_text,
            "order": self.order,
            "soluble": self.soluble,
            "int": list(self.maximal_intersection),
            "iset": list(self.isolated),
            "equal": self.equal,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class RegularityReport:
    spec_text: str
    theorem_backed: bool
    rows: tuple[SweepRow, ...]

    @property
    def violations(self) -> tuple[SweepRow, ...]:
        """Soluble groups where a theorem-backed spec failed the equality."""
        if not self.theorem_backed:
            return ()
        return tuple(r for r in self.rows if r.soluble and not r.equal)

    def to_json(self) -> dict:
        return {
            "spec": self.spec_text,
            "theorem_backed": self.theorem_backed,
            "groups": len(self.rows),
            "equal": sum(1 for r in self.rows if r.equal),
            "violations": [r.to_json(self.spec_text) for r in self.violations],
            "rows": [r.to_json(self.spec_text) for r in self.rows],
        }


def regularity_row(G: FiniteGroup, spec: ClassSpec) -> SweepRow:
    from .classes import SOLUBLE

    int_set = maximal_intersection(G, spec)
    iso = isolated_set(G, spec)
    equal = int_set == iso
    witness = None
    if not equal:
        difference = sorted(set(int_set).symmetric_difference(iso))
        witness = difference[0]
    return SweepRow(G.name, G.order, is_member(G, SOLUBLE), int_set, iso,
                    equal, witness)


def regularity_sweep(groups, spec: ClassSpec,
                     enforce: bool = True) -> RegularityReport:
    """Compare the two element sets on every group.

    With `enforce`, a disagreement on a soluble group under a theorem-backed
    spec raises TheoremViolation carrying the full report.
    """
    rows = tuple(sorted((regularity_row(G, spec) for G in groups),
                        key=lambda r: (r.order, r.group_name)))
    report = RegularityReport(spec.text(), is_theorem_backed_regular(spec), rows)
    if enforce and report.violations:
        bad = ", ".join(r.group_name for r in report.violations)
        raise TheoremViolation(
            f"regular spec {spec.text()} has unequal sets on: {bad}", report)
    return report


def report_to_text(report: RegularityReport) -> str:
    lines = [f"spec {report.spec_text} "
             f"({'theorem-backed' if report.theorem_backed else 'informational'})"]
    for r in report.rows:
        status = "equal" if r.equal else f"DIFFER at {r.witness}"
        lines.append(f"  {r.group_name:<16} order {r.order:<4} {status}")
    lines.append(f"{sum(1 for r in report.rows if r.equal)}/{len(report.rows)} equal")
    return "\n".join(lines) + "\n"


def report_to_json_text(report: RegularityReport) -> str:
    return json.dumps(report.to_json(), indent=1, sort_keys=True) + "\n"
