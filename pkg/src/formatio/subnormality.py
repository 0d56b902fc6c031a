"""Subnormal-chain searches over the subgroup lattice.

Two step relations are supported for a chain H = H_0 <= H_1 <= ... <= H_n = G:
  * class steps: H_{i-1} is normal in H_i, or H_i modulo the core of H_{i-1}
    lies in a given class;
  * prime steps: each containment has prime index.

Chains are found by BFS over the materialized lattice, so a returned witness
is always one of minimal length, with deterministic tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, p_part, prime_divisors
from .groups import (
    FiniteGroup,
    Subgroup,
    _closure,
    conjugate_set,
    is_normal_in,
    materialize,
    quotient,
)
from .structure import all_subgroups
from .classes import ClassSpec, is_member

STEP_NORMAL = "normal"
STEP_CLASS_QUOTIENT = "class-quotient"
STEP_PRIME_INDEX = "prime-index"


@dataclass(frozen=True)
class ChainWitness:
    group: FiniteGroup
    chain: tuple[Subgroup, ...]
    step_kinds: tuple[str, ...]
    spec_text: str | None = None

    def verify(self, spec: ClassSpec | None = None) -> bool:
        """Re-check every labeled step of the chain."""
        G = self.group
        if len(self.chain) != len(self.step_kinds) + 1:
            return False
        if self.chain[-1].elems != tuple(range(G.order)):
            return False
        for i, kind in enumerate(self.step_kinds):
            small, big = self.chain[i], self.chain[i + 1]
            if not (small.elem_set <= big.elem_set):
                return False
            if kind == STEP_NORMAL:
                if not is_normal_in(G, small.elem_set, big.elems):
                    return False
            elif kind == STEP_PRIME_INDEX:
                if big.order % small.order or not is_prime(big.order // small.order):
                    return False
            elif kind == STEP_CLASS_QUOTIENT:
                if spec is None:
                    return False
                if not is_member(_core_quotient(G, small, big), spec):
                    return False
            else:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "spec": self.spec_text,
            "chain": [list(s.elems) for s in self.chain],
            "steps": list(self.step_kinds),
        }


def _core_quotient(G: FiniteGroup, small: Subgroup, big: Subgroup) -> FiniteGroup:
    """big / Core_big(small), materialized as a standalone group."""
    core = small.elem_set
    for g in big.elems:
        core &= conjugate_set(G, small.elems, g)
        if len(core) == 1:
            break
    bgroup = materialize(G, big.elems)
    pos = {e: i for i, e in enumerate(big.elems)}
    core_inside = Subgroup(bgroup, tuple(sorted(pos[e] for e in core)))
    Q, _ = quotient(bgroup, core_inside)
    return Q


def _supersets(G: FiniteGroup) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """For each lattice member, its proper supersets sorted by (size, elems)."""
    got = G._derived.get("supersets")
    if got is None:
        lattice = all_subgroups(G)
        elems_list = [s.elems for s in lattice.subgroups]
        sets = [frozenset(t) for t in elems_list]
        got = {}
        for i, t in enumerate(elems_list):
            ups = [elems_list[j] for j in range(len(elems_list))
                   if len(elems_list[j]) > len(t) and sets[i] <= sets[j]]
            got[t] = sorted(ups, key=lambda u: (len(u), u))
        G._derived["supersets"] = got
    return got


def _bfs_chain(G: FiniteGroup,
               start: Subgroup, edge_ok) -> tuple[tuple[int, ...], ...] | None:
    """Shortest path from start.elems to the full group, None if unreachable."""
    full = tuple(range(G.order))
    if start.elems == full:
        return (full,)
    ups = _supersets(G)
    frontier = [start.elems]
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start.elems: None}
    while frontier:
        nxt = []
        for node in frontier:
            for up in ups[node]:
                if up in parent or not edge_ok(node, up):
                    continue
                parent[up] = node
                if up == full:
                    path = [up]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
                nxt.append(up)
        frontier = nxt
    return None


def k_subnormal_chain(G: FiniteGroup, H: Subgroup,
                      spec: ClassSpec) -> ChainWitness | None:
    """Chain from H to G with normal or class-core-quotient steps."""
    cache = G._derived.setdefault(("kedge", spec.text()), {})

    def edge_ok(small: tuple[int, ...], big: tuple[int, ...]) -> bool:
        key = (small, big)
        got = cache.get(key)
        if got is None:
            small_set = frozenset(small)
            if is_normal_in(G, small_set, big):
                got = STEP_NORMAL
            elif is_member(_core_quotient(G, Subgroup(G, small), Subgroup(G, big)),
                           spec):
                got = STEP_CLASS_QUOTIENT
            else:
                got = False
            cache[key] = got
        return bool(got)

    path = _bfs_chain(G, H, edge_ok)
    if path is None:
        return None
    kinds = tuple(cache.get((path[i], path[i + 1]), STEP_NORMAL)
                  for i in range(len(path) - 1))
    return ChainWitness(G, tuple(Subgroup(G, t) for t in path), kinds, spec.text())


def is_k_subnormal(G: FiniteGroup, H: Subgroup, spec: ClassSpec) -> bool:
    return k_subnormal_chain(G, H, spec) is not None


def prime_index_chain(G: FiniteGroup, H: Subgroup) -> ChainWitness | None:
    """Chain from H to G in which every containment has prime index."""

    def edge_ok(small: tuple[int, ...], big: tuple[int, ...]) -> bool:
        return is_prime(len(big) // len(small)) and len(big) % len(small) == 0

    path = _bfs_chain(G, H, edge_ok)
    if path is None:
        return None
    kinds = tuple(STEP_PRIME_INDEX for _ in range(len(path) - 1))
    return ChainWitness(G, tuple(Subgroup(G, t) for t in path), kinds, None)


def is_prime_index_subnormal(G: FiniteGroup, H: Subgroup) -> bool:
    return prime_index_chain(G, H) is not None


def cyclic_primary_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """All cyclic subgroups of prime-power order, via the primary
    decomposition of each cyclic subgroup."""
    seen: set[tuple[int, ...]] = set()
    for x in range(1, G.order):
        o = G.element_order[x]
        for p in prime_divisors(o):
            y = G.power(x, o // p_part(o, p))
            seen.add(_closure(G.table, (y,)))
    seen.discard((0,))
    return tuple(Subgroup(G, t) for t in sorted(seen, key=lambda t: (len(t), t)))


def vstar_obstruction(G: FiniteGroup, spec: ClassSpec) -> Subgroup | None:
    """First cyclic primary subgroup without a class-subnormal chain."""
    if not spec.hereditary:
        raise ValueError(f"vstar needs a hereditary-flagged spec, got {spec.text()}")
    for P in cyclic_primary_subgroups(G):
        if k_subnormal_chain(G, P, spec) is None:
            return P
    return None


def vstar_member(G: FiniteGroup, spec: ClassSpec) -> bool:
    """Whether every cyclic primary subgroup is class-subnormal."""
    return vstar_obstruction(G, spec) is None


def vu_obstruction(G: FiniteGroup) -> Subgroup | None:
    """First cyclic primary subgroup without a prime-index chain."""
    for P in cyclic_primary_subgroups(G):
        if prime_index_chain(G, P) is None:
            return P
    return None


def vu_member(G: FiniteGroup) -> bool:
    """Whether every cyclic primary subgroup tops a prime-index chain."""
    return vu_obstruction(G) is None
