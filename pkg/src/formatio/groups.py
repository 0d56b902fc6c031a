"""Finite groups as full Cayley tables over element indices 0..n-1.

The identity is pinned at index 0.  Groups and subgroups are immutable after
construction; derived data computed later (subgroup lattices, materialized
subgroups, ...) is memoized on a private per-instance cache whose entries are
deterministic functions of the group, so sharing instances stays safe.
"""

from __future__ import annotations

import hashlib
import json
from array import array
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import limits
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    GroupConstructionError,
    NoIdentityAtZero,
    NotAssociative,
    NotInvertible,
    NotNormal,
    SizeCapExceeded,
)

Row = tuple[int, ...]
Table = tuple[Row, ...]


class FiniteGroup:
    """A finite group: order, multiplication table, inverses, element orders."""

    __slots__ = ("name", "order", "table", "inverse", "element_order",
                 "fingerprint", "_derived", "__weakref__")

    def __init__(self, table: Table, name: str, inverse: Row,
                 element_order: Row, fingerprint: str):
        self.name = name
        self.order = len(table)
        self.table = table
        self.inverse = inverse
        self.element_order = element_order
        self.fingerprint = fingerprint
        self._derived: dict = {}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def conjugate(self, a: int, g: int) -> int:
        """g * a * g^-1."""
        t = self.table
        return t[t[g][a]][self.inverse[g]]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        t = self.table
        inv = self.inverse
        return t[t[t[inv[a]][inv[b]]][a]][b]

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _fingerprint(table: Table) -> str:
    n = len(table)
    h = hashlib.sha256()
    h.update(n.to_bytes(4, "big"))
    flat = array("i")
    for row in table:
        flat.extend(row)
    h.update(flat.tobytes())
    return h.hexdigest()


def _element_orders(table: Table) -> Row:
    orders = []
    for a in range(len(table)):
        x = table[0][a]
        k = 1
        while x != 0:
            x = table[x][a]
            k += 1
        orders.append(k)
    return tuple(orders)


def _normalize_table(table: Sequence[Sequence[int]]) -> Table:
    n = len(table)
    if n < 1:
        raise GroupConstructionError("table must have at least one row")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise GroupConstructionError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if x < 0 or x >= n:
                raise GroupConstructionError(f"entry {x} in row {i} out of range 0..{n - 1}")
        rows.append(row)
    return tuple(rows)


def _check_identity(table: Table) -> None:
    for a in range(len(table)):
        if table[0][a] != a or table[a][0] != a:
            raise NoIdentityAtZero(f"index 0 is not a two-sided identity at element {a}")


def _compute_inverses(table: Table) -> Row:
    n = len(table)
    inv = []
    for a in range(n):
        row = table[a]
        b = next((j for j in range(n) if row[j] == 0), None)
        if b is None or table[b][a] != 0:
            raise NotInvertible(f"element {a} has no two-sided inverse")
        inv.append(b)
    return tuple(inv)


def _check_associativity(table: Table) -> None:
    t = np.asarray(table, dtype=np.int64)
    n = len(table)
    for a in range(n):
        left = t[t[a], :]          # left[b, c] = t[t[a, b], c]
        right = t[a][t]            # right[b, c] = t[a, t[b, c]]
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            raise NotAssociative(f"(a*b)*c != a*(b*c) at indices a={a}, b={b}, c={c}")


def build_group(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Validate a Cayley table and return the group it defines."""
    rows = _normalize_table(table)
    if len(rows) > limits.max_order:
        raise SizeCapExceeded(f"order {len(rows)} exceeds cap {limits.max_order}")
    _check_identity(rows)
    inverse = _compute_inverses(rows)
    _check_associativity(rows)
    return FiniteGroup(rows, name, inverse, _element_orders(rows), _fingerprint(rows))


def _trusted_group(rows: Table, name: str) -> FiniteGroup:
    """Construct from a table that is associative by construction.

    Used for subgroups, quotients and products of already-validated groups;
    identity and inverse bookkeeping is still recomputed.
    """
    inverse = _compute_inverses(rows)
    return FiniteGroup(rows, name, inverse, _element_orders(rows), _fingerprint(rows))


def group_to_json(G: FiniteGroup) -> str:
    payload = {"name": G.name, "order": G.order, "table": [list(r) for r in G.table]}
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def group_from_json(text: str) -> FiniteGroup:
    """Load a group from the JSON Cayley-table format, with full validation."""
    payload = json.loads(text)
    name = payload["name"]
    table = payload["table"]
    if payload.get("order") != len(table):
        raise GroupConstructionError("declared order does not match table size")
    return build_group(table, name=str(name))


# ---------------------------------------------------------------------------
# Subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of `parent`, stored as a strictly sorted index tuple."""

    parent: FiniteGroup
    elems: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in self.elem_set

    @cached_property
    def elem_set(self) -> frozenset[int]:
        return frozenset(self.elems)

    def is_full(self) -> bool:
        return len(self.elems) == self.parent.order

    def is_trivial(self) -> bool:
        return len(self.elems) == 1

    def as_group(self) -> FiniteGroup:
        """This subgroup as a standalone group (relabeled, memoized)."""
        return materialize(self.parent, self.elems)

    def __repr__(self) -> str:
        return f"Subgroup(of={self.parent.name}, order={self.order})"


def subgroup(parent: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """Validated subgroup: sorted, contains the identity, closed, Lagrange."""
    sorted_elems = tuple(sorted(set(int(x) for x in elems)))
    if not sorted_elems or sorted_elems[0] != 0:
        raise GroupConstructionError("a subgroup must contain the identity index 0")
    eset = set(sorted_elems)
    table = parent.table
    for a in sorted_elems:
        if a >= parent.order:
            raise GroupConstructionError(f"index {a} outside the parent group")
        row = table[a]
        for b in sorted_elems:
            if row[b] not in eset:
                raise GroupConstructionError(
                    f"not closed: {a}*{b} = {row[b]} is outside the set")
    if parent.order % len(sorted_elems) != 0:
        raise GroupConstructionError(
            f"size {len(sorted_elems)} does not divide the group order {parent.order}")
    return Subgroup(parent, sorted_elems)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def _closure(table: Table, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest multiplicatively closed set containing the identity and seed."""
    elems = [0]
    seen = {0}
    for g in seed:
        if g not in seen:
            seen.add(g)
            elems.append(g)
    i = 0
    while i < len(elems):
        a = elems[i]
        row_a = table[a]
        for j in range(i + 1):
            b = elems[j]
            c = row_a[b]
            if c not in seen:
                seen.add(c)
                elems.append(c)
            c = table[b][a]
            if c not in seen:
                seen.add(c)
                elems.append(c)
        i += 1
    return tuple(sorted(elems))


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """The subgroup generated by the given element indices."""
    gens = tuple(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise GroupConstructionError(f"generator {g} outside the group")
    return Subgroup(G, _closure(G.table, gens))


def materialize(parent: FiniteGroup, elems: tuple[int, ...]) -> FiniteGroup:
    """Relabel a closed element set of `parent` as a standalone group."""
    cache = parent._derived.setdefault("materialized", {})
    got = cache.get(elems)
    if got is None:
        index = {e: i for i, e in enumerate(elems)}
        table = parent.table
        rows = tuple(tuple(index[table[a][b]] for b in elems) for a in elems)
        head = ".".join(map(str, elems[:4])) + (".." if len(elems) > 4 else "")
        got = _trusted_group(rows, name=f"{parent.name}|{head}")
        cache[elems] = got
    return got


def centralizer(G: FiniteGroup, elems: Iterable[int] | Subgroup) -> Subgroup:
    """Elements commuting with every element of the given set."""
    target = elems.elems if isinstance(elems, Subgroup) else tuple(elems)
    table = G.table
    out = [g for g in range(G.order)
           if all(table[g][s] == table[s][g] for s in target)]
    return Subgroup(G, tuple(out))


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, range(G.order))


def conjugate_set(G: FiniteGroup, elems: Iterable[int], g: int) -> frozenset[int]:
    table = G.table
    ginv = G.inverse[g]
    row_g = table[g]
    return frozenset(table[row_g[a]][ginv] for a in elems)


def is_normal_in(G: FiniteGroup, inner: frozenset[int], outer: Iterable[int]) -> bool:
    """Whether the closed set `inner` is normalized by every element of `outer`."""
    table = G.table
    inv = G.inverse
    for g in outer:
        row_g = table[g]
        ginv = inv[g]
        for a in inner:
            if table[row_g[a]][ginv] not in inner:
                return False
    return True


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return is_normal_in(G, H.elem_set, range(G.order))


def normal_core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of G inside H: the intersection of H's conjugates."""
    core = set(H.elems)
    for g in range(G.order):
        core &= conjugate_set(G, H.elems, g)
        if len(core) == 1:
            break
    return Subgroup(G, tuple(sorted(core)))


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup of G containing the seed elements."""
    table = G.table
    inv = G.inverse
    elems = [0]
    seen = {0}
    for g in seed:
        if g not in seen:
            seen.add(g)
            elems.append(g)
    i = 0
    while i < len(elems):
        a = elems[i]
        row_a = table[a]
        for j in range(i + 1):
            b = elems[j]
            for c in (row_a[b], table[b][a]):
                if c not in seen:
                    seen.add(c)
                    elems.append(c)
        for g in range(G.order):
            c = table[table[g][a]][inv[g]]
            if c not in seen:
                seen.add(c)
                elems.append(c)
        i += 1
    return Subgroup(G, tuple(sorted(elems)))


# ---------------------------------------------------------------------------
# Homomorphisms, quotients, products


@dataclass(frozen=True)
class GroupHom:
    """A verified homomorphism, stored as an index map."""

    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.image)) == self.source.order)


def group_hom(source: FiniteGroup, target: FiniteGroup,
              image: Sequence[int]) -> GroupHom:
    image = tuple(int(x) for x in image)
    if len(image) != source.order:
        raise GroupConstructionError("image map has the wrong length")
    if image[0] != 0:
        raise GroupConstructionError("a homomorphism must send identity to identity")
    ts, tt = source.table, target.table
    for a in range(source.order):
        ia = image[a]
        row = ts[a]
        for b in range(source.order):
            if image[row[b]] != tt[ia][image[b]]:
                raise GroupConstructionError(
                    f"not a homomorphism at pair ({a}, {b})")
    return GroupHom(source, target, image)


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N with cosets ordered by minimal element, plus the projection."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    key = ("quotient", N.elems)
    got = G._derived.get(key)
    if got is not None:
        return got
    table = G.table
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        members = sorted(table[g][x] for x in N.elems)
        idx = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = idx
    # cosets are discovered in order of their minimal element, so reps is sorted
    q = len(reps)
    rows = tuple(tuple(coset_of[table[reps[i]][reps[j]]] for j in range(q))
                 for i in range(q))
    Q = _trusted_group(rows, name=f"{G.name}/n{N.order}")
    hom = GroupHom(G, Q, tuple(coset_of))
    G._derived[key] = (Q, hom)
    return Q, hom


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B with pairs (a, b) encoded as a*|B| + b."""
    nb = B.order
    ta, tb = A.table, B.table
    rows = []
    for a1 in range(A.order):
        row_a = ta[a1]
        for b1 in range(nb):
            row_b = tb[b1]
            rows.append(tuple(row_a[a2] * nb + row_b[b2]
                              for a2 in range(A.order) for b2 in range(nb)))
    return _trusted_group(tuple(rows), name=f"{A.name}x{B.name}")


def _check_automorphism(N: FiniteGroup, perm: Sequence[int], label: str) -> None:
    if sorted(perm) != list(range(N.order)) or perm[0] != 0:
        raise ActionNotAutomorphism(f"action[{label}] is not a permutation fixing 0")
    t = N.table
    for a in range(N.order):
        pa = perm[a]
        for b in range(N.order):
            if perm[t[a][b]] != t[pa][perm[b]]:
                raise ActionNotAutomorphism(
                    f"action[{label}] breaks multiplication at ({a}, {b})")


def semidirect_product(N: FiniteGroup, H: FiniteGroup,
                       action: Sequence[Sequence[int]]) -> FiniteGroup:
    """N x| H for a homomorphism H -> Aut(N) given as permutations of N.

    Pairs (n, h) are encoded as n*|H| + h; multiplication is
    (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2).
    """
    if len(action) != H.order:
        raise ActionNotHomomorphism("need one automorphism per element of H")
    perms = [tuple(int(x) for x in p) for p in action]
    for h, perm in enumerate(perms):
        _check_automorphism(N, perm, str(h))
    th = H.table
    for h1 in range(H.order):
        for h2 in range(H.order):
            composed = tuple(perms[h1][perms[h2][x]] for x in range(N.order))
            if composed != perms[th[h1][h2]]:
                raise ActionNotHomomorphism(
                    f"action is not a homomorphism at pair ({h1}, {h2})")
    nh = H.order
    tn = N.table
    rows = []
    for n1 in range(N.order):
        row_n = tn[n1]
        for h1 in range(nh):
            row_h = th[h1]
            act = perms[h1]
            rows.append(tuple(row_n[act[n2]] * nh + row_h[h2]
                              for n2 in range(N.order) for h2 in range(nh)))
    return _trusted_group(tuple(rows), name=f"{N.name}:|{H.name}")


# ---------------------------------------------------------------------------
# Isomorphism testing


def _derived_length(G: FiniteGroup) -> int:
    """Number of strict steps in the derived series (0 for the trivial group)."""
    current = tuple(range(G.order))
    steps = 0
    while len(current) > 1:
        commutators = {G.commutator(a, b) for a in current for b in current}
        nxt = _closure(G.table, tuple(commutators))
        if nxt == current:
            return steps + G.order  # not soluble; still a valid invariant
        current = nxt
        steps += 1
    return steps


def _iso_screen(G: FiniteGroup) -> tuple:
    key = "iso_screen"
    got = G._derived.get(key)
    if got is None:
        got = (
            G.order,
            tuple(sorted(G.element_order)),
            center(G).order,
            _derived_length(G),
        )
        G._derived[key] = got
    return got


def _generating_sequence(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    closed: tuple[int, ...] = (0,)
    closed_set = {0}
    for x in range(G.order):
        if x not in closed_set:
            gens.append(x)
            closed = _closure(G.table, closed + (x,))
            closed_set = set(closed)
            if len(closed) == G.order:
                break
    return gens


def _extend_partial_iso(A: FiniteGroup, B: FiniteGroup,
                        amap: dict[int, int], g: int, b: int) -> dict[int, int] | None:
    """Extend a partial isomorphism by g -> b; None when inconsistent."""
    m = dict(amap)
    if g in m:
        return m if m[g] == b else None
    m[g] = b
    elems = list(amap) + [g]
    ta, tb = A.table, B.table
    i = 0
    while i < len(elems):
        x = elems[i]
        mx = m[x]
        for j in range(i + 1):
            y = elems[j]
            my = m[y]
            for prod, iprod in ((ta[x][y], tb[mx][my]), (ta[y][x], tb[my][mx])):
                known = m.get(prod)
                if known is None:
                    m[prod] = iprod
                    elems.append(prod)
                elif known != iprod:
                    return None
        i += 1
    if len(set(m.values())) != len(m):
        return None
    return m


def isomorphism(A: FiniteGroup, B: FiniteGroup) -> GroupHom | None:
    """An isomorphism A -> B, or None.

    Screens on cheap invariants first, then backtracks over generator images
    constrained to elements of equal order.
    """
    if A.order != B.order:
        return None
    if _iso_screen(A) != _iso_screen(B):
        return None
    gens = _generating_sequence(A)
    if not gens:  # trivial group
        return GroupHom(A, B, (0,))
    by_order: dict[int, list[int]] = {}
    for x in range(B.order):
        by_order.setdefault(B.element_order[x], []).append(x)

    def search(k: int, amap: dict[int, int]) -> dict[int, int] | None:
        if k == len(gens):
            return amap if len(amap) == A.order else None
        g = gens[k]
        taken = set(amap.values())
        for b in by_order.get(A.element_order[g], ()):
            if b in taken:
                continue
            extended = _extend_partial_iso(A, B, amap, g, b)
            if extended is not None:
                found = search(k + 1, extended)
                if found is not None:
                    return found
        return None

    mapping = search(0, {0: 0})
    if mapping is None:
        return None
    return GroupHom(A, B, tuple(mapping[a] for a in range(A.order)))


def is_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    return isomorphism(A, B) is not None
