"""Group-class specs and their membership algebra.

A ClassSpec is a declarative, parseable description of a class of finite
groups.  Membership of a concrete group is decided structurally (derived
series, element-order counting, normal Hall chains, chief factors, residuals,
subnormal chains) and memoized by the group's table fingerprint, so repeated
sweeps over materialized subgroups stay cheap.

Class flags (`formation`, `hereditary`, `saturated`, `soluble_only`) record
which closure laws each spec is declared to satisfy; sweep tests spot-verify
the declarations on the whole catalog.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, p_part, prime_divisors
from .config import limits
from .errors import (
    EmptyClass,
    InvalidExponentFunction,
    NotAFormationWitness,
    SizeCapExceeded,
    SpecSyntaxError,
    UnsupportedParameter,
)
from .groups import FiniteGroup, Subgroup, _closure, quotient, subgroup
from .structure import (
    all_subgroups,
    chief_series,
    elems_soluble,
    exponent,
    normal_subgroups,
)
from .supernatural import (
    INF,
    ExponentFunction,
    Supernatural,
    divides_int,
    format_supernatural,
    parse_exponent_function,
    parse_supernatural,
)


class ClassSpec:
    """Base class; concrete variants are frozen dataclasses below."""

    formation = False
    hereditary = False
    saturated = False
    soluble_only = False

    def text(self) -> str:
        raise NotImplementedError

    def _member(self, G: FiniteGroup) -> bool:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.text()


_MEMBER_CACHE: dict[tuple[str, str], bool] = {}


def is_member(G: FiniteGroup, spec: ClassSpec) -> bool:
    """Whether G belongs to the class, memoized by table fingerprint."""
    if G.order > limits.max_order:
        raise SizeCapExceeded(
            f"group of order {G.order} exceeds the cap {limits.max_order}")
    key = (G.fingerprint, spec.text())
    got = _MEMBER_CACHE.get(key)
    if got is None:
        got = _MEMBER_CACHE[key] = spec._member(G)
    return got


# ---------------------------------------------------------------------------
# Structural predicates


def _is_abelian(G: FiniteGroup) -> bool:
    got = G._derived.get("abelian")
    if got is None:
        t = G.table
        got = all(t[a][b] == t[b][a] for a in range(G.order) for b in range(a))
        G._derived["abelian"] = got
    return got


def _p_element_count(G: FiniteGroup, p: int) -> int:
    count = 0
    for o in G.element_order:
        while o % p == 0:
            o //= p
        if o == 1:
            count += 1
    return count


def _is_nilpotent(G: FiniteGroup) -> bool:
    # every Sylow subgroup is normal iff for each p the p-elements are exactly
    # a full Sylow subgroup, which is a pure counting condition
    return all(_p_element_count(G, p) == p_part(G.order, p)
               for p in prime_divisors(G.order))


def _is_soluble(G: FiniteGroup) -> bool:
    got = G._derived.get("soluble")
    if got is None:
        got = elems_soluble(G, tuple(range(G.order)))
        G._derived["soluble"] = got
    return got


def _is_supersoluble(G: FiniteGroup) -> bool:
    return all(is_prime(o) for o in chief_series(G).factor_orders)


def _is_p_nilpotent(G: FiniteGroup, p: int) -> bool:
    m = G.order // p_part(G.order, p)
    coprime = [x for x in range(G.order) if G.element_order[x] % p != 0]
    if len(coprime) > m:
        return False
    return len(_closure(G.table, tuple(coprime))) == m


def _sylow_subgroup_if_normal(G: FiniteGroup, p: int) -> Subgroup | None:
    pa = p_part(G.order, p)
    pelems = [x for x in range(G.order)
              if p_part(G.element_order[x], p) == G.element_order[x]]
    if len(pelems) != pa:
        return None
    return subgroup(G, pelems)


@dataclass(frozen=True)
class PrimeOrdering:
    """A linear ordering of all primes: the listed ones first, in the order
    given, then all unlisted primes in increasing natural order."""

    listed: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.listed)) != len(self.listed):
            raise UnsupportedParameter("ordering lists a prime twice")
        for p in self.listed:
            if not is_prime(p):
                raise UnsupportedParameter(f"{p} is not prime")

    def sort_key(self, p: int):
        if p in self.listed:
            return (0, self.listed.index(p))
        return (1, p)

    def text(self) -> str:
        return ">".join(map(str, self.listed))


def _has_sylow_tower(G: FiniteGroup, ordering: PrimeOrdering) -> bool:
    while G.order > 1:
        p = min(prime_divisors(G.order), key=ordering.sort_key)
        P = _sylow_subgroup_if_normal(G, p)
        if P is None:
            return False
        G, _ = quotient(G, P)
    return True


# ---------------------------------------------------------------------------
# Named specs


@dataclass(frozen=True)
class TrivialClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return "trivial"

    def _member(self, G):
        return G.order == 1


@dataclass(frozen=True)
class AbelianClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = False
    soluble_only = True

    def text(self):
        return "abelian"

    def _member(self, G):
        return _is_abelian(G)


@dataclass(frozen=True)
class NilpotentClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return "nilpotent"

    def _member(self, G):
        return _is_nilpotent(G)


@dataclass(frozen=True)
class PGroupsClass(ClassSpec):
    p: int
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return f"p_groups:{self.p}"

    def _member(self, G):
        return G.order == p_part(G.order, self.p)


@dataclass(frozen=True)
class SolubleClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return "soluble"

    def _member(self, G):
        return _is_soluble(G)


@dataclass(frozen=True)
class SupersolubleClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return "supersoluble"

    def _member(self, G):
        return _is_supersoluble(G)


@dataclass(frozen=True)
class PNilpotentClass(ClassSpec):
    p: int
    formation = True
    hereditary = True
    saturated = True
    soluble_only = False

    def text(self):
        return f"p_nilpotent:{self.p}"

    def _member(self, G):
        return _is_p_nilpotent(G, self.p)


@dataclass(frozen=True)
class SolublePiClass(ClassSpec):
    """Soluble groups whose prime divisors lie in the given set (or in its
    complement when `complement` is set)."""

    primes: tuple[int, ...]
    complement: bool = False
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def contains_prime(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    def text(self):
        mark = "'" if self.complement else ""
        return f"S_pi{mark}:{{{','.join(map(str, self.primes))}}}"

    def _member(self, G):
        return (all(self.contains_prime(p) for p in prime_divisors(G.order))
                and _is_soluble(G))


@dataclass(frozen=True)
class SylowTowerClass(ClassSpec):
    ordering: PrimeOrdering
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return f"sylow_tower:{self.ordering.text()}"

    def _member(self, G):
        return _has_sylow_tower(G, self.ordering)


@dataclass(frozen=True)
class AllGroupsClass(ClassSpec):
    formation = True
    hereditary = True
    saturated = True
    soluble_only = False

    def text(self):
        return "all"

    def _member(self, G):
        return True


@dataclass(frozen=True)
class VSupersolubleClass(ClassSpec):
    """Groups whose cyclic prime-power subgroups all sit at the top of a
    chain of prime-index steps."""

    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return "vU"

    def _member(self, G):
        from .subnormality import vu_member

        return vu_member(G)


# ---------------------------------------------------------------------------
# Composite specs


@dataclass(frozen=True)
class ExponentBoundedClass(ClassSpec):
    """Members of `base` whose exponent divides `omega`."""

    base: ClassSpec
    omega: Supernatural

    @property
    def formation(self):  # type: ignore[override]
        return self.base.formation

    @property
    def hereditary(self):  # type: ignore[override]
        return self.base.hereditary

    @property
    def soluble_only(self):  # type: ignore[override]
        return self.base.soluble_only

    def text(self):
        if isinstance(self.base, SolubleClass):
            return f"S({format_supernatural(self.omega)})"
        return f"bounded({self.base.text()};{format_supernatural(self.omega)})"

    def _member(self, G):
        return divides_int(exponent(G), self.omega) and is_member(G, self.base)


@dataclass(frozen=True)
class ProductClass(ClassSpec):
    """Groups whose residual for `outer` falls inside `inner`."""

    inner: ClassSpec
    outer: ClassSpec

    @property
    def formation(self):  # type: ignore[override]
        return self.inner.formation and self.outer.formation

    @property
    def soluble_only(self):  # type: ignore[override]
        return self.inner.soluble_only and self.outer.soluble_only

    def text(self):
        return f"prod({self.inner.text()},{self.outer.text()})"

    def _member(self, G):
        return product_member(G, self.inner, self.outer)


@dataclass(frozen=True)
class IntersectionClass(ClassSpec):
    parts: tuple[ClassSpec, ...]

    @property
    def formation(self):  # type: ignore[override]
        return all(s.formation for s in self.parts)

    @property
    def hereditary(self):  # type: ignore[override]
        return all(s.hereditary for s in self.parts)

    @property
    def saturated(self):  # type: ignore[override]
        return all(s.saturated for s in self.parts)

    @property
    def soluble_only(self):  # type: ignore[override]
        return any(s.soluble_only for s in self.parts)

    def text(self):
        return f"cap({','.join(s.text() for s in self.parts)})"

    def _member(self, G):
        return all(is_member(G, s) for s in self.parts)


@dataclass(frozen=True)
class LocalClass(ClassSpec):
    """Groups whose chief-factor automizers lie in h(p) for each prime p
    dividing the factor order."""

    entries: tuple[tuple[int, ClassSpec], ...]
    default: ClassSpec
    formation = True
    saturated = True

    @property
    def hereditary(self):  # type: ignore[override]
        return (self.default.hereditary
                and all(s.hereditary for _, s in self.entries))

    def spec_at(self, p: int) -> ClassSpec:
        for q, s in self.entries:
            if q == p:
                return s
        return self.default

    def text(self):
        parts = [f"{p}->{s.text()}" for p, s in self.entries]
        parts.append(f"default->{self.default.text()}")
        return f"local({','.join(parts)})"

    def _member(self, G):
        return local_member(G, self.spec_at)


@dataclass(frozen=True)
class VStarClass(ClassSpec):
    """Groups whose cyclic prime-power subgroups are all reachable by chains
    of steps that are normal or have core-quotient inside `inner`."""

    inner: ClassSpec
    formation = True
    hereditary = True

    @property
    def saturated(self):  # type: ignore[override]
        return self.inner.soluble_only

    @property
    def soluble_only(self):  # type: ignore[override]
        return self.inner.soluble_only

    def text(self):
        return f"vstar({self.inner.text()})"

    def _member(self, G):
        from .subnormality import vstar_member

        return vstar_member(G, self.inner)


@dataclass(frozen=True)
class ExponentFormationClass(ClassSpec):
    """The soluble class cut out per prime p by: the residual for
    exponent-dividing-f(p) soluble groups must be a p'-group."""

    fn: ExponentFunction
    formation = True
    hereditary = True
    saturated = True
    soluble_only = True

    def text(self):
        return f"reg({self.fn})"

    def _member(self, G):
        return exponent_formation_member(G, self.fn)


TRIVIAL = TrivialClass()
ABELIAN = AbelianClass()
NILPOTENT = NilpotentClass()
SOLUBLE = SolubleClass()
SUPERSOLUBLE = SupersolubleClass()
ALL_GROUPS = AllGroupsClass()
V_SUPERSOLUBLE = VSupersolubleClass()


def p_groups(p: int) -> PGroupsClass:
    return PGroupsClass(p)


def p_nilpotent(p: int) -> PNilpotentClass:
    return PNilpotentClass(p)


def soluble_pi(primes, complement: bool = False) -> SolublePiClass:
    return SolublePiClass(tuple(sorted(set(primes))), complement)


def sylow_tower(*primes: int) -> SylowTowerClass:
    return SylowTowerClass(PrimeOrdering(tuple(primes)))


def sigma(omega: Supernatural) -> ExponentBoundedClass:
    """Soluble groups of exponent dividing omega."""
    return ExponentBoundedClass(SOLUBLE, omega)


def vstar(inner: ClassSpec) -> VStarClass:
    return VStarClass(inner)


def cap(*parts: ClassSpec) -> IntersectionClass:
    return IntersectionClass(tuple(parts))


def regular_formation(fn: ExponentFunction) -> ExponentFormationClass:
    return ExponentFormationClass(fn)


# ---------------------------------------------------------------------------
# Residuals and derived membership operations


def residual(G: FiniteGroup, spec: ClassSpec) -> Subgroup:
    """Least normal subgroup with quotient in the class.

    Computed as the intersection of all normal subgroups with member quotient;
    the result's own quotient is re-checked, which catches classes that are
    not really formations.
    """
    if not spec.formation:
        raise NotAFormationWitness(
            f"residuals need a formation-flagged spec, got {spec.text()}")
    good = []
    for N in normal_subgroups(G):
        Q, _ = quotient(G, N)
        if is_member(Q, spec):
            good.append(N)
    if not good:
        raise EmptyClass(f"no quotient of {G.name} lies in {spec.text()}")
    common = set(good[0].elems)
    for N in good[1:]:
        common &= N.elem_set
    R = Subgroup(G, tuple(sorted(common)))
    Q, _ = quotient(G, R)
    if not is_member(Q, spec):
        for i, N1 in enumerate(good):
            for N2 in good[:i]:
                M = Subgroup(G, tuple(sorted(N1.elem_set & N2.elem_set)))
                QM, _ = quotient(G, M)
                if not is_member(QM, spec):
                    raise NotAFormationWitness(
                        f"{spec.text()} is not a formation: quotients by normals of "
                        f"orders {N1.order} and {N2.order} are members, "
                        f"the quotient by their intersection is not")
        raise NotAFormationWitness(
            f"{spec.text()} violates the formation law on {G.name}")
    return R


def product_member(G: FiniteGroup, inner: ClassSpec, outer: ClassSpec) -> bool:
    """Whether the `outer`-residual of G lies in `inner`."""
    return is_member(residual(G, outer).as_group(), inner)


def local_member(G: FiniteGroup, h) -> bool:
    """Local-definition membership: for every chief factor and every prime p
    dividing its order, G modulo the factor's centralizer lies in h(p)."""
    series = chief_series(G)
    for i, order in enumerate(series.factor_orders):
        Q, _ = quotient(G, series.centralizers[i])
        for p in prime_divisors(order):
            if not is_member(Q, h(p)):
                return False
    return True


def exponent_formation_member(G: FiniteGroup, fn: ExponentFunction) -> bool:
    """Membership in the soluble class defined by an exponent function:
    soluble, and for each prime p dividing |G| the residual for soluble
    groups of exponent dividing fn(p) is a p'-group.

    Primes not dividing |G| are skipped: a soluble p'-group lies in that
    factor class automatically.
    """
    if not _is_soluble(G):
        return False
    for p in prime_divisors(G.order):
        omega = fn.at(p)
        if omega.v(p) != INF:
            raise InvalidExponentFunction(
                f"exponent function must have infinite {p}-part at {p}")
        if not product_member(G, soluble_pi((p,), complement=True), sigma(omega)):
            return False
    return True


# ---------------------------------------------------------------------------
# Criticality


def _proper_subgroups_member(G: FiniteGroup, spec: ClassSpec) -> bool:
    for H in all_subgroups(G).subgroups:
        if H.is_full():
            continue
        if not is_member(H.as_group(), spec):
            return False
    return True


def is_minimal_non(G: FiniteGroup, spec: ClassSpec) -> bool:
    """G is outside the class while every proper subgroup is inside."""
    if is_member(G, spec):
        return False
    return _proper_subgroups_member(G, spec)


def is_strongly_critical(G: FiniteGroup, spec: ClassSpec) -> bool:
    """Minimal non-member whose proper quotients are all members too."""
    if not is_minimal_non(G, spec):
        return False
    for N in normal_subgroups(G):
        if N.order == 1:
            continue
        Q, _ = quotient(G, N)
        if not is_member(Q, spec):
            return False
    return True


def is_schmidt(G: FiniteGroup) -> bool:
    """Non-nilpotent with every proper subgroup nilpotent."""
    return is_minimal_non(G, NILPOTENT)


# ---------------------------------------------------------------------------
# Text syntax
#
#   spec := trivial | abelian | A | nilpotent | N | soluble | S | supersoluble
#         | U | all | vU
#         | p_groups:P | p_nilpotent:P
#         | S_pi:{P,..} | S_pi:P | S_pi':{P,..} | S_pi':P
#         | sylow_tower:P>P>..
#         | S(sn) | bounded(spec;sn)
#         | prod(spec,spec) | cap(spec,..) | vstar(spec)
#         | local(P->spec,..,default->spec) | reg(expfn)


_NAMED = {
    "trivial": TRIVIAL,
    "abelian": ABELIAN,
    "A": ABELIAN,
    "nilpotent": NILPOTENT,
    "N": NILPOTENT,
    "soluble": SOLUBLE,
    "S": SOLUBLE,
    "supersoluble": SUPERSOLUBLE,
    "U": SUPERSOLUBLE,
    "all": ALL_GROUPS,
    "vU": V_SUPERSOLUBLE,
}


def _split_args(body: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in body:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_prime(token: str, context: str) -> int:
    try:
        p = int(token)
    except ValueError:
        raise SpecSyntaxError(f"expected a prime in {context!r}") from None
    if not is_prime(p):
        raise SpecSyntaxError(f"{p} is not prime in {context!r}")
    return p


def parse_spec(text: str) -> ClassSpec:
    s = text.strip()
    if not s:
        raise SpecSyntaxError("empty class spec")
    if s in _NAMED:
        return _NAMED[s]
    if "(" in s and s.endswith(")"):
        head, _, rest = s.partition("(")
        head = head.strip()
        body = rest[:-1]
        if head == "S":
            if body.strip().startswith("omega="):
                body = body.strip()[len("omega="):]
            return sigma(parse_supernatural(body))
        if head == "bounded":
            spec_text, _, sn_text = body.rpartition(";")
            if not spec_text:
                raise SpecSyntaxError(f"bounded needs 'spec;omega' in {text!r}")
            return ExponentBoundedClass(parse_spec(spec_text), parse_supernatural(sn_text))
        if head == "prod":
            args = _split_args(body)
            if len(args) != 2:
                raise SpecSyntaxError(f"prod takes two specs in {text!r}")
            return ProductClass(parse_spec(args[0]), parse_spec(args[1]))
        if head == "cap":
            args = _split_args(body)
            if len(args) < 2:
                raise SpecSyntaxError(f"cap needs at least two specs in {text!r}")
            return IntersectionClass(tuple(parse_spec(a) for a in args))
        if head == "vstar":
            return VStarClass(parse_spec(body))
        if head == "reg":
            return ExponentFormationClass(parse_exponent_function(body))
        if head == "local":
            entries = []
            default = None
            for chunk in _split_args(body):
                lhs, sep, rhs = chunk.partition("->")
                if not sep:
                    raise SpecSyntaxError(f"missing '->' in local entry {chunk!r}")
                lhs = lhs.strip()
                inner = parse_spec(rhs)
                if lhs == "default":
                    default = inner
                else:
                    entries.append((_parse_prime(lhs, text), inner))
            if default is None:
                raise SpecSyntaxError(f"local needs a default entry in {text!r}")
            return LocalClass(tuple(sorted(entries)), default)
        raise SpecSyntaxError(f"unknown spec constructor {head!r}")
    if ":" in s:
        head, _, arg = s.partition(":")
        head = head.strip()
        arg = arg.strip()
        if head == "p_groups":
            return PGroupsClass(_parse_prime(arg, text))
        if head == "p_nilpotent":
            return PNilpotentClass(_parse_prime(arg, text))
        if head in ("S_pi", "S_pi'"):
            inner = arg[1:-1] if arg.startswith("{") and arg.endswith("}") else arg
            primes = [_parse_prime(t, text) for t in inner.split(",") if t.strip()]
            if not primes:
                raise SpecSyntaxError(f"empty prime set in {text!r}")
            return soluble_pi(primes, complement=head.endswith("'"))
        if head == "sylow_tower":
            primes = [_parse_prime(t, text) for t in arg.split(">") if t.strip()]
            return SylowTowerClass(PrimeOrdering(tuple(primes)))
        raise SpecSyntaxError(f"unknown spec family {head!r}")
    raise SpecSyntaxError(f"cannot parse class spec {text!r}")
