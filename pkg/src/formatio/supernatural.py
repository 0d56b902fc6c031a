"""Supernatural numbers, their lattice, and the exponent-function codec.

A supernatural number is a formal product over all primes with exponents in
{0, 1, 2, ...} or infinity.  Values are stored as a finite list of explicit
(prime, exponent) deviations over a default exponent (0 or infinity) that
applies to every unlisted prime, so lcm/gcd/divisibility are exact.

Exponent functions map each prime p to a supernatural number whose p-adic
value is infinite; they are stored the same way, with the convention that an
unlisted prime p maps to lcm(default, p^inf).  The codec between exponent
functions and single supernatural numbers interleaves all (p, q) positions
through a fixed pairing bijection; the encoded value is exact at every
position up to the configured horizon and exact lazily at any position via
`encode_value_at`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf as INF

from .arith import factorize, is_prime, nth_prime, prime_index
from .config import limits
from .errors import DiagonalPair, InvalidExponentFunction, SpecSyntaxError

Exponent = int | float  # a natural number or INF


def _check_exponent(e: Exponent) -> Exponent:
    if e == INF:
        return INF
    if isinstance(e, int) and e >= 0:
        return e
    raise ValueError(f"exponent must be a natural number or inf, got {e!r}")


@dataclass(frozen=True)
class Supernatural:
    """Formal product of prime powers; `default` applies to unlisted primes."""

    explicit: tuple[tuple[int, Exponent], ...] = ()
    default: Exponent = 0

    def __post_init__(self):
        if self.default not in (0, INF):
            raise ValueError("default exponent must be 0 or inf")
        last = 0
        for p, e in self.explicit:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p <= last:
                raise ValueError("explicit primes must be strictly increasing")
            last = p
            _check_exponent(e)
            if e == self.default:
                raise ValueError(f"non-canonical entry {p}^{e} equals the default")

    def v(self, p: int) -> Exponent:
        """The exponent of the prime p."""
        for q, e in self.explicit:
            if q == p:
                return e
            if q > p:
                break
        return self.default

    def is_one(self) -> bool:
        return not self.explicit and self.default == 0

    def is_full(self) -> bool:
        return not self.explicit and self.default == INF

    def __str__(self) -> str:
        return format_supernatural(self)

    __repr__ = __str__


def make_supernatural(values: dict[int, Exponent], default: Exponent = 0) -> Supernatural:
    """Canonicalize an exponent mapping into a Supernatural."""
    explicit = tuple(sorted((p, _check_exponent(e)) for p, e in values.items()
                            if e != default))
    return Supernatural(explicit, default)


ONE = Supernatural((), 0)
FULL = Supernatural((), INF)


def from_int(n: int) -> Supernatural:
    if n < 1:
        raise ValueError(f"natural numbers start at 1, got {n}")
    return make_supernatural({p: e for p, e in factorize(n).items()})


def prime_power(p: int, e: Exponent) -> Supernatural:
    return make_supernatural({p: e})


def _pointwise(a: Supernatural, b: Supernatural, pick) -> Supernatural:
    primes = {p for p, _ in a.explicit} | {p for p, _ in b.explicit}
    values = {p: pick(a.v(p), b.v(p)) for p in primes}
    return make_supernatural(values, default=pick(a.default, b.default))


def lcm(a: Supernatural, b: Supernatural) -> Supernatural:
    return _pointwise(a, b, max)


def gcd(a: Supernatural, b: Supernatural) -> Supernatural:
    return _pointwise(a, b, min)


def divides(a: Supernatural, b: Supernatural) -> bool:
    if a.default > b.default:
        return False
    primes = {p for p, _ in a.explicit} | {p for p, _ in b.explicit}
    return all(a.v(p) <= b.v(p) for p in primes)


def divides_int(n: int, omega: Supernatural) -> bool:
    """Whether the natural number n divides the supernatural number omega."""
    return all(e <= omega.v(p) for p, e in factorize(n).items())


def is_complete(omega: Supernatural) -> bool:
    """All exponents are 0 or infinity."""
    return all(e in (0, INF) for _, e in omega.explicit)


def is_natural(omega: Supernatural) -> bool:
    """Finitely many finite exponents: an ordinary natural number."""
    return omega.default == 0 and all(e != INF for _, e in omega.explicit)


def to_int(omega: Supernatural) -> int:
    if not is_natural(omega):
        raise ValueError(f"{omega} is not a natural number")
    n = 1
    for p, e in omega.explicit:
        n *= p ** int(e)
    return n


def complement(omega: Supernatural) -> Supernatural:
    """For a complete number, the complete number with 0/inf swapped."""
    if not is_complete(omega):
        raise ValueError(f"{omega} is not complete")
    flip = {0: INF, INF: 0}
    values = {p: flip[e] for p, e in omega.explicit}
    return make_supernatural(values, default=flip[omega.default])


# ---------------------------------------------------------------------------
# Pairing bijection between positive naturals and off-diagonal pairs.
#
# Pairs (a, b) with a != b are enumerated along anti-diagonals a + b = 3, 4,
# 5, ... and by increasing a within a diagonal, skipping a == b:
#   1 -> (1,2), 2 -> (2,1), 3 -> (1,3), 4 -> (3,1), 5 -> (1,4), 6 -> (2,3), ...


def _diagonal_size(s: int) -> int:
    return (s - 1) - (1 if s % 2 == 0 else 0)


def pair_components(i: int) -> tuple[int, int]:
    """The pair enumerated at index i >= 1."""
    if i < 1:
        raise ValueError(f"pair index must be >= 1, got {i}")
    s = 3
    remaining = i
    while remaining > _diagonal_size(s):
        remaining -= _diagonal_size(s)
        s += 1
    a = 0
    for cand in range(1, s):
        if 2 * cand == s:
            continue
        remaining -= 1
        if remaining == 0:
            a = cand
            break
    return a, s - a


def pair_index(n1: int, n2: int) -> int:
    """Index of the pair (n1, n2); inverse of pair_components."""
    if n1 < 1 or n2 < 1:
        raise ValueError("pair entries must be >= 1")
    if n1 == n2:
        raise DiagonalPair(f"({n1}, {n2}) lies on the diagonal")
    s = n1 + n2
    idx = sum(_diagonal_size(t) for t in range(3, s))
    for cand in range(1, s):
        if 2 * cand == s:
            continue
        idx += 1
        if cand == n1:
            return idx
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Exponent functions


@dataclass(frozen=True)
class ExponentFunction:
    """A map from primes to supernatural numbers with v_p(f(p)) infinite.

    Unlisted primes map to lcm(default, p^inf), so the infinite-p-part
    requirement holds at every prime by construction; explicit entries are
    validated.
    """

    explicit: tuple[tuple[int, Supernatural], ...] = ()
    default: Supernatural = ONE

    def __post_init__(self):
        last = 0
        for p, omega in self.explicit:
            if not is_prime(p):
                raise InvalidExponentFunction(f"{p} is not prime")
            if p <= last:
                raise InvalidExponentFunction("explicit primes must be strictly increasing")
            last = p
            if omega.v(p) != INF:
                raise InvalidExponentFunction(
                    f"value at {p} must have infinite {p}-part, got {omega}")

    def at(self, p: int) -> Supernatural:
        for q, omega in self.explicit:
            if q == p:
                return omega
            if q > p:
                break
        return lcm(self.default, prime_power(p, INF))

    def __str__(self) -> str:
        return format_exponent_function(self)

    __repr__ = __str__


def make_exponent_function(values: dict[int, Supernatural],
                           default: Supernatural = ONE) -> ExponentFunction:
    explicit = tuple(sorted(values.items()))
    return ExponentFunction(explicit, default)


def ef_join(f1: ExponentFunction, f2: ExponentFunction) -> ExponentFunction:
    primes = {p for p, _ in f1.explicit} | {p for p, _ in f2.explicit}
    values = {p: lcm(f1.at(p), f2.at(p)) for p in primes}
    return make_exponent_function(values, default=lcm(f1.default, f2.default))


def ef_meet(f1: ExponentFunction, f2: ExponentFunction) -> ExponentFunction:
    primes = {p for p, _ in f1.explicit} | {p for p, _ in f2.explicit}
    values = {p: gcd(f1.at(p), f2.at(p)) for p in primes}
    return make_exponent_function(values, default=gcd(f1.default, f2.default))


def encode_value_at(f: ExponentFunction, i: int) -> Exponent:
    """Exact exponent of the i-th prime in the encoding of f, any i >= 1."""
    k, j = pair_components(i)
    return f.at(nth_prime(k)).v(nth_prime(j))


def encode_function(f: ExponentFunction, horizon: int | None = None) -> Supernatural:
    """Interleave all values of f into one supernatural number.

    Position i carries the q-adic value of f(r) where (index of r, index of q)
    is the i-th off-diagonal pair.  Exact on the first `horizon` primes; the
    tail is represented by the generic default (exact whenever all of f's
    deviations pair into positions below the horizon).
    """
    h = horizon if horizon is not None else limits.prime_horizon
    tail_default = f.default.default
    values: dict[int, Exponent] = {}
    for i in range(1, h + 1):
        e = encode_value_at(f, i)
        if e != tail_default:
            values[nth_prime(i)] = e
    return make_supernatural(values, default=tail_default)


def decode_supernatural(omega: Supernatural) -> ExponentFunction:
    """The exponent function whose encoding is omega (exactly)."""
    deviations: dict[int, dict[int, Exponent]] = {}
    for p, e in omega.explicit:
        k, j = pair_components(prime_index(p))
        deviations.setdefault(k, {})[j] = e
    values: dict[int, Supernatural] = {}
    for k, per_prime in deviations.items():
        pk = nth_prime(k)
        entry = {nth_prime(j): e for j, e in per_prime.items()}
        entry[pk] = INF
        values[pk] = make_supernatural(entry, default=omega.default)
    return make_exponent_function(values, default=Supernatural((), omega.default))


# ---------------------------------------------------------------------------
# Text syntax
#
#   supernatural   ::= "1" | "full" | INT | factors [";default=" ("0"|"inf")]
#   factors        ::= prime ["^" (INT|"inf")] ("*" factors)*
#   exponent fn    ::= entry ("," entry)*   with  entry ::= prime "->" sn
#                      and an optional "default->" sn entry


def format_supernatural(omega: Supernatural) -> str:
    if omega.is_one():
        return "1"
    if omega.is_full():
        return "full"
    if is_natural(omega):
        return str(to_int(omega))
    parts = []
    for p, e in omega.explicit:
        if e == 1:
            parts.append(str(p))
        elif e == INF:
            parts.append(f"{p}^inf")
        else:
            parts.append(f"{p}^{e}")
    body = "*".join(parts)
    if omega.default == INF:
        return f"{body};default=inf"
    return body


def parse_supernatural(text: str) -> Supernatural:
    s = text.strip().replace(" ", "")
    if not s:
        raise SpecSyntaxError("empty supernatural literal")
    if s == "full":
        return FULL
    default: Exponent = 0
    if ";" in s:
        body, _, suffix = s.partition(";")
        if suffix == "default=inf":
            default = INF
        elif suffix == "default=0":
            default = 0
        else:
            raise SpecSyntaxError(f"bad supernatural suffix {suffix!r}")
        s = body
    if "^" not in s and "*" not in s:
        try:
            n = int(s)
        except ValueError:
            raise SpecSyntaxError(f"bad supernatural literal {text!r}") from None
        base = from_int(n)
        return Supernatural(base.explicit, default)
    values: dict[int, Exponent] = {}
    for factor in s.split("*"):
        base, caret, exp = factor.partition("^")
        try:
            p = int(base)
        except ValueError:
            raise SpecSyntaxError(f"bad prime {base!r} in {text!r}") from None
        if not is_prime(p):
            raise SpecSyntaxError(f"{p} is not prime in {text!r}")
        if p in values:
            raise SpecSyntaxError(f"prime {p} repeated in {text!r}")
        if caret and not exp:
            raise SpecSyntaxError(f"dangling '^' in {text!r}")
        if not exp:
            e: Exponent = 1
        elif exp == "inf":
            e = INF
        else:
            try:
                e = int(exp)
            except ValueError:
                raise SpecSyntaxError(f"bad exponent {exp!r} in {text!r}") from None
            if e < 0:
                raise SpecSyntaxError(f"negative exponent in {text!r}")
        values[p] = e
    return make_supernatural(values, default=default)


def format_exponent_function(f: ExponentFunction) -> str:
    parts = [f"{p}->{format_supernatural(omega)}" for p, omega in f.explicit]
    parts.append(f"default->{format_supernatural(f.default)}")
    return ",".join(parts)


def parse_exponent_function(text: str) -> ExponentFunction:
    s = text.strip()
    if s.startswith("f:"):
        s = s[2:]
    values: dict[int, Supernatural] = {}
    default = ONE
    seen_default = False
    for chunk in s.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lhs, sep, rhs = chunk.partition("->")
        if not sep:
            raise SpecSyntaxError(f"missing '->' in entry {chunk!r}")
        lhs = lhs.strip()
        omega = parse_supernatural(rhs)
        if lhs == "default":
            default = omega
            seen_default = True
            continue
        try:
            p = int(lhs)
        except ValueError:
            raise SpecSyntaxError(f"bad prime {lhs!r} in exponent function") from None
        if p in values:
            raise SpecSyntaxError(f"prime {p} repeated in exponent function")
        values[p] = omega
    if not values and not seen_default:
        raise SpecSyntaxError(f"empty exponent function literal {text!r}")
    return make_exponent_function(values, default=default)
