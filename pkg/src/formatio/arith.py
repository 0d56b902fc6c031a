"""Small integer arithmetic helpers: primes, factorization, lcm."""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def first_primes(k: int) -> tuple[int, ...]:
    """The first k primes in increasing order."""
    primes: list[int] = []
    n = 2
    while len(primes) < k:
        if is_prime(n):
            primes.append(n)
        n += 1
    return tuple(primes)


def nth_prime(i: int) -> int:
    """The i-th prime, 1-indexed (nth_prime(1) == 2)."""
    if i < 1:
        raise ValueError(f"prime index must be >= 1, got {i}")
    return first_primes(i)[-1]


@lru_cache(maxsize=None)
def prime_index(p: int) -> int:
    """Position of the prime p in the increasing enumeration, 1-indexed."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    i = 1
    while nth_prime(i) != p:
        i += 1
    return i


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: multiplicity}."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n)))


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n; requires gcd(a, n) == 1."""
    import math

    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    x = a % n
    k = 1
    while x != 1 % n:
        x = (x * a) % n
        k += 1
    return k


def lcm_ints(values) -> int:
    import math

    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
