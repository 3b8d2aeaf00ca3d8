"""Integer plumbing: primality, factorization and quadratic residues."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin for n < 3.3e24 with these bases.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's variant)."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors.items():
            out *= p**e
        return out

    def odd_primes(self) -> list[int]:
        """Primes (including 2) that occur to an odd power."""
        return sorted(p for p, e in self.factors.items() if e % 2)


def _factor_positive(n: int, acc: dict[int, int]) -> None:
    p = 2
    while p * p <= n and p < TRIAL_LIMIT:
        while n % p == 0:
            acc[p] = acc.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n == 1:
        return
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            acc[m] = acc.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    _factor_positive(n, acc)
    return tuple(sorted(acc.items()))


def factorize(n: int) -> Factorization:
    """Exact prime factorization of a nonzero integer.

    >>> factorize(-246)
    Factorization(sign=-1, factors={2: 1, 3: 1, 41: 1})
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    return Factorization(1 if n > 0 else -1, dict(_factor_cached(abs(n))))


def is_square_mod(a: int, p: int) -> bool:
    """Euler's criterion. ``p`` must be prime and must not divide ``a``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a %= p
    if a == 0:
        raise ValueError(f"{p} divides the residue")
    if p == 2:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def squarefree_part(n: int) -> int:
    """Signed square-free kernel of a nonzero integer."""
    f = factorize(n)
    out = f.sign
    for p in f.odd_primes():
        out *= p
    return out
