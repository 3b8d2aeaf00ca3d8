"""The Witt ring W(Q) of the rationals and the finite-field rings W(Z_p).

Forms are kept diagonal, as ordered lists of nonzero rationals.  Equality in
W(Q) is decided through the complete invariant

    sigma (+) sum_p d_p : W(Q) -> Z (+) (+)_p W(Z_p)

where d_p is the second residue homomorphism at p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .arith import factorize, is_prime, is_square_mod, squarefree_part

Rational = Union[int, Fraction, str]

INFINITE = math.inf


def as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def canonical_gen(a: Rational) -> int:
    """Square-free integer s with <a> = <s>, i.e. a = s * d**2.

    >>> canonical_gen(Fraction(-23, 9))
    -23
    """
    a = as_fraction(a)
    if a == 0:
        raise ValueError("<0> is not a generator of W(Q)")
    # a = n/d = n*d / d**2
    return squarefree_part(a.numerator * a.denominator)


def valuation(a: Fraction, p: int) -> tuple[int, Fraction]:
    """Write a = p**ell * beta with beta a p-adic unit; return (ell, beta)."""
    num, den, ell = a.numerator, a.denominator, 0
    while num % p == 0:
        num //= p
        ell += 1
    while den % p == 0:
        den //= p
        ell -= 1
    return ell, Fraction(num, den)


@dataclass(frozen=True)
class LocalClass:
    """An element of W(Z_p) in canonical coordinates.

    ``value`` depends on p mod 4:

    * p = 2: parity of the number of <1> summands (W(Z_2) = Z/2);
    * p = 1 mod 4: pair (square count mod 2, nonsquare count mod 2);
    * p = 3 mod 4: element of Z/4 generated by <1>, where <nonsquare> = 3.
    """

    prime: int
    value: Union[int, tuple[int, int]]

    @classmethod
    def zero(cls, p: int) -> LocalClass:
        return cls(p, (0, 0) if p % 4 == 1 else 0)

    @classmethod
    def of(cls, p: int, residue: int) -> LocalClass:
        """Class of the one-dimensional form <residue> over Z_p."""
        square = is_square_mod(residue, p)
        if p == 2:
            return cls(2, 1)
        if p % 4 == 1:
            return cls(p, (1, 0) if square else (0, 1))
        return cls(p, 1 if square else 3)

    def _check(self, other: LocalClass) -> None:
        if other.prime != self.prime:
            raise ValueError(f"W(Z_{self.prime}) and W(Z_{other.prime}) do not mix")

    def __add__(self, other: LocalClass) -> LocalClass:
        self._check(other)
        p = self.prime
        if p == 2:
            return LocalClass(2, (self.value + other.value) % 2)
        if p % 4 == 1:
            (a, b), (c, d) = self.value, other.value
            return LocalClass(p, ((a + c) % 2, (b + d) % 2))
        return LocalClass(p, (self.value + other.value) % 4)

    def __neg__(self) -> LocalClass:
        if self.prime % 4 == 3:
            return LocalClass(self.prime, -self.value % 4)
        return self

    def __sub__(self, other: LocalClass) -> LocalClass:
        return self + (-other)

    def is_zero(self) -> bool:
        return self == LocalClass.zero(self.prime)

    def order(self) -> int:
        if self.is_zero():
            return 1
        if self.prime % 4 == 3 and self.value % 2 == 1:
            return 4
        return 2

    def residues(self) -> list[int]:
        """A shortest list of residues r_i with this class = (+) <r_i>."""
        p = self.prime
        nonsquare = next(r for r in range(2, p) if not is_square_mod(r, p)) if p > 2 else None
        if p == 2:
            return [1] * self.value
        if p % 4 == 1:
            a, b = self.value
            return [1] * a + [nonsquare] * b
        return {0: [], 1: [1], 2: [1, 1], 3: [nonsquare]}[self.value]

    def __str__(self) -> str:
        gens = " + ".join(f"<{r}>" for r in self.residues()) or "0"
        return f"{gens} in W(Z_{self.prime})"


@dataclass(frozen=True)
class WittInvariant:
    """Signature plus the nonzero second residues, sorted by prime."""

    signature: int
    locals: tuple[LocalClass, ...] = ()

    def local(self, p: int) -> LocalClass:
        for c in self.locals:
            if c.prime == p:
                return c
        return LocalClass.zero(p)

    def primes(self) -> list[int]:
        return [c.prime for c in self.locals]

    def __add__(self, other: WittInvariant) -> WittInvariant:
        primes = sorted(set(self.primes()) | set(other.primes()))
        classes = (self.local(p) + other.local(p) for p in primes)
        return WittInvariant(self.signature + other.signature,
                             tuple(c for c in classes if not c.is_zero()))

    def __neg__(self) -> WittInvariant:
        return WittInvariant(-self.signature, tuple(-c for c in self.locals))


class DiagonalForm:
    """The form <a_1> (+) ... (+) <a_n> over Q.

    Entry order is preserved.  ``==`` is equality in W(Q), not entrywise;
    compare ``.entries`` for the latter.
    """

    __slots__ = ("entries", "_inv")

    def __init__(self, entries: Iterable[Rational] = ()):
        ents = tuple(as_fraction(a) for a in entries)
        if any(a == 0 for a in ents):
            raise ValueError("diagonal entries must be nonzero")
        self.entries = ents
        self._inv = None

    @classmethod
    def of(cls, *entries: Rational) -> DiagonalForm:
        return cls(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: DiagonalForm) -> DiagonalForm:
        return DiagonalForm(self.entries + other.entries)

    def __neg__(self) -> DiagonalForm:
        return DiagonalForm(-a for a in self.entries)

    def __sub__(self, other: DiagonalForm) -> DiagonalForm:
        return self + (-other)

    def __rmul__(self, n: int) -> DiagonalForm:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return DiagonalForm(self.entries * n)

    def signature(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.entries)

    def invariant(self) -> WittInvariant:
        if self._inv is None:
            self._inv = witt_invariant(self)
        return self._inv

    def canonical(self) -> DiagonalForm:
        return DiagonalForm(canonical_gen(a) for a in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagonalForm):
            return NotImplemented
        return self.invariant() == other.invariant()

    def __hash__(self) -> int:
        return hash(self.invariant())

    def __repr__(self) -> str:
        return f"DiagonalForm([{', '.join(str(a) for a in self.entries)}])"

    def __str__(self) -> str:
        return " + ".join(f"<{a}>" for a in self.entries) or "0"


ZERO = DiagonalForm()


def direct_sum(f: DiagonalForm, g: DiagonalForm) -> DiagonalForm:
    return f + g


def negate(f: DiagonalForm) -> DiagonalForm:
    return -f


def tensor_gen(a: Rational, b: Rational) -> DiagonalForm:
    """<a> (x) <b> = <ab>."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("<0> is not a generator of W(Q)")
    return DiagonalForm.of(a * b)


def signature(f: DiagonalForm) -> int:
    return f.signature()


def boundary_p(f: DiagonalForm, p: int) -> LocalClass:
    """Second residue homomorphism d_p : W(Q) -> W(Z_p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = LocalClass.zero(p)
    for a in f.entries:
        ell, beta = valuation(a, p)
        if ell % 2:
            residue = beta.numerator * pow(beta.denominator, -1, p) % p
            out = out + LocalClass.of(p, residue)
    return out


def support_primes(f: DiagonalForm) -> list[int]:
    """Primes occurring to an odd power in some entry."""
    primes: set[int] = set()
    for a in f.entries:
        primes.update(factorize(a.numerator).odd_primes())
        primes.update(factorize(a.denominator).odd_primes())
    return sorted(primes)


def witt_invariant(f: DiagonalForm) -> WittInvariant:
    classes = (boundary_p(f, p) for p in support_primes(f))
    return WittInvariant(f.signature(), tuple(c for c in classes if not c.is_zero()))


def is_equal(f: DiagonalForm, g: DiagonalForm) -> bool:
    return witt_invariant(f) == witt_invariant(g)


def torsion_order(f: DiagonalForm):
    """Additive order of f in W(Q): 1, 2, 4 or ``INFINITE``."""
    inv = witt_invariant(f)
    if inv.signature != 0:
        return INFINITE
    return math.lcm(1, *(c.order() for c in inv.locals))


def separating_primes(f: DiagonalForm, g: DiagonalForm) -> dict[int, tuple[LocalClass, LocalClass]]:
    """Primes p with d_p(f) != d_p(g), mapped to the pair of classes."""
    fi, gi = witt_invariant(f), witt_invariant(g)
    out = {}
    for p in sorted(set(fi.primes()) | set(gi.primes())):
        a, b = fi.local(p), gi.local(p)
        if a != b:
            out[p] = (a, b)
    return out
