"""Closed-form Witt classes of 3- and 4-stranded pretzel knots P(p_1, ..., p_n)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .unknotting import common_witness, u1_obstruction, CaseResult
from .witt import DiagonalForm, separating_primes


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class PretzelParams:
    strands: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(p) for p in self.strands)
        object.__setattr__(self, "strands", s)
        if len(s) < 3 or any(p == 0 for p in s):
            raise ValueError("a pretzel knot needs at least 3 nonzero twist parameters")
        evens = sum(1 for p in s if p % 2 == 0)
        if evens > 1:
            raise ValueError("at most one twist parameter may be even")
        if len(s) % 2 == 0 and evens != 1:
            raise ValueError("with an even number of strands exactly one parameter is even")

    def with_even_last(self) -> tuple[int, ...]:
        """Cyclic rotation moving the even parameter (if any) to the last slot."""
        s = self.strands
        for i, p in enumerate(s):
            if p % 2 == 0:
                return s[i + 1:] + s[:i + 1]
        return s


@dataclass(frozen=True)
class PretzelInvariants:
    form: DiagonalForm
    signature: int
    signed_det: int

    @property
    def det(self) -> int:
        return abs(self.signed_det)


def signed_det(strands: Sequence[int]) -> int:
    """Sum over i of the product of all p_j with j != i."""
    return sum(prod(p for j, p in enumerate(strands) if j != i) for i in range(len(strands)))


def signed_det_3(p1: int, p2: int, p3: int) -> int:
    PretzelParams((p1, p2, p3))
    return p1 * p2 + p1 * p3 + p2 * p3


def signed_det_4(p1: int, p2: int, p3: int, p4: int) -> int:
    PretzelParams((p1, p2, p3, p4))
    return p1 * p2 * p3 + p1 * p2 * p4 + p1 * p3 * p4 + p2 * p3 * p4


def telescope_sum(n: int, eps: int) -> DiagonalForm:
    """(+)_{k=1}^{n-1} <-eps k(k+1)>."""
    return DiagonalForm(-eps * k * (k + 1) for k in range(1, n))


def telescope_simplify(n: int, eps: int) -> DiagonalForm:
    """<eps n> (+) n<-eps>, which equals telescope_sum(n, eps) in W(Q)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    return DiagonalForm((eps * n,) + (-eps,) * n)


def pretzel3_class(p1: int, p2: int, p3: int) -> PretzelInvariants:
    p1, p2, p3 = PretzelParams((p1, p2, p3)).with_even_last()
    if p3 % 2:
        raise ValueError("closed form needs one even parameter")
    det = p1 * p2 + p1 * p3 + p2 * p3
    if p1 + p2 == 0:
        return PretzelInvariants(DiagonalForm(), 0, det)
    form = DiagonalForm()
    for p in (p1, p2):
        form = form + telescope_sum(abs(p), _sign(p))
    s12 = Fraction(p1 + p2, p1 * p2)
    tail = Fraction(det, p1 + p2)
    form = form + DiagonalForm.of(-s12, tail)
    sigma = (_sign(p1) + _sign(p2)) - (p1 + p2) - _sign(s12) + _sign(tail)
    return PretzelInvariants(form, sigma, det)


def pretzel4_class(p1: int, p2: int, p3: int, p4: int) -> PretzelInvariants:
    ps = PretzelParams((p1, p2, p3, p4)).with_even_last()
    det = signed_det(ps)
    if det == 0:
        raise ValueError("determinant zero")
    form = DiagonalForm()
    for p in ps:
        form = form + DiagonalForm((p,) + (-_sign(p),) * abs(p))
    form = form + DiagonalForm.of(Fraction(-det, prod(ps)))
    sigma = sum(_sign(p) - p for p in ps) - _sign(prod(ps) * det)
    return PretzelInvariants(form, sigma, det)


def pretzel_class(strands: Sequence[int]) -> PretzelInvariants:
    n = len(strands)
    if n == 3:
        return pretzel3_class(*strands)
    if n == 4:
        return pretzel4_class(*strands)
    raise ValueError("closed forms are available for 3 and 4 strands only")


@dataclass(frozen=True)
class PretzelCheck:
    obstructed: bool
    lhs: DiagonalForm
    rhs: DiagonalForm
    separating: dict

    @property
    def witness(self) -> Optional[int]:
        if not self.obstructed:
            return None
        return common_witness([CaseResult("excluded", "witt class", self.rhs, self.separating)])


def _check(lhs: DiagonalForm, rhs: DiagonalForm) -> PretzelCheck:
    if lhs == rhs:
        return PretzelCheck(False, lhs, rhs, {})
    return PretzelCheck(True, lhs, rhs, separating_primes(lhs, rhs))


def check_pretzel1(p1: int, p3: int) -> PretzelCheck:
    """Obstruct u(P(p1, 4 - p1, p3)) = 1 for odd p1 >= 7 and even p3."""
    if p1 < 7 or p1 % 2 == 0:
        raise ValueError("p1 must be odd and at least 7")
    if p3 % 2 or 4 * p3 <= -p1 * (4 - p1):
        raise ValueError("p3 must be even with p3 > -p1(4 - p1)/4")
    D = 4 * p3 - p1 * (p1 - 4)
    return _check(DiagonalForm.of(-1, -2, D), DiagonalForm.of(-2 * D))


def pretzel2_form(p: int) -> DiagonalForm:
    """phi(P(p, p, p, -3p - 1)) as a six-term diagonal."""
    return DiagonalForm.of(1, p, p, p, -3 * p - 1, Fraction(-(8 * p + 3), p * (3 * p + 1)))


def check_pretzel2(p: int) -> PretzelCheck:
    """Obstruct u(P(p, p, p, -3p - 1)) = 1 for odd p > 0."""
    if p <= 0 or p % 2 == 0:
        raise ValueError("p must be odd and positive")
    return _check(pretzel2_form(p), DiagonalForm.of(2, 2 * (8 * p + 3)))


def upward_stabilize(params: PretzelParams, p: int, pos1: int, pos2: int) -> PretzelParams:
    """Insert p before index pos1 and -p before index pos2 of the original strands."""
    if p % 2 == 0:
        raise ValueError("the inserted parameter must be odd")
    n = len(params.strands)
    if not 0 <= pos1 < pos2 <= n:
        raise ValueError("need 0 <= pos1 < pos2 <= number of strands")
    s = list(params.strands)
    return PretzelParams(tuple(s[:pos1] + [p] + s[pos1:pos2] + [-p] + s[pos2:]))


def u1_verdict(inv: PretzelInvariants):
    return u1_obstruction(inv.form, inv.det, inv.signature)
