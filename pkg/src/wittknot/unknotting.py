"""Crossing-change obstructions to unknotting number 1, 2 and n."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .witt import DiagonalForm, LocalClass, separating_primes

CONSISTENT = "consistent"
EXCLUDED = "excluded"


@dataclass(frozen=True)
class CrossingContext:
    """Determinants and signatures of K_- and K_+ = K_- after a positive change."""

    det_minus: int
    det_plus: int
    sig_minus: int
    sig_plus: int

    def __post_init__(self):
        for d in (self.det_minus, self.det_plus):
            if d <= 0 or d % 2 == 0:
                raise ValueError(f"knot determinants are positive and odd, got {d}")
        if self.sig_minus % 2 or self.sig_plus % 2:
            raise ValueError("knot signatures are even")
        if self.sig_plus - self.sig_minus not in (0, -2):
            raise ValueError("impossible signature jump: a positive crossing change "
                             "lowers the signature by 0 or 2")

    @property
    def signature_drops(self) -> bool:
        return self.sig_plus == self.sig_minus - 2


def crossing_change_image(phi: DiagonalForm, ctx: CrossingContext,
                          inverse: bool = False) -> DiagonalForm:
    """phi(K_+) from phi = phi(K_-); with ``inverse``, phi(K_-) from phi = phi(K_+)."""
    b, c = ctx.det_minus, ctx.det_plus
    if not inverse:
        sign = -1 if ctx.signature_drops else 1
        return phi + DiagonalForm.of(Fraction(2 * sign * c, b), -2)
    sign = 1 if ctx.signature_drops else -1
    return phi + DiagonalForm.of(Fraction(2 * sign * b, c), 2)


def solve_a(ctx: CrossingContext) -> Fraction:
    """The rational a with phi(K_+) = phi(K_-) + <-1/a> + <a-2>."""
    b, c = ctx.det_minus, ctx.det_plus
    if ctx.signature_drops:
        return Fraction(2 * b, b + c)
    if b == c:
        raise ValueError("a undefined: equal determinants with equal signatures")
    return Fraction(2 * b, b - c)


def crossing_change_pair(a: Fraction) -> DiagonalForm:
    """<-1/a> (+) <a - 2>, the summand a crossing change adds to phi(K_-)."""
    return DiagonalForm.of(-1 / Fraction(a), Fraction(a) - 2)


@dataclass(frozen=True)
class CaseResult:
    status: str
    reason: str = ""  # "signature" or "witt class" when excluded
    target: Optional[DiagonalForm] = None
    separating: dict[int, tuple[LocalClass, LocalClass]] = field(default_factory=dict)

    @property
    def excluded(self) -> bool:
        return self.status == EXCLUDED


def _compare(phi: DiagonalForm, target: DiagonalForm) -> CaseResult:
    if phi == target:
        return CaseResult(CONSISTENT, target=target)
    sep = separating_primes(phi, target)
    reason = "signature" if phi.signature() != target.signature() and not sep else "witt class"
    return CaseResult(EXCLUDED, reason, target, sep)


def common_witness(cases: Iterable[CaseResult]) -> Optional[int]:
    """Largest prime separating phi from the target in every Witt-excluded case."""
    sets = [set(c.separating) for c in cases if c.excluded and c.reason == "witt class"]
    if not sets:
        return None
    common = set.intersection(*sets)
    return max(common) if common else None


@dataclass(frozen=True)
class ObstructionVerdict:
    positive: CaseResult
    negative: CaseResult

    @property
    def obstructed(self) -> bool:
        return self.positive.excluded and self.negative.excluded

    @property
    def witness(self) -> Optional[int]:
        return common_witness((self.positive, self.negative))

    def classification(self) -> str:
        if self.obstructed:
            return "a"
        if self.negative.excluded and self.negative.reason == "witt class":
            return "b"
        if self.positive.excluded and self.positive.reason == "witt class":
            return "c"
        return ""


_SIGNATURE_EXCLUDED = CaseResult(EXCLUDED, "signature")


def u1_targets(det: int, sigma: int) -> dict[str, Optional[DiagonalForm]]:
    """The forms phi(K) must equal if K unknots with one positive/negative change."""
    pos = {2: DiagonalForm.of(2 * det, 2), 0: DiagonalForm.of(-2 * det, 2)}.get(sigma)
    neg = {0: DiagonalForm.of(2 * det, -2), -2: DiagonalForm.of(-2 * det, -2)}.get(sigma)
    return {"positive": pos, "negative": neg}


def u1_obstruction(phi: DiagonalForm, det: int, sigma: int) -> ObstructionVerdict:
    if det <= 0 or det % 2 == 0:
        raise ValueError(f"knot determinant must be positive and odd, got {det}")
    if sigma % 2:
        raise ValueError("knot signatures are even")
    if phi.signature() != sigma:
        raise ValueError(f"form has signature {phi.signature()}, not {sigma}")
    targets = u1_targets(det, sigma)
    cases = {k: (_compare(phi, t) if t is not None else _SIGNATURE_EXCLUDED)
             for k, t in targets.items()}
    return ObstructionVerdict(cases["positive"], cases["negative"])


# Rows of the unknotting-number-two table.  Each row: crossing types, sigma(K),
# sign choice, coefficient signs (s1, s2, extra) of
# <s1*2*detK*detL> + <s2*2*detL> + extra, and the signatures L may have.
NEG_NEG, POS_NEG, POS_POS = "neg-neg", "pos-neg", "pos-pos"
U2_CASES = (NEG_NEG, POS_NEG, POS_POS)

_U2_ROWS = {
    (NEG_NEG, -4, None): ((-1, -1, (-1, -1)), (-2,)),
    (NEG_NEG, -2, "+"): ((1, -1, (-1, -1)), (-2,)),
    (NEG_NEG, -2, "-"): ((-1, 1, (-1, -1)), (0,)),
    (NEG_NEG, 0, None): ((1, 1, (-1, -1)), (0,)),
    (POS_NEG, -2, None): ((-1, -1, ()), (-2, 0)),
    (POS_NEG, 0, "+"): ((1, -1, ()), (2, 0)),
    (POS_NEG, 0, "-"): ((-1, 1, ()), (0, -2)),
    (POS_POS, 0, None): ((-1, -1, (1, 1)), (0,)),
}


def u2_rows(sigma_K: int) -> list[tuple[str, Optional[str]]]:
    return [(case, sc) for (case, s, sc) in _U2_ROWS if s == sigma_K]


def u2_target_forms(det_K: int, det_L: int, sigma_K: int, case: str,
                    sign_choice: Optional[str] = None) -> DiagonalForm:
    if case not in U2_CASES:
        raise ValueError(f"unknown case {case!r}")
    choices = [sc for (c, s, sc) in _U2_ROWS if c == case and s == sigma_K]
    if not choices:
        raise ValueError(f"case {case} does not occur with signature {sigma_K}")
    if None in choices:
        sign_choice = None
    elif sign_choice not in choices:
        raise ValueError(f"case {case}, signature {sigma_K} needs sign_choice '+' or '-'")
    (s1, s2, extra), _ = _U2_ROWS[(case, sigma_K, sign_choice)]
    return DiagonalForm((s1 * 2 * det_K * det_L, s2 * 2 * det_L) + extra)


def u2_matches(phi: DiagonalForm, det_K: int, sigma_K: int, d: int) -> list[tuple[str, Optional[str], tuple[int, ...]]]:
    """Rows (case, sign choice, allowed sigma(L)) satisfied with det L = d."""
    out = []
    for case, sc in u2_rows(sigma_K):
        if phi == u2_target_forms(det_K, d, sigma_K, case, sc):
            out.append((case, sc, _U2_ROWS[(case, sigma_K, sc)][1]))
    return out


def u2_candidate_filter(phi: DiagonalForm, det_K: int, sigma_K: int,
                        d_values: Iterable[int]) -> list[int]:
    if sigma_K > 0:
        raise ValueError("normalize to sigma(K) <= 0 by mirroring first")
    return [d for d in d_values if u2_matches(phi, det_K, sigma_K, d)]


def chain_form(dets: Sequence[int]) -> DiagonalForm:
    """(+)_i <-2 det L_{i+1} det L_i> + <-2> along K = L_1, ..., L_{n+1} = unknot."""
    if len(dets) < 2:
        raise ValueError("need at least the knot and the unknot")
    if dets[-1] != 1:
        raise ValueError("the last knot in the chain must be the unknot (det 1)")
    out = DiagonalForm()
    for a, b in zip(dets, dets[1:]):
        out = out + DiagonalForm.of(-2 * a * b, -2)
    return out


def signature_lower_bound(sigma: int) -> int:
    if sigma % 2:
        raise ValueError("knot signatures are even")
    return abs(sigma) // 2


@dataclass(frozen=True)
class LensSurgeryDescription:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"L({self.p},{self.q}) needs gcd(p, q) = 1")


def lickorish_solutions(lens: LensSurgeryDescription, det: int) -> list[tuple[int, int]]:
    """All (t, sign) with q = sign * 2 t^2 mod det and 0 <= t <= det/2."""
    if abs(lens.p) != det:
        raise ValueError(f"|p| = {abs(lens.p)} differs from det = {det}")
    # t and det - t give the same square
    return [(t, s) for t in range(det // 2 + 1) for s in (1, -1)
            if (lens.q - s * 2 * t * t) % det == 0]


def lickorish_solvable(lens: LensSurgeryDescription, det: int) -> bool:
    return bool(lickorish_solutions(lens, det))
