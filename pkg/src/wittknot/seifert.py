"""Seifert matrices, their symmetrizations, and in-order diagonalization."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .witt import DiagonalForm, Rational, as_fraction

Matrix = list[list[Fraction]]


class SeifertMatrixError(ValueError):
    pass


class DegenerateFormError(ValueError):
    pass


class SeifertValidationWarning(UserWarning):
    pass


def _square(rows: Sequence[Sequence[Rational]]) -> Matrix:
    m = [[as_fraction(x) for x in row] for row in rows]
    if any(len(row) != len(m) for row in m):
        raise SeifertMatrixError("matrix is not square")
    return m


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = _square(rows)
    n = len(m)
    if n == 0:
        return Fraction(1)
    # clear denominators so Bareiss stays in Z
    scale = Fraction(1)
    a = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        scale /= den
        a.append([int(x * den) for x in row])
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer matrix of linking numbers lk(e_i, e_j^+) on a Seifert surface.

    With ``strict=True`` a violation of det(V - V^T) = 1 raises; otherwise it
    only warns, so partially symmetrized input can still be used.
    """

    V: tuple[tuple[int, ...], ...]
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.V)
        object.__setattr__(self, "V", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SeifertMatrixError("Seifert matrix is not square")
        if n % 2:
            raise SeifertMatrixError(f"Seifert matrix has odd dimension {n}")
        d = determinant(self.skew())
        if d != 1:
            msg = f"det(V - V^T) = {d}, expected 1"
            if self.strict:
                raise SeifertMatrixError(msg)
            warnings.warn(msg, SeifertValidationWarning, stacklevel=3)

    @classmethod
    def from_symmetric(cls, Q: Sequence[Sequence[int]], strict: bool = False) -> SeifertMatrix:
        """Lower-triangular V with V + V^T = Q (Q needs an even diagonal)."""
        n = len(Q)
        V = [[0] * n for _ in range(n)]
        for i in range(n):
            if Q[i][i] % 2:
                raise SeifertMatrixError("symmetric input needs an even diagonal")
            V[i][i] = Q[i][i] // 2
            for j in range(i):
                if Q[i][j] != Q[j][i]:
                    raise SeifertMatrixError("input matrix is not symmetric")
                V[i][j] = Q[i][j]
        with warnings.catch_warnings():
            if not strict:
                warnings.simplefilter("ignore", SeifertValidationWarning)
            return cls(tuple(map(tuple, V)), strict=strict)

    @property
    def dim(self) -> int:
        return len(self.V)

    def skew(self) -> list[list[int]]:
        n = self.dim
        return [[self.V[i][j] - self.V[j][i] for j in range(n)] for i in range(n)]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.V]


def symmetrize(V: SeifertMatrix) -> Matrix:
    """Q = V + V^T; raises if Q is degenerate."""
    n = V.dim
    Q = [[Fraction(V.V[i][j] + V.V[j][i]) for j in range(n)] for i in range(n)]
    if determinant(Q) == 0:
        raise DegenerateFormError("symmetrized form degenerate")
    return Q


@dataclass(frozen=True)
class GramSchmidtResult:
    form: DiagonalForm
    # Pairing <f, g> of every hyperbolic plane split off, in order.
    hyperbolic_pairings: tuple[Fraction, ...] = ()

    @property
    def splits(self) -> int:
        return len(self.hyperbolic_pairings)


def gram_schmidt(Q: Sequence[Sequence[Rational]]) -> GramSchmidtResult:
    """Congruence-diagonalize a symmetric non-degenerate rational matrix.

    Basis vectors are processed strictly in index order, without pivoting.
    Each step works on the Gram matrix of the vectors not yet processed,
    already projected orthogonally to everything split off so far.  A
    nonzero leading pivot is emitted as a diagonal entry.  A zero pivot is
    paired with the lowest-index remaining vector it pairs nontrivially
    with; that plane is hyperbolic and is split off without contributing
    any entry.
    """
    M = _square(Q)
    n = len(M)
    for i in range(n):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise ValueError("matrix is not symmetric")
    diag: list[Fraction] = []
    pairings: list[Fraction] = []
    while M:
        a = M[0][0]
        if a != 0:
            diag.append(a)
            col = [M[i][0] for i in range(1, len(M))]
            M = [[M[i][j] - col[i - 1] * col[j - 1] / a for j in range(1, len(M))]
                 for i in range(1, len(M))]
            continue
        j = next((k for k in range(1, len(M)) if M[0][k] != 0), None)
        if j is None:
            raise DegenerateFormError("symmetrized form degenerate")
        b, c = M[0][j], M[j][j]
        pairings.append(b)
        rest = [k for k in range(1, len(M)) if k != j]
        # Project each remaining vector v_k off span(f, g) where
        # G = [[0, b], [b, c]] is the Gram matrix of (f, g):
        # v_k' = v_k - x f - y g with G (x, y) = (<v_k, f>, <v_k, g>).
        coeff = {}
        for k in rest:
            u, w = M[k][0], M[k][j]
            y = u / b
            x = (w - c * y) / b
            coeff[k] = (x, y)
        M = [[M[k][l] - coeff[k][0] * M[0][l] - coeff[k][1] * M[j][l] for l in rest]
             for k in rest]
    return GramSchmidtResult(DiagonalForm(diag), tuple(pairings))


def gram_schmidt_diagonalize(Q: Sequence[Sequence[Rational]]) -> DiagonalForm:
    return gram_schmidt(Q).form


def rational_witt_class(V: SeifertMatrix) -> DiagonalForm:
    return gram_schmidt_diagonalize(symmetrize(V))


def knot_signature(V: SeifertMatrix) -> int:
    return rational_witt_class(V).signature()


def knot_determinant(V: SeifertMatrix) -> int:
    d = determinant(symmetrize(V))
    return abs(int(d))


def mirror(V: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix(tuple(tuple(-x for x in row) for row in V.V), strict=V.strict)


def stabilize(V: SeifertMatrix) -> SeifertMatrix:
    """V (+) [[0, 1], [0, 0]]: adds a hyperbolic summand to V + V^T."""
    n = V.dim
    rows = [list(r) + [0, 0] for r in V.V]
    rows.append([0] * n + [0, 1])
    rows.append([0] * n + [0, 0])
    return SeifertMatrix(tuple(map(tuple, rows)), strict=V.strict)
