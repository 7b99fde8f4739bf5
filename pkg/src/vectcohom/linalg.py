"""Exact linear algebra over Q.

Elimination is fraction-free (Bareiss): every row is first scaled to integers,
forward elimination divides exactly by the previous pivot, and only the final
back substitution goes through rationals. Pivots are chosen deterministically:
leftmost column with a nonzero entry, topmost such row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Rational, as_rational

Vector = list


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "ExactMatrix":
        grid = tuple(tuple(as_rational(v) for v in r) for r in rows)
        if cols is None:
            if not grid:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(grid[0])
        return cls(len(grid), cols, grid)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        )

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def apply(self, x: Sequence) -> list:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        return [as_rational(sum(a * b for a, b in zip(r, x))) for r in self.entries]

    def left_apply(self, y: Sequence) -> list:
        if len(y) != self.rows:
            raise ValueError(f"covector length {len(y)} != {self.rows} rows")
        return [
            as_rational(sum(y[i] * self.entries[i][j] for i in range(self.rows)))
            for j in range(self.cols)
        ]


def _integer_row(row: Sequence) -> list[int]:
    dens = [v.denominator for v in row if isinstance(v, Fraction)]
    lcm = math.lcm(*dens) if dens else 1
    return [int(v * lcm) for v in row]


def bareiss_echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (nonzero integer rows, pivot columns)."""
    m = [_integer_row(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        sel = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if sel is None:
            continue
        if sel != r:
            m[r], m[sel] = m[sel], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            lead = m[i][c]
            mi = m[i]
            mr = m[r]
            for j in range(c + 1, ncols):
                mi[j] = (piv * mi[j] - lead * mr[j]) // prev
            mi[c] = 0
        # rows above r are already final; earlier zeroed entries stay zero
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Rational]], list[int]]:
    """Reduced row echelon form (pivots normalized to 1) and its pivot columns."""
    ech, pivots = bareiss_echelon(rows, ncols)
    out: list[list[Rational]] = []
    for row, c in zip(ech, pivots):
        p = row[c]
        out.append([as_rational(Fraction(v, p)) for v in row])
    for i in range(len(out) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = out[k][c]
            if f:
                out[k] = [as_rational(a - f * b) for a, b in zip(out[k], out[i])]
    return out, pivots


def rank(a: ExactMatrix) -> int:
    return len(bareiss_echelon(a.entries, a.cols)[1])


def kernel_basis(a: ExactMatrix) -> list[list[Rational]]:
    """Basis of {x : a x = 0}, one vector per free column in increasing order."""
    red, pivots = rref(a.entries, a.cols)
    pivset = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivset:
            continue
        v: list[Rational] = [0] * a.cols
        v[free] = 1
        for row, c in zip(red, pivots):
            v[c] = as_rational(-row[free])
        basis.append(v)
    return basis


def image_basis(a: ExactMatrix) -> tuple[list[list[Rational]], list[int]]:
    """RREF basis of the column space and the coordinates it pivots on."""
    return rref(a.transpose().entries, a.rows)


def primitive(vec: Sequence[Rational]) -> list[int]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    ints = _integer_row(vec)
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return ints
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return [v // g for v in ints]


@dataclass(frozen=True)
class Membership:
    """Outcome of solving a x = b.

    Exactly one of ``solution`` and ``witness`` is set. A witness is an integer
    covector y with y a = 0 and y . b != 0, which proves b is not in the image.
    """

    solution: Optional[tuple[Rational, ...]]
    witness: Optional[tuple[int, ...]]
    rank: int

    @property
    def member(self) -> bool:
        return self.solution is not None

    def verify(self, a: ExactMatrix, b: Sequence) -> bool:
        b = [as_rational(v) for v in b]
        if self.solution is not None:
            return a.apply(self.solution) == b
        y = self.witness
        return all(v == 0 for v in a.left_apply(y)) and sum(p * q for p, q in zip(y, b)) != 0


def image_membership(a: ExactMatrix, b: Sequence) -> Membership:
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    aug = [list(r) + [as_rational(v)] for r, v in zip(a.entries, b)]
    red, pivots = rref(aug, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        for y in kernel_basis(a.transpose()):
            if sum(p * q for p, q in zip(y, b)) != 0:
                return Membership(None, tuple(primitive(y)), len(pivots) - 1)
        raise AssertionError("inconsistent system without an annihilating covector")
    x: list[Rational] = [0] * a.cols
    for row, c in zip(red, pivots):
        x[c] = row[a.cols]
    return Membership(tuple(x), None, len(pivots))


def in_row_space(a: ExactMatrix, v: Sequence) -> bool:
    if len(v) != a.cols:
        raise ValueError(f"covector has length {len(v)}, matrix has {a.cols} columns")
    if all(x == 0 for x in v):
        return True
    base = rank(a)
    return len(bareiss_echelon(list(a.entries) + [list(v)], a.cols)[1]) == base
