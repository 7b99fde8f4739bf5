"""Chevalley-Eilenberg differential on determinant-basis cochains.

For arguments x_0..x_k the differential is

    sum_s (-1)^(s+1) x_s . C(..., ^x_s, ...)
  + sum_{p<q} (-1)^(p+q+1) C([x_p, x_q], ..., ^x_p, ..., ^x_q, ...)

with [f d/dx, g d/dx] = (f g' - f' g) d/dx and f d/dx acting on phi dx^lambda
by f phi' + lambda f' phi. The overall sign is the one for which degree 2 reads

    B([X,Y],Z) - B([X,Z],Y) + B([Y,Z],X) - X.B(Y,Z) + Y.B(X,Z) - Z.B(X,Y);

it does not affect kernels, images or cohomology.

Everything is computed on monomials in the
derivative orders: a cochain term is expanded over permutations, each
summand is pushed through the formula with the Leibniz rule, and every
resulting monomial is folded back by signed sorting.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional

from .cochains import Cochain, CochainBasis, CochainError, enumerate_basis, permutation_sign
from .exact import Polynomial, Rational, binomial, format_rational, qdiv


class UnsupportedArityError(CochainError):
    pass


def _expanded_monomials(c: Cochain):
    """Yield (orders-per-argument, coefficient) for the full antisymmetric operator."""
    k = c.arity
    perms = [(p, permutation_sign(p)) for p in itertools.permutations(range(k))]
    for orders, coeff in c.terms:
        for perm, sign in perms:
            exps = [0] * k
            for b, a in enumerate(perm):
                exps[a] = orders[b]
            yield exps, sign * coeff


def _bracket_leibniz(m: int):
    """m-th derivative of f g' - f' g as [(order on f, order on g, coeff)]."""
    out = []
    for r in range(m + 1):
        b = binomial(m, r)
        if b:
            out.append((r, m - r + 1, b))
            out.append((r + 1, m - r, -b))
    return out


def delta_symbolic(c: Cochain) -> Cochain:
    """The coboundary of ``c`` as a (k+1)-cochain with the same weight and flag."""
    k = c.arity
    if k > 3:
        raise UnsupportedArityError(f"delta is implemented for arity <= 3, got {k}")
    lam = c.lam
    n = k + 1
    acc: dict[tuple[int, ...], Rational] = {}

    def emit(exps: list[int], coeff):
        # fold back onto the determinant basis by signed sorting
        sign = permutation_sign(exps)
        if sign == 0 or coeff == 0:
            return
        key = tuple(sorted(exps))
        acc[key] = acc.get(key, 0) + sign * coeff

    monomials = list(_expanded_monomials(c))
    leibniz_cache: dict[int, list] = {}

    for exps, coeff in monomials:
        # Lie-derivative terms: (-1)^(s+1) x_s . C(remaining args in order)
        for s in range(n):
            sign = coeff if s % 2 else -coeff
            others = [a for a in range(n) if a != s]
            base = [0] * n
            for a, e in zip(others, exps):
                base[a] = e
            # f phi': phi' distributes over the k factors of the monomial
            for a in others:
                out = list(base)
                out[a] += 1
                emit(out, sign)
            # lambda f' phi
            if lam:
                out = list(base)
                out[s] = 1
                emit(out, sign * lam)
        # bracket terms: (-1)^(p+q+1) C([x_p, x_q], remaining args in order)
        for p, q in itertools.combinations(range(n), 2):
            sign = coeff if (p + q) % 2 else -coeff
            others = [a for a in range(n) if a not in (p, q)]
            base = [0] * n
            for a, e in zip(others, exps[1:]):
                base[a] = e
            m = exps[0]
            terms = leibniz_cache.get(m)
            if terms is None:
                terms = leibniz_cache[m] = _bracket_leibniz(m)
            for rp, rq, b in terms:
                out = list(base)
                out[p] = rp
                out[q] = rq
                emit(out, sign * b)

    # each determinant coefficient was collected once per permutation
    scale = math.factorial(n)
    result = []
    for key, v in acc.items():
        if v == 0:
            continue
        q = qdiv(v, scale)
        result.append((key, q))
    return Cochain.from_terms(n, lam, c.relative, result)


@dataclass(frozen=True)
class DeltaMatrix:
    domain: CochainBasis
    codomain: CochainBasis
    entries: tuple[tuple[Rational, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def entry(self, row_tuple, col_tuple) -> Rational:
        return self.entries[self.codomain.index(row_tuple)][self.domain.index(col_tuple)]

    def row(self, row_tuple) -> tuple[Rational, ...]:
        return self.entries[self.codomain.index(row_tuple)]

    def column(self, j: int) -> list[Rational]:
        return [r[j] for r in self.entries]

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(
            {
                "arity": self.domain.arity,
                "lambda": self.domain.lam,
                "relative": self.domain.relative,
                "rows": [list(t) for t in self.codomain],
                "cols": [list(t) for t in self.domain],
                "entries": [[format_rational(v) for v in r] for r in self.entries],
            },
            indent=indent,
        )


def delta_matrix(arity: int, lam, relative: bool = False) -> DeltaMatrix:
    """Matrix of delta from the arity-k piece to the arity-(k+1) piece."""
    if not 0 <= arity <= 3:
        raise UnsupportedArityError(f"delta is implemented for arity <= 3, got {arity}")
    dom = enumerate_basis(arity, lam, relative)
    cod = enumerate_basis(arity + 1, lam, relative)
    cols = []
    for j in range(len(dom)):
        image = delta_symbolic(dom.element(j))
        col = [0] * len(cod)
        for t, v in image.terms:
            if t not in cod:
                raise AssertionError(f"delta{dom[j]} produced {t} outside the codomain basis")
            col[cod.index(t)] = v
        cols.append(col)
    entries = tuple(tuple(cols[j][i] for j in range(len(dom))) for i in range(len(cod)))
    return DeltaMatrix(dom, cod, entries)


def check_aff1_invariance(c: Cochain, max_exponent: Optional[int] = None) -> bool:
    """Check C([X,Y],Z,T) - C([X,Z],Y,T) + C([X,T],Y,Z) == X.C(Y,Z,T) for X in aff(1).

    Y, Z, T range over monomial fields x^a d/dx with a <= lambda + 6 (or
    ``max_exponent``). Both sides are alternating in (Y, Z, T), so strictly
    increasing exponent triples suffice.
    """
    return all(check_aff1_invariance_many([c], max_exponent))


def check_aff1_invariance_many(cochains, max_exponent: Optional[int] = None) -> list[bool]:
    """check_aff1_invariance for several 3-cochains of one weight and flag.

    The condition is linear in C, so the defect is computed once per basis
    tuple and then combined with each cochain's coefficients.
    """
    from .oracle import VectorField, bracket, evaluate_cochain, lie_derivative

    cochains = list(cochains)
    for c in cochains:
        if c.arity != 3:
            raise UnsupportedArityError(f"invariance check is for 3-cochains, got arity {c.arity}")
    live = [c for c in cochains if not c.is_zero()]
    if not live:
        return [True] * len(cochains)
    lam, relative = live[0].lam, live[0].relative
    if any(c.lam != lam or c.relative != relative for c in live):
        raise ValueError("cochains must share weight and flag")
    if max_exponent is None:
        max_exponent = lam + 6
    support = sorted({t for c in live for t in c.support()})
    units = [Cochain.from_terms(3, lam, relative, [(t, 1)]) for t in support]
    fields = [VectorField.monomial(a) for a in range(max_exponent + 1)]
    aff1 = (VectorField.monomial(0), VectorField.monomial(1))
    ok = {id(c): True for c in live}
    for x in aff1:
        for a, b, t in itertools.combinations(range(max_exponent + 1), 3):
            y, z, w = fields[a], fields[b], fields[t]
            defect = {}
            for tup, u in zip(support, units):
                d = (
                    evaluate_cochain(u, (bracket(x, y), z, w))
                    - evaluate_cochain(u, (bracket(x, z), y, w))
                    + evaluate_cochain(u, (bracket(x, w), y, z))
                    - lie_derivative(x, evaluate_cochain(u, (y, z, w)))
                )
                if not d.is_zero():
                    defect[tup] = d.phi
            if not defect:
                continue
            for c in live:
                if not ok[id(c)]:
                    continue
                total = Polynomial()
                for tup, coeff in c.terms:
                    if tup in defect:
                        total = total + defect[tup] * coeff
                if not total.is_zero():
                    ok[id(c)] = False
    return [ok.get(id(c), True) for c in cochains]
