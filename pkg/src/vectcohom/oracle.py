"""Brute-force evaluation of cochains and of their coboundary on polynomial fields.

Nothing here shares code with the symbolic differential: cochains are
evaluated as explicit determinants of derivatives, brackets and Lie
derivatives are plain polynomial arithmetic, and the coboundary is written
out degree by degree.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cochains import Cochain, CochainError, enumerate_basis, permutation_sign
from .exact import ZERO, Polynomial, Rational, as_rational, falling_factorial


class ArityMismatchError(CochainError):
    pass


@dataclass(frozen=True)
class VectorField:
    """f(x) d/dx"""

    f: Polynomial

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> "VectorField":
        return cls(Polynomial.monomial(exponent, coeff))

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.f + other.f)

    def scaled(self, c: Rational) -> "VectorField":
        return VectorField(self.f * c)


@dataclass(frozen=True)
class Density:
    """phi(x) dx^lam"""

    phi: Polynomial
    lam: int

    def __add__(self, other: "Density") -> "Density":
        if self.lam != other.lam:
            raise ValueError("densities of different weights")
        return Density(self.phi + other.phi, self.lam)

    def __sub__(self, other: "Density") -> "Density":
        return self + Density(-other.phi, other.lam)

    def scaled(self, c: Rational) -> "Density":
        return Density(self.phi * c, self.lam)

    def is_zero(self) -> bool:
        return self.phi.is_zero()


@functools.lru_cache(maxsize=4096)
def bracket(x: VectorField, y: VectorField) -> VectorField:
    f, g = x.f, y.f
    return VectorField(f * g.derivative() - f.derivative() * g)


def lie_derivative(x: VectorField, u: Density) -> Density:
    f, phi = x.f, u.phi
    return Density(f * phi.derivative() + f.derivative() * phi * u.lam, u.lam)


def _monomial_parts(p: Polynomial) -> Optional[tuple[int, Rational]]:
    cs = p.coeffs
    if not cs or any(cs[:-1]):
        return None
    return len(cs) - 1, cs[-1]


@functools.lru_cache(maxsize=None)
def _signed_permutations(k: int) -> tuple:
    return tuple((p, permutation_sign(p)) for p in itertools.permutations(range(k)))


def _det(m: list[list[int]]) -> int:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if k == 3:
        (a, b, c), (d, e, f), (g, h, i) = m
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0
    for perm, sign in _signed_permutations(k):
        prod = sign
        for b, a in enumerate(perm):
            prod *= m[b][a]
            if not prod:
                break
        total += prod
    return total


def _evaluate_on_monomials(c: Cochain, monos: list[tuple[int, Rational]]) -> Density:
    # (x^a)^(i) = a(a-1)...(a-i+1) x^(a-i); each determinant is a scalar times x^(sum a - sum i)
    k = c.arity
    scale: Rational = 1
    for _, coeff in monos:
        scale *= coeff
    exps = [a for a, _ in monos]
    total: Rational = 0
    for orders, coeff in c.terms:
        total += _det([[falling_factorial(a, i) for a in exps] for i in orders]) * coeff
    total = as_rational(total * scale)
    if total == 0:
        return Density(ZERO, c.lam)
    return Density(Polynomial.monomial(sum(exps) - (c.lam + k), total), c.lam)


def evaluate_cochain(c: Cochain, args: Sequence[VectorField], general: bool = False) -> Density:
    """sum over terms of coeff * det(f_a^(i_b)), expanded over permutations.

    Monomial arguments take a scalar shortcut unless ``general`` is set.
    """
    k = c.arity
    if len(args) != k:
        raise ArityMismatchError(f"cochain of arity {k} applied to {len(args)} arguments")
    if any(x.f.is_zero() for x in args):
        return Density(ZERO, c.lam)
    if not general and k:
        monos = [_monomial_parts(x.f) for x in args]
        if all(m is not None for m in monos):
            return _evaluate_on_monomials(c, monos)
    derivs: list[dict[int, Polynomial]] = [{} for _ in range(k)]

    def d(a: int, i: int) -> Polynomial:
        cache = derivs[a]
        if i not in cache:
            cache[i] = args[a].f.derivative(i)
        return cache[i]

    perms = _signed_permutations(k)
    total = ZERO
    for orders, coeff in c.terms:
        det = ZERO
        for perm, sign in perms:
            prod = Polynomial((sign,))
            for b, a in enumerate(perm):
                prod = prod * d(a, orders[b])
                if prod.is_zero():
                    break
            det = det + prod
        total = total + det * coeff
    return Density(total, c.lam)


def delta_eval(c: Cochain, args: Sequence[VectorField]) -> Density:
    """The coboundary of ``c`` evaluated on ``args``, one formula per degree.

    Sign convention: the negative of sum (-1)^s x_s.C(..) + sum (-1)^(p+q) C([x_p,x_q],..),
    so that degree 2 reads B([X,Y],Z) - B([X,Z],Y) + B([Y,Z],X) - X.B(Y,Z) + Y.B(X,Z) - Z.B(X,Y).
    """
    k = c.arity
    if k > 3:
        raise ArityMismatchError(f"coboundary of arity {k} is not supported")
    if len(args) != k + 1:
        raise ArityMismatchError(f"coboundary of a {k}-cochain takes {k + 1} arguments")

    def C(*xs):
        return evaluate_cochain(c, xs)

    def L(x, u):
        return lie_derivative(x, u)

    br = bracket
    if k == 0:
        (g,) = args
        return L(g, C()).scaled(-1)
    if k == 1:
        g, h = args
        return C(br(g, h)) - L(g, C(h)) + L(h, C(g))
    if k == 2:
        x, y, z = args
        return (
            C(br(x, y), z)
            - C(br(x, z), y)
            + C(br(y, z), x)
            - L(x, C(y, z))
            + L(y, C(x, z))
            - L(z, C(x, y))
        )
    x, y, z, t = args
    return (
        C(br(x, y), z, t)
        - C(br(x, z), y, t)
        + C(br(x, t), y, z)
        + C(br(y, z), x, t)
        - C(br(y, t), x, z)
        + C(br(z, t), x, y)
        - L(x, C(y, z, t))
        + L(y, C(x, z, t))
        - L(z, C(x, y, t))
        + L(t, C(x, y, z))
    )


def _density_json(u: Density) -> dict:
    return {"lambda": u.lam, "phi": u.phi.to_json()}


@dataclass
class CrosscheckReport:
    arity: int
    lam: int
    relative: bool
    max_exponent: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"checked": self.checked, "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def default_max_exponent(arity: int, lam: int) -> int:
    return lam + arity + 3


def crosscheck_delta(
    arity: int,
    lam: int,
    relative: bool = False,
    max_exponent: Optional[int] = None,
    max_failures: int = 1,
) -> CrosscheckReport:
    """Compare the symbolic differential against ``delta_eval`` on monomial fields.

    Both sides are alternating in the k+1 arguments, so only strictly
    increasing exponent tuples are visited; repeated arguments give zero on
    both sides.
    """
    from .coboundary import delta_symbolic

    if not 0 <= arity <= 3:
        raise ArityMismatchError(f"crosscheck supports arity 0..3, got {arity}")
    if max_exponent is None:
        max_exponent = default_max_exponent(arity, lam)
    report = CrosscheckReport(arity, lam, relative, max_exponent)
    basis = enumerate_basis(arity, lam, relative)
    if not basis.tuples:
        return report
    fields = [VectorField.monomial(a) for a in range(max_exponent + 1)]
    images = [delta_symbolic(basis.element(j)) for j in range(len(basis))]
    for exps in itertools.combinations(range(max_exponent + 1), arity + 1):
        args = [fields[a] for a in exps]
        for j in range(len(basis)):
            lhs = delta_eval(basis.element(j), args)
            rhs = evaluate_cochain(images[j], args)
            report.checked += 1
            if lhs != rhs:
                report.failures.append(
                    {
                        "basis_tuple": list(basis[j]),
                        "args": list(exps),
                        "lhs": _density_json(lhs),
                        "rhs": _density_json(rhs),
                    }
                )
                if len(report.failures) >= max_failures:
                    return report
    return report
