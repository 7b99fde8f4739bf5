"""The invariant battery behind ``vectcohom selftest``.

Every check is exact. The battery stops at the first counterexample and
reports it together with how many cases each suite had passed so far.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .coboundary import delta_symbolic
from .cochains import Cochain, enumerate_basis
from .exact import Polynomial, as_rational, binomial, format_rational, parse_rational
from .oracle import Density, VectorField, bracket, crosscheck_delta, evaluate_cochain, lie_derivative

SEED = 20240917
LAMBDA_FLOOR = -3


@dataclass
class SelftestReport:
    max_lambda: int
    counts: dict = field(default_factory=dict)
    failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_dict(self) -> dict:
        return {
            "max_lambda": self.max_lambda,
            "passed": self.passed,
            "counts": dict(self.counts),
            "failure": self.failure,
        }


def _random_poly(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree + 1))


def _pascal() -> Iterator[Optional[dict]]:
    for n in range(65):
        for k in range(n + 1):
            direct = math.factorial(n) // (math.factorial(k) * math.factorial(n - k))
            if binomial(n, k) != direct:
                yield {"n": n, "k": k, "binomial": binomial(n, k), "expected": direct}
                return
            if n and binomial(n, k) != binomial(n - 1, k - 1) + binomial(n - 1, k):
                yield {"n": n, "k": k, "rule": "C(n,k) = C(n-1,k-1) + C(n-1,k)"}
                return
            yield None


def _rationals(rng: random.Random) -> Iterator[Optional[dict]]:
    for _ in range(200):
        q = as_rational(Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4)))
        text = format_rational(q)
        if parse_rational(text) != q or (isinstance(q, Fraction) and q.denominator == 1):
            yield {"value": text}
            return
        yield None


def _leibniz(rng: random.Random) -> Iterator[Optional[dict]]:
    for _ in range(60):
        f, g = _random_poly(rng, rng.randint(0, 7)), _random_poly(rng, rng.randint(0, 7))
        m = rng.randint(0, 9)
        rhs = Polynomial()
        for r in range(m + 1):
            rhs = rhs + f.derivative(r) * g.derivative(m - r) * binomial(m, r)
        if (f * g).derivative(m) != rhs:
            yield {"f": str(f), "g": str(g), "m": m}
            return
        yield None


def _jacobi(rng: random.Random) -> Iterator[Optional[dict]]:
    for _ in range(60):
        x, y, z = (VectorField(_random_poly(rng, rng.randint(0, 5))) for _ in range(3))
        total = bracket(x, bracket(y, z)).f + bracket(y, bracket(z, x)).f + bracket(z, bracket(x, y)).f
        if not total.is_zero():
            yield {"x": str(x.f), "y": str(y.f), "z": str(z.f)}
            return
        yield None


def _lie_action(rng: random.Random) -> Iterator[Optional[dict]]:
    # L_[X,Y] = L_X L_Y - L_Y L_X, with the sign fixed by [X,Y] = f g' - f' g
    for _ in range(60):
        lam = rng.randint(-3, 12)
        x, y = (VectorField(_random_poly(rng, rng.randint(0, 5))) for _ in range(2))
        u = Density(_random_poly(rng, rng.randint(0, 6)), lam)
        lhs = lie_derivative(bracket(x, y), u)
        rhs = lie_derivative(x, lie_derivative(y, u)) - lie_derivative(y, lie_derivative(x, u))
        if lhs != rhs:
            yield {"x": str(x.f), "y": str(y.f), "phi": str(u.phi), "lambda": lam}
            return
        yield None


def _multilinear(rng: random.Random, max_lambda: int) -> Iterator[Optional[dict]]:
    for _ in range(40):
        k = rng.randint(1, 3)
        lam = rng.randint(0, max(max_lambda, 0) + 3)
        basis = enumerate_basis(k, lam, False)
        if not basis.tuples:
            continue
        c = basis.from_vector([rng.randint(-3, 3) for _ in basis])
        args = [VectorField(_random_poly(rng, rng.randint(0, 6))) for _ in range(k)]
        base = evaluate_cochain(c, args)
        for perm in itertools.permutations(range(k)):
            sign = _sign(perm)
            swapped = evaluate_cochain(c, [args[i] for i in perm])
            if swapped != base.scaled(sign):
                yield {"cochain": str(c), "permutation": list(perm), "suite": "antisymmetry"}
                return
        slot = rng.randrange(k)
        extra = VectorField(_random_poly(rng, rng.randint(0, 6)))
        s = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        mixed = list(args)
        mixed[slot] = args[slot].scaled(s) + extra
        other = list(args)
        other[slot] = extra
        want = base.scaled(s) + evaluate_cochain(c, other)
        if evaluate_cochain(c, mixed) != want:
            yield {"cochain": str(c), "slot": slot, "suite": "multilinearity"}
            return
        yield None


def _sign(perm) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _basis_counts(max_lambda: int) -> Iterator[Optional[dict]]:
    for k in range(5):
        for lam in range(LAMBDA_FLOOR, max_lambda + 1):
            for relative in (False, True):
                floor = 2 if relative else 0
                top = lam + k
                brute = sum(
                    1
                    for t in itertools.product(range(floor, max(top, 0) + 1), repeat=k)
                    if sum(t) == top and all(a < b for a, b in zip(t, t[1:]))
                )
                got = len(enumerate_basis(k, lam, relative))
                if got != brute:
                    yield {"arity": k, "lambda": lam, "relative": relative, "enumerated": got, "brute": brute}
                    return
                yield None


def _delta_squared(max_lambda: int) -> Iterator[Optional[dict]]:
    for relative in (False, True):
        for k in range(3):
            for lam in range(LAMBDA_FLOOR, max_lambda + 1):
                basis = enumerate_basis(k, lam, relative)
                for i in range(len(basis)):
                    dd = delta_symbolic(delta_symbolic(basis.element(i)))
                    if not dd.is_zero():
                        yield {"cochain": str(basis.element(i)), "delta_delta": str(dd)}
                        return
                    yield None


def _homogeneity(max_lambda: int) -> Iterator[Optional[dict]]:
    for relative in (False, True):
        for k in range(4):
            for lam in range(LAMBDA_FLOOR, max_lambda + 1):
                basis = enumerate_basis(k, lam, relative)
                for i in range(len(basis)):
                    d = delta_symbolic(basis.element(i))
                    bad = [t for t in d.support() if sum(t) != lam + k + 1 or (relative and t[0] < 2)]
                    if bad:
                        yield {"cochain": str(basis.element(i)), "term": list(bad[0])}
                        return
                    yield None


def _crosscheck(max_lambda: int) -> Iterator[Optional[dict]]:
    for relative in (False, True):
        for k in range(4):
            for lam in range(LAMBDA_FLOOR, max_lambda + 1):
                report = crosscheck_delta(k, lam, relative)
                if not report.passed:
                    failure = dict(report.failures[0])
                    failure.update({"arity": k, "lambda": lam, "relative": relative})
                    yield failure
                    return
                for _ in range(report.checked):
                    yield None


def suites(max_lambda: int) -> list[tuple[str, Callable[[], Iterator[Optional[dict]]]]]:
    rng = random.Random(SEED)
    return [
        ("pascal", _pascal),
        ("rationals", lambda: _rationals(rng)),
        ("leibniz", lambda: _leibniz(rng)),
        ("jacobi", lambda: _jacobi(rng)),
        ("lie_action", lambda: _lie_action(rng)),
        ("antisymmetry_multilinearity", lambda: _multilinear(rng, max_lambda)),
        ("basis_counts", lambda: _basis_counts(max_lambda)),
        ("homogeneity", lambda: _homogeneity(max_lambda)),
        ("delta_squared", lambda: _delta_squared(max_lambda)),
        ("crosscheck", lambda: _crosscheck(max_lambda)),
    ]


def selftest(max_lambda: int = 15) -> SelftestReport:
    """Run the battery for weights up to ``max_lambda``; stop at the first failure."""
    report = SelftestReport(max_lambda)
    for name, suite in suites(max_lambda):
        report.counts[name] = 0
        for outcome in suite():
            if outcome is not None:
                report.failure = {"suite": name, **outcome}
                return report
            report.counts[name] += 1
    return report
