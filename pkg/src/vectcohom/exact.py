"""Exact scalars, binomial coefficients and dense univariate polynomials.

Scalars are Python ``int`` or :class:`fractions.Fraction`; a Fraction whose
denominator is 1 is always collapsed to ``int`` so that integer-only
computations never pay for rational arithmetic.
"""

from __future__ import annotations

import functools
import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Union[int, Fraction]

# (n, k) -> additive perturbation; only populated by ``injected_binomial_fault``
_binomial_faults: dict[tuple[int, int], int] = {}


def as_rational(value) -> Rational:
    """Coerce ``value`` to canonical exact form (``int`` when integral)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _canon_list(values) -> list:
    # hot path: ints pass through untouched
    return [v if type(v) is int else as_rational(v) for v in values]


def qdiv(a: Rational, b: Rational) -> Rational:
    """Exact quotient, never a float."""
    return as_rational(Fraction(a) / Fraction(b))


def parse_rational(text: str) -> Rational:
    """Parse ``"p/q"`` or ``"p"``; floats and decimal points are rejected."""
    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = s.partition("/")
    try:
        if sep:
            q = Fraction(int(num), int(den))
        else:
            q = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
    return as_rational(q)


def format_rational(q: Rational) -> str:
    q = as_rational(q)
    if isinstance(q, int):
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def binomial(n: int, k: int) -> int:
    """n choose k, with 0 for k > n or k < 0."""
    if k < 0 or k > n:
        value = 0
    else:
        value = math.comb(n, k)
    if _binomial_faults:
        value += _binomial_faults.get((n, k), 0)
    return value


@contextmanager
def injected_binomial_fault(n: int, k: int, delta: int = 1) -> Iterator[None]:
    """Debug hook: perturb ``binomial(n, k)`` by ``delta`` inside the block."""
    _binomial_faults[(n, k)] = _binomial_faults.get((n, k), 0) + delta
    try:
        yield
    finally:
        _binomial_faults[(n, k)] -= delta
        if not _binomial_faults[(n, k)]:
            del _binomial_faults[(n, k)]


@functools.lru_cache(maxsize=8192)
def falling_factorial(a: int, m: int) -> int:
    out = 1
    for t in range(m):
        out *= a - t
    return out


class Polynomial:
    """Dense univariate polynomial over Q; ``coeffs[e]`` is the x**e coefficient.

    Immutable. Trailing zeros are stripped so the zero polynomial has ``()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, coeffs: list) -> "Polynomial":
        # coeffs already canonical scalars
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(coeffs))
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls._raw([0] * exponent + [as_rational(coeff)])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __call__(self, point) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return as_rational(acc)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        q = self._coerce(other).coeffs
        p = self.coeffs
        if len(p) < len(q):
            p, q = q, p
        out = list(p)
        for i, c in enumerate(q):
            out[i] += c
        return Polynomial._raw(_canon_list(out))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            s = as_rational(other)
            if s == 0:
                return ZERO
            return Polynomial._raw(_canon_list([c * s for c in self.coeffs]))
        if not isinstance(other, Polynomial):
            return NotImplemented
        p, q = self.coeffs, other.coeffs
        if not p or not q:
            return ZERO
        out: list = [0] * (len(p) + len(q) - 1)
        qnz = [(j, b) for j, b in enumerate(q) if b != 0]
        for i, a in enumerate(p):
            if a == 0:
                continue
            for j, b in qnz:
                out[i + j] += a * b
        return Polynomial._raw(_canon_list(out))

    __rmul__ = __mul__

    def derivative(self, m: int = 1) -> "Polynomial":
        if m < 0:
            raise ValueError("negative derivative order")
        cs = self.coeffs
        if m == 0:
            return self
        if m >= len(cs):
            return ZERO
        return Polynomial._raw(
            _canon_list([cs[e] * falling_factorial(e, m) for e in range(m, len(cs))])
        )

    def to_json(self) -> dict[str, str]:
        return {str(e): format_rational(c) for e, c in enumerate(self.coeffs) if c != 0}

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        if not isinstance(data, dict):
            raise ValueError("polynomial must be an exponent -> coefficient map")
        terms: dict[int, Rational] = {}
        for key, value in data.items():
            e = int(key)
            if e < 0:
                raise ValueError(f"negative exponent {key!r}")
            terms[e] = parse_rational(value) if isinstance(value, str) else as_rational(value)
        if not terms:
            return ZERO
        return cls([terms.get(e, 0) for e in range(max(terms) + 1)])


ZERO = Polynomial()
ONE = Polynomial((1,))


def poly_derivative(p: Polynomial, m: int) -> Polynomial:
    return p.derivative(m)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q
