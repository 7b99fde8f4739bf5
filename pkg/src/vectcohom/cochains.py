"""Antisymmetric constant-coefficient multi-differential operators.

A k-cochain with values in F_lambda is stored in the determinant basis: the
strictly increasing order tuple ``(i_1, ..., i_k)`` with coefficient ``c``
stands for ``c * det(f_a^(i_b)) dx^lambda``. Translation invariance makes the
coefficients constant and Euler homogeneity forces ``sum(orders) == lambda + k``
for every stored tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .exact import Rational, as_rational, format_rational, parse_rational

OrderTuple = tuple[int, ...]

MAX_ARITY = 4


class CochainError(ValueError):
    pass


class CochainParseError(CochainError):
    """The document does not match the cochain JSON schema."""


class CochainValidationError(CochainError):
    """A term violates homogeneity or the relative order floor."""


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if ``seq`` has repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = 0
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[a] > seq[b]:
                inversions += 1
    return -1 if inversions % 2 else 1


def canonicalize_term(
    orders: Sequence[int], coeff: Rational
) -> Optional[tuple[OrderTuple, Rational]]:
    """Sort ``orders`` and carry the permutation sign into ``coeff``.

    Returns None (the zero marker) when two orders coincide.
    """
    sign = permutation_sign(orders)
    if sign == 0:
        return None
    return tuple(sorted(orders)), as_rational(sign * coeff)


def order_floor(relative: bool) -> int:
    # relative cochains vanish on d/dx and x d/dx, killing orders 0 and 1
    return 2 if relative else 0


def _is_integer(lam) -> bool:
    if isinstance(lam, bool):
        return False
    if isinstance(lam, int):
        return True
    return isinstance(lam, Fraction) and lam.denominator == 1


@dataclass(frozen=True)
class Cochain:
    arity: int
    lam: int
    relative: bool = False
    terms: tuple[tuple[OrderTuple, Rational], ...] = ()

    @classmethod
    def from_terms(
        cls,
        arity: int,
        lam: int,
        relative: bool = False,
        terms: Union[Mapping, Iterable[tuple[Sequence[int], Rational]]] = (),
    ) -> "Cochain":
        """Build a validated cochain, canonicalizing and summing the terms."""
        if not 0 <= arity <= MAX_ARITY:
            raise CochainValidationError(f"arity {arity} outside 0..{MAX_ARITY}")
        if not _is_integer(lam):
            raise CochainValidationError(f"weight lambda={lam!r} must be an integer")
        lam = int(lam)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[OrderTuple, Rational] = {}
        floor = order_floor(relative)
        for orders, coeff in items:
            orders = tuple(int(o) for o in orders)
            if len(orders) != arity:
                raise CochainValidationError(
                    f"term {list(orders)} has {len(orders)} orders, expected {arity}"
                )
            if any(o < 0 for o in orders):
                raise CochainValidationError(f"term {list(orders)} has a negative order")
            if sum(orders) != lam + arity:
                raise CochainValidationError(
                    f"term {list(orders)} has order sum {sum(orders)}, "
                    f"expected lambda + arity = {lam + arity}"
                )
            if relative and any(o < floor for o in orders):
                raise CochainValidationError(
                    f"relative term {list(orders)} has an order below {floor}"
                )
            canon = canonicalize_term(orders, as_rational(coeff))
            if canon is None:
                continue
            key, c = canon
            acc[key] = as_rational(acc.get(key, 0) + c)
        cleaned = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        return cls(arity, lam, bool(relative), cleaned)

    @classmethod
    def zero(cls, arity: int, lam: int, relative: bool = False) -> "Cochain":
        return cls.from_terms(arity, lam, relative, ())

    def as_dict(self) -> dict[OrderTuple, Rational]:
        return dict(self.terms)

    def coeff(self, orders: Sequence[int]) -> Rational:
        return self.as_dict().get(tuple(orders), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[OrderTuple]:
        return [t for t, _ in self.terms]

    def _check_compatible(self, other: "Cochain") -> None:
        if (self.arity, self.lam, self.relative) != (other.arity, other.lam, other.relative):
            raise CochainError("cochains live in different graded pieces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain.from_terms(
            self.arity, self.lam, self.relative, list(self.terms) + list(other.terms)
        )

    def __neg__(self) -> "Cochain":
        return self.scaled(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scaled(self, factor: Rational) -> "Cochain":
        factor = as_rational(factor)
        return Cochain.from_terms(
            self.arity, self.lam, self.relative, [(t, c * factor) for t, c in self.terms]
        )

    def to_vector(self, basis: "CochainBasis") -> list[Rational]:
        if (basis.arity, basis.lam, basis.relative) != (self.arity, self.lam, self.relative):
            raise CochainError("basis does not match the cochain's graded piece")
        vec: list[Rational] = [0] * len(basis)
        for t, c in self.terms:
            vec[basis.index(t)] = c
        return vec

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{format_rational(c)}*det{tuple(t)}" for t, c in self.terms]
        return " + ".join(parts).replace("+ -", "- ") + f" dx^{self.lam}"


@dataclass(frozen=True)
class CochainBasis:
    arity: int
    lam: int
    relative: bool
    tuples: tuple[OrderTuple, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({t: i for i, t in enumerate(self.tuples)})

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[OrderTuple]:
        return iter(self.tuples)

    def __getitem__(self, i: int) -> OrderTuple:
        return self.tuples[i]

    def index(self, orders: Sequence[int]) -> int:
        try:
            return self._index[tuple(orders)]
        except KeyError:
            raise CochainError(f"{tuple(orders)} is not in this basis") from None

    def __contains__(self, orders) -> bool:
        return tuple(orders) in self._index

    def element(self, i: int, coeff: Rational = 1) -> Cochain:
        return Cochain(self.arity, self.lam, self.relative, ((self.tuples[i], as_rational(coeff)),))

    def from_vector(self, vec: Sequence[Rational]) -> Cochain:
        if len(vec) != len(self.tuples):
            raise CochainError(f"vector length {len(vec)} != basis size {len(self.tuples)}")
        return Cochain(
            self.arity,
            self.lam,
            self.relative,
            tuple((t, as_rational(c)) for t, c in zip(self.tuples, vec) if c != 0),
        )


def _increasing_tuples(k: int, total: int, lo: int) -> Iterator[OrderTuple]:
    # strictly increasing k-tuples with entries >= lo summing to total, lex order
    if k == 0:
        if total == 0:
            yield ()
        return
    # smallest admissible completion: lo, lo+1, ..., lo+k-1
    first = lo
    while first * k + k * (k - 1) // 2 <= total:
        for rest in _increasing_tuples(k - 1, total - first, first + 1):
            yield (first,) + rest
        first += 1


def enumerate_basis(arity: int, lam, relative: bool = False) -> CochainBasis:
    """All admissible order tuples for the graded piece, lexicographically."""
    if not 0 <= arity <= MAX_ARITY:
        raise CochainError(f"arity {arity} outside 0..{MAX_ARITY}")
    if not _is_integer(lam):
        # non-integer weights carry no homogeneous cochains
        return CochainBasis(arity, lam, bool(relative), ())
    lam = int(lam)
    tuples = tuple(_increasing_tuples(arity, lam + arity, order_floor(relative)))
    return CochainBasis(arity, lam, bool(relative), tuples)


def cochain_to_dict(c: Cochain) -> dict:
    return {
        "arity": c.arity,
        "lambda": c.lam,
        "relative": c.relative,
        "terms": [{"orders": list(t), "coeff": format_rational(v)} for t, v in c.terms],
    }


def serialize_cochain(c: Cochain, indent: Optional[int] = None) -> str:
    return json.dumps(cochain_to_dict(c), indent=indent)


def cochain_from_dict(doc) -> Cochain:
    if not isinstance(doc, dict):
        raise CochainParseError("document must be a JSON object")
    for key, kind in (("arity", int), ("lambda", int), ("relative", bool), ("terms", list)):
        if key not in doc:
            raise CochainParseError(f"missing field {key!r}")
        value = doc[key]
        if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
            raise CochainParseError(f"field {key!r} must be an integer")
        if not isinstance(value, kind):
            raise CochainParseError(f"field {key!r} must be of type {kind.__name__}")
    extra = set(doc) - {"arity", "lambda", "relative", "terms"}
    if extra:
        raise CochainParseError(f"unexpected field(s) {sorted(extra)}")
    terms = []
    for n, term in enumerate(doc["terms"]):
        where = f"terms[{n}]"
        if not isinstance(term, dict) or set(term) != {"orders", "coeff"}:
            raise CochainParseError(f"{where} must have exactly 'orders' and 'coeff'")
        orders = term["orders"]
        if not isinstance(orders, list) or not all(
            isinstance(o, int) and not isinstance(o, bool) for o in orders
        ):
            raise CochainParseError(f"{where}.orders must be a list of integers")
        coeff = term["coeff"]
        if isinstance(coeff, bool) or not isinstance(coeff, (str, int)):
            raise CochainParseError(f"{where}.coeff must be a rational string 'p/q'")
        try:
            value = parse_rational(coeff) if isinstance(coeff, str) else coeff
        except ValueError as exc:
            raise CochainParseError(f"{where}.coeff: {exc}") from None
        terms.append((orders, value))
    return Cochain.from_terms(doc["arity"], doc["lambda"], doc["relative"], terms)


def parse_cochain(document: str) -> Cochain:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise CochainParseError(f"invalid JSON: {exc}") from None
    return cochain_from_dict(doc)
