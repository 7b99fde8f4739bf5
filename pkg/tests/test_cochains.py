import itertools
import json

import pytest
from hypothesis import given, strategies as st

from vectcohom.cochains import (
    Cochain,
    CochainParseError,
    CochainValidationError,
    canonicalize_term,
    enumerate_basis,
    parse_cochain,
    serialize_cochain,
)
from vectcohom.exact import as_rational

OMEGA_12 = Cochain.from_terms(3, 9, True, [((3, 4, 5), 1)])
OMEGA_14 = Cochain.from_terms(3, 11, True, [((3, 4, 7), 5), ((3, 5, 6), -14)])


def test_canonicalize_examples():
    assert canonicalize_term([4, 3, 5], 2) == ((3, 4, 5), -2)
    assert canonicalize_term([3, 3, 7], 2) is None
    # reversing three entries is one transposition; a genuine 3-cycle keeps the sign
    assert canonicalize_term([7, 3, 2], 2) == ((2, 3, 7), -2)
    assert canonicalize_term([3, 7, 2], 2) == ((2, 3, 7), 2)


@given(st.lists(st.integers(0, 12), min_size=1, max_size=4, unique=True), st.integers(-9, 9))
def test_canonicalize_is_idempotent(orders, c):
    t, v = canonicalize_term(orders, c)
    assert canonicalize_term(t, v) == (t, v)
    assert abs(v) == abs(c)


@pytest.mark.parametrize(
    "k,lam,rel,want",
    [
        (3, 9, True, [(2, 3, 7), (2, 4, 6), (3, 4, 5)]),
        (3, 11, True, [(2, 3, 9), (2, 4, 8), (2, 5, 7), (3, 4, 7), (3, 5, 6)]),
        (3, -4, False, []),
        (3, 3, False, [(0, 1, 5), (0, 2, 4), (1, 2, 3)]),
        (0, 0, False, [()]),
        (0, 5, False, []),
    ],
)
def test_basis_examples(k, lam, rel, want):
    assert list(enumerate_basis(k, lam, rel)) == want


@given(st.integers(0, 4), st.integers(-4, 14), st.booleans())
def test_basis_matches_brute_force(k, lam, rel):
    lo = 2 if rel else 0
    brute = sorted(
        t
        for t in itertools.product(range(lo, max(lam + k, 0) + 1), repeat=k)
        if sum(t) == lam + k and all(a < b for a, b in zip(t, t[1:]))
    )
    assert list(enumerate_basis(k, lam, rel)) == brute


def test_non_integer_weight_gives_empty_basis():
    assert len(enumerate_basis(3, 2.5, False)) == 0


def test_parse_examples():
    doc = '{"arity":3,"lambda":9,"relative":true,"terms":[{"orders":[3,4,5],"coeff":"1"}]}'
    assert parse_cochain(doc) == OMEGA_12
    assert parse_cochain('{"arity":3,"lambda":4,"relative":false,"terms":[]}').is_zero()


def test_homogeneity_violation():
    doc = {
        "arity": 3,
        "lambda": 8,
        "relative": False,
        "terms": [{"orders": [3, 4, 5], "coeff": "1"}, {"orders": [2, 3, 7], "coeff": "1"}],
    }
    with pytest.raises(CochainValidationError):
        parse_cochain(json.dumps(doc))


@pytest.mark.parametrize(
    "doc",
    [
        "[]",
        "{not json",
        '{"arity":3,"lambda":9,"relative":true}',
        '{"arity":3,"lambda":9.0,"relative":true,"terms":[]}',
        '{"arity":3,"lambda":9,"relative":true,"terms":[{"orders":[3,4,5],"coeff":0.5}]}',
        '{"arity":3,"lambda":9,"relative":true,"terms":[{"orders":[3,4,5]}]}',
        '{"arity":3,"lambda":9,"relative":true,"terms":[],"extra":1}',
    ],
)
def test_parse_rejects(doc):
    with pytest.raises(CochainParseError):
        parse_cochain(doc)


def test_relative_floor_is_enforced():
    with pytest.raises(CochainValidationError):
        Cochain.from_terms(3, 9, True, [((1, 4, 7), 1)])


def test_arity_bound():
    with pytest.raises(CochainValidationError):
        Cochain.from_terms(5, 0, False, [((0, 1, 2, 3, 4), 1)])


def test_serialize_examples():
    assert json.loads(serialize_cochain(Cochain.zero(2, 3)))["terms"] == []
    doc = json.loads(serialize_cochain(OMEGA_14))
    assert doc["terms"] == [
        {"orders": [3, 4, 7], "coeff": "5"},
        {"orders": [3, 5, 6], "coeff": "-14"},
    ]


@st.composite
def cochains(draw):
    k = draw(st.integers(1, 3))
    lam = draw(st.integers(-1, 12))
    rel = draw(st.booleans())
    basis = enumerate_basis(k, lam, rel)
    coeffs = [draw(st.fractions(max_denominator=9).map(as_rational)) for _ in basis]
    return basis.from_vector(coeffs) if basis.tuples else Cochain.zero(k, lam, rel)


@given(cochains())
def test_serialize_roundtrip(c):
    assert parse_cochain(serialize_cochain(c)) == c


@given(cochains())
def test_vector_roundtrip(c):
    basis = enumerate_basis(c.arity, c.lam, c.relative)
    assert basis.from_vector(c.to_vector(basis)) == c


@given(cochains())
def test_additive_group(c):
    assert (c - c).is_zero()
    assert c + c == c.scaled(2)
