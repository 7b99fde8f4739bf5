import pytest
from hypothesis import given, settings, strategies as st

from vectcohom.cochains import Cochain, enumerate_basis
from vectcohom.coboundary import delta_symbolic
from vectcohom.exact import ZERO, Polynomial, as_rational
from vectcohom.oracle import (
    ArityMismatchError,
    Density,
    VectorField,
    bracket,
    crosscheck_delta,
    delta_eval,
    evaluate_cochain,
    lie_derivative,
)

OMEGA_12 = Cochain.from_terms(3, 9, True, [((3, 4, 5), 1)])
# upper-triangular: 3! * 4! * 5! read off the diagonal of (x^a)^(i), frozen by hand
OMEGA_12_ON_X3_X4_X5 = 17280


def mono(a, c=1):
    return VectorField.monomial(a, c)


polys = st.lists(st.fractions(max_denominator=6).map(as_rational), max_size=6).map(Polynomial)
fields = polys.map(VectorField)


def test_bracket_examples():
    assert bracket(mono(1), mono(2)).f == Polynomial.monomial(2)
    assert bracket(mono(0), mono(5)).f == Polynomial.monomial(4, 5)
    x = mono(3, 7)
    assert bracket(x, x).f == ZERO


def test_lie_derivative_examples():
    u = Density(Polynomial.monomial(4), 3)
    assert lie_derivative(mono(1), u).phi == Polynomial.monomial(4, 7)
    assert lie_derivative(mono(0), Density(Polynomial((5,)), 2)).is_zero()
    assert lie_derivative(mono(2), Density(Polynomial.x(), 1)).phi == Polynomial.monomial(2, 3)


def test_omega_12_value():
    u = evaluate_cochain(OMEGA_12, [mono(3), mono(4), mono(5)])
    assert u.phi == Polynomial((OMEGA_12_ON_X3_X4_X5,))


def test_zero_cochain_evaluates_to_zero():
    assert evaluate_cochain(Cochain.zero(3, 9, True), [mono(3), mono(4), mono(5)]).is_zero()


@settings(max_examples=40, deadline=None)
@given(fields, fields)
def test_relative_cochains_kill_translations(y, z):
    basis = enumerate_basis(3, 11, True)
    c = basis.from_vector(list(range(1, len(basis) + 1)))
    assert evaluate_cochain(c, [mono(0), y, z]).is_zero()


def test_arity_mismatch():
    with pytest.raises(ArityMismatchError):
        evaluate_cochain(OMEGA_12, [mono(1), mono(2)])
    with pytest.raises(ArityMismatchError):
        delta_eval(OMEGA_12, [mono(1), mono(2), mono(3)])


@settings(max_examples=60, deadline=None)
@given(fields, fields, fields)
def test_jacobi(x, y, z):
    total = bracket(x, bracket(y, z)).f + bracket(y, bracket(z, x)).f + bracket(z, bracket(x, y)).f
    assert total.is_zero()


@settings(max_examples=60, deadline=None)
@given(fields, fields, polys, st.integers(-3, 10))
def test_densities_form_a_module(x, y, phi, lam):
    u = Density(phi, lam)
    lhs = lie_derivative(bracket(x, y), u)
    rhs = lie_derivative(x, lie_derivative(y, u)) - lie_derivative(y, lie_derivative(x, u))
    assert lhs == rhs


@st.composite
def cochain_and_args(draw):
    k = draw(st.integers(1, 3))
    lam = draw(st.integers(0, 8))
    basis = enumerate_basis(k, lam, False)
    c = basis.from_vector([draw(st.integers(-3, 3)) for _ in basis])
    args = [draw(fields) for _ in range(k)]
    return c, args


@settings(max_examples=60, deadline=None)
@given(cochain_and_args(), st.data())
def test_antisymmetry(ca, data):
    c, args = ca
    if len(args) < 2:
        return
    i, j = sorted(data.draw(st.lists(st.integers(0, len(args) - 1), min_size=2, max_size=2, unique=True)))
    swapped = list(args)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert evaluate_cochain(c, swapped) == evaluate_cochain(c, args).scaled(-1)


@settings(max_examples=60, deadline=None)
@given(cochain_and_args(), fields, st.fractions(max_denominator=5).map(as_rational), st.data())
def test_multilinearity(ca, extra, s, data):
    c, args = ca
    slot = data.draw(st.integers(0, len(args) - 1))
    mixed, other = list(args), list(args)
    mixed[slot] = args[slot].scaled(s) + extra
    other[slot] = extra
    want = evaluate_cochain(c, args).scaled(s) + evaluate_cochain(c, other)
    assert evaluate_cochain(c, mixed) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 9), st.data())
def test_monomial_shortcut_matches_general_path(k, lam, data):
    basis = enumerate_basis(k, lam, False)
    if not basis.tuples:
        return
    c = basis.from_vector([data.draw(st.integers(-3, 3)) for _ in basis])
    args = [mono(data.draw(st.integers(0, lam + 4)), data.draw(st.integers(-3, 3))) for _ in range(k)]
    assert evaluate_cochain(c, args) == evaluate_cochain(c, args, general=True)


def test_delta_eval_examples():
    args = [mono(2), mono(3), mono(4), mono(5)]
    assert delta_eval(OMEGA_12, args).is_zero()
    assert delta_eval(Cochain.zero(3, 9, True), args).is_zero()
    b = Cochain.from_terms(2, 9, True, [((4, 7), 1)])
    args = [mono(2), mono(3), mono(7)]
    assert delta_eval(b, args) == evaluate_cochain(delta_symbolic(b), args)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 7), st.booleans(), st.data())
def test_delta_eval_matches_symbolic_on_general_fields(k, lam, rel, data):
    basis = enumerate_basis(k, lam, rel)
    if not basis.tuples:
        return
    c = basis.from_vector([data.draw(st.integers(-3, 3)) for _ in basis])
    args = [data.draw(fields) for _ in range(k + 1)]
    assert delta_eval(c, args) == evaluate_cochain(delta_symbolic(c), args)


@pytest.mark.parametrize(
    "k,lam,rel,top", [(3, 9, True, 15), (2, 3, False, 10), (1, 0, False, 8)]
)
def test_crosscheck_examples(k, lam, rel, top):
    report = crosscheck_delta(k, lam, rel, top)
    assert report.passed and report.checked > 0
    assert set(report.to_dict()) == {"checked", "failures"}


def test_crosscheck_detects_a_faulty_binomial():
    from vectcohom.exact import injected_binomial_fault

    with injected_binomial_fault(3, 1):
        report = crosscheck_delta(2, 3, False)
    assert not report.passed
    failure = report.failures[0]
    assert set(failure) == {"basis_tuple", "args", "lhs", "rhs"}
