import pytest
from hypothesis import given, settings, strategies as st

from vectcohom.cochains import Cochain, CochainError, enumerate_basis
from vectcohom.coboundary import delta_symbolic
from vectcohom.cohomology import (
    NotClosedError,
    coboundary_matrix,
    coboundary_membership,
    cohomology,
    reduce_mod_coboundaries,
    relation_in_rowspace,
    relation_vector,
)
from vectcohom.linalg import image_membership, kernel_basis
from vectcohom.cohomology import cocycle_matrix

OMEGA_12 = Cochain.from_terms(3, 9, True, [((3, 4, 5), 1)])
OMEGA_14 = Cochain.from_terms(3, 11, True, [((3, 4, 7), 5), ((3, 5, 6), -14)])

# computed once by this engine and frozen; see the tests below for the checks behind them
H3_RELATIVE = {12: 1, 15: 1}
H3_ABSOLUTE = {5: 1, 7: 1, 12: 1, 15: 1}


@pytest.mark.parametrize("relative", [True, False])
def test_every_report_verifies(relative):
    for lam in range(-3, 19):
        r = cohomology(3, lam, relative)
        assert r.verify(), lam
        assert r.dim_cocycles == r.dim_coboundaries + r.dim_cohomology


@pytest.mark.parametrize("relative,table", [(True, H3_RELATIVE), (False, H3_ABSOLUTE)])
def test_frozen_dimensions(relative, table):
    got = {lam: cohomology(3, lam, relative).dim_cohomology for lam in range(-3, 31)}
    assert {lam: d for lam, d in got.items() if d} == table


def test_empty_complex():
    r = cohomology(3, -4, False)
    assert (r.dim_cochains, r.dim_cocycles, r.dim_coboundaries, r.dim_cohomology) == (0, 0, 0, 0)
    assert r.verify()


def test_cocycle_counts_in_the_relative_sequence():
    assert [cohomology(3, lam, True).dim_cocycles for lam in (9, 10, 11)] == [3, 3, 4]


def test_weight_ten_kernel_has_one_relation():
    m = cocycle_matrix(3, 10, True)
    assert m.cols == 4 and len(kernel_basis(m)) == 3


def test_weight_ten_cocycles_are_coboundaries():
    image = coboundary_matrix(3, 10, True)
    for z in kernel_basis(cocycle_matrix(3, 10, True)):
        assert image_membership(image, z).member


def test_representatives_are_closed_and_reduced():
    r = cohomology(3, 12, True)
    (rep,) = r.representatives
    assert rep.as_dict() == {(3, 4, 8): 1, (3, 5, 7): -4, (4, 5, 6): 28}
    assert delta_symbolic(rep).is_zero()
    assert not coboundary_membership(rep).is_coboundary


def test_dual_witnesses_separate_representatives():
    for lam in (5, 7, 12):
        r = cohomology(3, lam, False)
        basis = enumerate_basis(3, lam, False)
        vecs = [rep.to_vector(basis) for rep in r.representatives]
        for i, cert in enumerate(r.certificates):
            pair = [sum(a * b for a, b in zip(cert.witness, v)) for v in vecs]
            assert [p != 0 for p in pair] == [j == i for j in range(len(vecs))]


def test_tampered_certificate_fails():
    from dataclasses import replace

    r = cohomology(3, 12, True)
    bad = replace(r.certificates[0], pairing=r.certificates[0].pairing + 1)
    assert not replace(r, certificates=(bad,)).verify()
    assert not replace(r, dim_cocycles=r.dim_cocycles + 1).verify()


def test_membership_certificates():
    m = coboundary_membership(OMEGA_12)
    assert m.is_cocycle and m.is_coboundary and m.verify()
    assert delta_symbolic(m.primitive) == OMEGA_12
    rep = cohomology(3, 15, True).representatives[0]
    m = coboundary_membership(rep)
    assert not m.is_coboundary and m.verify()


def test_reduce_combination_at_nine():
    c = Cochain.from_terms(3, 9, True, [((2, 3, 7), 1), ((2, 4, 6), 1), ((3, 4, 5), 1)])
    red = reduce_mod_coboundaries(c)
    assert red.verify()
    assert set(red.representative.support()) <= {(3, 4, 5)}


def test_reduce_representative_is_fixed():
    rep = cohomology(3, 12, True).representatives[0]
    red = reduce_mod_coboundaries(rep)
    assert red.representative == rep and red.primitive.is_zero()


def test_reduce_rejects_non_cocycles():
    with pytest.raises(NotClosedError) as info:
        reduce_mod_coboundaries(Cochain.from_terms(2, 9, True, [((2, 9), 1)]))
    assert not info.value.delta.is_zero()


def test_reduce_arity_bounds():
    with pytest.raises(CochainError):
        reduce_mod_coboundaries(Cochain.zero(0, 0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 16), st.booleans(), st.data())
def test_coboundaries_reduce_to_zero(lam, rel, data):
    prev = enumerate_basis(2, lam, rel)
    if not prev.tuples:
        return
    b = prev.from_vector([data.draw(st.integers(-5, 5)) for _ in prev])
    red = reduce_mod_coboundaries(delta_symbolic(b))
    assert red.representative.is_zero() and red.verify()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 16), st.booleans(), st.data())
def test_reduction_is_a_projection(lam, rel, data):
    basis = enumerate_basis(3, lam, rel)
    ker = kernel_basis(cocycle_matrix(3, lam, rel))
    if not ker:
        return
    coeffs = [data.draw(st.integers(-3, 3)) for _ in ker]
    z = basis.from_vector([sum(c * v[i] for c, v in zip(coeffs, ker)) for i in range(len(basis))])
    red = reduce_mod_coboundaries(z)
    assert red.verify()
    assert reduce_mod_coboundaries(red.representative).representative == red.representative


def test_relation_vector_and_row_space():
    rel = relation_vector(3, 10, True, {(3, 4, 6): 9, (2, 3, 8): 14, (2, 4, 7): -14, (2, 5, 6): 5})
    assert relation_in_rowspace(3, 10, True, rel)
    assert relation_in_rowspace(3, 10, True, [0, 0, 0, 0])
    assert not relation_in_rowspace(3, 10, True, [1, 0, 0, 0])


def test_relation_length_is_checked():
    with pytest.raises(ValueError):
        relation_in_rowspace(3, 10, True, [1, 2])


def test_report_json_keys():
    d = cohomology(3, 9, True).to_dict()
    for key in ("arity", "lambda", "relative", "dim_cochains", "dim_cocycles",
                "dim_coboundaries", "dim_cohomology", "representatives",
                "divergent_from_reference"):
        assert key in d
