#!/usr/bin/env python3
"""
Test script for structure tensors, the axiom checker and the catalog of small Mock-Lie algebras.
"""

import pytest
from hypothesis import given, settings, strategies as st

from algebra import (AlgebraError, basis_vector, change_basis, check_axioms, cube_defect, direct_sum, invariants,
                     jacobiator, jordan_defect, make_algebra, multiply, with_field)
from catalog import CATALOG_NAMES, abelian_names, catalog, catalog_entry, non_abelian_names
from exact_arith import FieldDescriptor, FieldError, FieldMismatchError
from linalg import ExactMatrix
from util import make_rng, random_invertible_matrix, random_scalar, random_vector

Q = FieldDescriptor.rationals()
GF5 = FieldDescriptor.prime(5)


def vec(*xs, field=Q):
    return tuple(field.scalar(x) for x in xs)


def test_multiply_bilinear_extension():
    a14 = catalog_entry("A_{1,4}")
    x = vec(1, 0, 1, 0)
    assert multiply(a14, x, x) == vec(0, 1, 0, 2)


def test_catalog_entries_are_mock_lie():
    assert len(catalog()) == 12
    for entry in catalog():
        report = check_axioms(entry)
        assert report.mock_lie, entry.name
        assert report.commutative_witness is None
        assert report.jacobi_witness is None


def test_idempotent_fails_jacobi():
    a = make_algebra("idempotent", 1, {(1, 1): {1: 1}})
    assert jacobiator(a, 1, 1, 1) == vec(3)
    report = check_axioms(a)
    assert report.commutative
    assert not report.jacobi
    assert report.jacobi_witness == (1, 1, 1, 1)


def test_non_commutative_witness():
    a = make_algebra("lopsided", 2, {(1, 2): {1: 1}})
    report = check_axioms(a)
    assert not report.commutative
    assert report.commutative_witness == (1, 2, 1)


def test_index_outside_dimension():
    with pytest.raises(AlgebraError):
        make_algebra("bad", 2, {(1, 3): {1: 1}})
    with pytest.raises(AlgebraError):
        basis_vector(catalog_entry("A_{1,2}"), 3)


def test_zeros_are_not_stored():
    a = make_algebra("sparse", 2, {(1, 1): {1: 0, 2: 1}})
    assert list(a.tensor.coeffs) == [(1, 1, 2)]


def test_direct_sum_shifts_indices():
    a12 = catalog_entry("A_{1,2}")
    total = direct_sum(a12, a12)
    assert total.dim == 4
    assert total.name == "A_{1,2}+A_{1,2}"
    assert total.tensor == catalog_entry("A_{1,2}+A_{1,2}").tensor
    assert check_axioms(total).mock_lie


def test_direct_sum_field_mismatch():
    with pytest.raises(FieldMismatchError):
        direct_sum(catalog_entry("A_{1,2}"), with_field(catalog_entry("A_{1,2}"), GF5))


def test_with_field_rejects_fractions():
    half = make_algebra("half", 1, {(1, 1): {1: "1/2"}})
    with pytest.raises(FieldError):
        with_field(half, GF5)


def test_catalog_lookup():
    assert catalog_entry("A_{2,4}").dim == 4
    assert len(non_abelian_names()) == 8
    assert abelian_names() == ("A_{0,1}", "A_{0,1}^2", "A_{0,1}^3", "A_{0,1}^4")
    assert set(abelian_names()) | set(non_abelian_names()) == set(CATALOG_NAMES)
    with pytest.raises(AlgebraError):
        catalog_entry("A_{3,4}")


def test_abelian_entries_have_no_products():
    for name in abelian_names():
        assert catalog_entry(name).is_abelian()


def test_invariants():
    inv = invariants(catalog_entry("A_{1,2}"))
    assert (inv.dim, inv.dim_square, inv.dim_annihilator, inv.dim_der) == (2, 1, 1, 2)
    assert invariants(catalog_entry("A_{1,4}")).dim_square == 2
    assert invariants(catalog_entry("A_{0,1}^3")).dim_annihilator == 3


def test_change_basis_identity():
    a = catalog_entry("A_{1,4}")
    assert change_basis(a, ExactMatrix.identity(4, Q)).tensor == a.tensor


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(CATALOG_NAMES))
def test_change_basis_keeps_axioms(seed, name):
    a = catalog_entry(name)
    p = random_invertible_matrix(make_rng(seed), Q, a.dim)
    assert check_axioms(change_basis(a, p)).mock_lie


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(CATALOG_NAMES))
def test_cube_and_jordan_identities(seed, name):
    a = catalog_entry(name)
    rng = make_rng(seed)
    x, y = random_vector(rng, Q, a.dim), random_vector(rng, Q, a.dim)
    assert all(c.value == 0 for c in cube_defect(a, x))
    assert all(c.value == 0 for c in jordan_defect(a, x, y))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(CATALOG_NAMES))
def test_multiply_is_bilinear_and_symmetric(seed, name):
    a = catalog_entry(name)
    rng = make_rng(seed)
    x, y, z = (random_vector(rng, Q, a.dim) for _ in range(3))
    s = random_scalar(rng, Q)
    combined = tuple(u + s * v for u, v in zip(x, y))
    expected = tuple(u + s * v for u, v in zip(multiply(a, x, z), multiply(a, y, z)))
    assert multiply(a, combined, z) == expected
    assert multiply(a, z, combined) == expected
    assert multiply(a, x, y) == multiply(a, y, x)


def test_direct_sum_is_associative():
    a12, a13, a01 = catalog_entry("A_{1,2}"), catalog_entry("A_{1,3}"), catalog_entry("A_{0,1}")
    for x, y, z in [(a12, a13, a01), (a01, a12, a12), (a13, a01, a12)]:
        left = direct_sum(direct_sum(x, y), z)
        right = direct_sum(x, direct_sum(y, z))
        assert left.dim == right.dim == x.dim + y.dim + z.dim
        assert left.tensor == right.tensor
    assert direct_sum(direct_sum(a12, a01), a01).tensor == catalog_entry("A_{1,2}+A_{0,1}^2").tensor


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
