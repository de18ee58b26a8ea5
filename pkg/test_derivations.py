#!/usr/bin/env python3
"""
Test script for the derivation solver.
Checks Der(L) against the published families, the exhaustive GF(5) oracle,
Lie closure of the bracket and equivariance under base change.
"""

import subprocess
import sys
from pathlib import Path

import pytest

import config
import derivations
from algebra import Algebra, change_basis, direct_sum, jacobiator, make_algebra, multiply, with_field
from catalog import CATALOG_NAMES, abelian_names, catalog_entry, non_abelian_names
from derivations import (ClosureError, DerivationSpace, OracleTooLargeError, SolverConsistencyError,
                         block_diagonal_derivation, bracket, conjugate_space, constraint_matrix,
                         der_structure_constants, derivation_basis, enumerate_derivations, is_derivation,
                         leibniz_defect, render_parametric, verify_against_reference, verify_catalog)
from exact_arith import FieldDescriptor, FieldError
from linalg import ExactMatrix, apply, kernel_basis, rank, subspace_equal
from parametric import ParametricFamily
from reference_families import ReferenceFamilyError, reference_family, reference_names
from util import make_rng, random_invertible_matrix, random_matrix, random_vector

Q = FieldDescriptor.rationals()
GF5 = FieldDescriptor.prime(5)

EXPECTED_DER_DIMS = {
    "A_{1,2}": 2,
    "A_{1,2}+A_{0,1}": 5,
    "A_{1,3}": 4,
    "A_{1,2}+A_{0,1}^2": 10,
    "A_{1,3}+A_{0,1}": 8,
    "A_{1,2}+A_{1,2}": 6,
    "A_{1,4}": 7,
    "A_{2,4}": 7,
}


def m(rows, field=Q):
    return ExactMatrix.from_rows(rows, field)


def test_identity_defect_on_a12():
    a12 = catalog_entry("A_{1,2}")
    identity = ExactMatrix.identity(2, Q)
    assert leibniz_defect(a12, identity, 1, 1) == (Q.zero(), Q.scalar(-1))
    assert not is_derivation(a12, identity)


def test_a12_basis():
    space = derivation_basis(catalog_entry("A_{1,2}"))
    assert space.dim == 2
    assert list(space.basis) == [m([[1, 0], [0, 2]]), m([[0, 0], [1, 0]])]


def test_a12_constraint_rank():
    system = constraint_matrix(catalog_entry("A_{1,2}"))
    assert system.shape == (6, 4)
    assert rank(system) == 2


def test_bracket_of_a12_basis():
    d1, d2 = m([[1, 0], [0, 2]]), m([[0, 0], [1, 0]])
    assert bracket(d1, d2) == d2
    tensor = der_structure_constants(catalog_entry("A_{1,2}"))
    assert tensor.coeffs == {(1, 2, 2): Q.one(), (2, 1, 2): Q.scalar(-1)}


def test_render_a12():
    family = render_parametric(derivation_basis(catalog_entry("A_{1,2}")))
    assert family.as_strings() == [["d11", "0"], ["d21", "2d11"]]
    assert family.render() == "[  d11     0 ]\n[  d21  2d11 ]"


def test_render_a24_coupled_entries():
    family = render_parametric(derivation_basis(catalog_entry("A_{2,4}")))
    grid = family.as_strings()
    assert grid[0][2] == "-d41"
    assert grid[0][3] == "-d31"
    assert family.dimension == 7


@pytest.mark.parametrize("name", list(EXPECTED_DER_DIMS))
def test_verify_against_reference(name):
    report = verify_against_reference(name)
    assert report.spaces_equal
    assert report.computed_dim == EXPECTED_DER_DIMS[name]
    assert report.reference_dim == EXPECTED_DER_DIMS[name]
    assert report.discrepancy is None


def test_reference_families_match_render_dimension():
    for name in reference_names():
        family = reference_family(name)
        assert family.dimension == render_parametric(derivation_basis(catalog_entry(name))).dimension


def test_reference_family_unknown_and_abelian():
    with pytest.raises(ReferenceFamilyError):
        reference_family("A_{0,1}^2")
    with pytest.raises(ReferenceFamilyError):
        verify_against_reference("nonsense")


def test_mismatch_reports_witness(monkeypatch):
    wrong = ParametricFamily.from_strings([["d11", "0"], ["d21", "d11"]], Q)
    monkeypatch.setattr(derivations, "reference_family", lambda name, field=None: wrong)
    report = verify_against_reference("A_{1,2}")
    assert not report.spaces_equal
    assert report.discrepancy_side == "computed"
    assert report.discrepancy == m([[1, 0], [0, 2]])


def test_verify_catalog_in_order():
    reports = verify_catalog(max_workers=2)
    assert [r.catalog_name for r in reports] == list(non_abelian_names())
    assert [r.computed_dim for r in reports] == [2, 5, 4, 10, 8, 6, 7, 7]
    assert all(r.spaces_equal for r in reports)


def test_verify_catalog_prime_field():
    reports = verify_catalog(GF5, names=["A_{1,2}", "A_{1,3}"])
    assert all(r.spaces_equal for r in reports)


def test_verify_catalog_rejects_small_characteristic():
    for p in (2, 3):
        with pytest.raises(FieldError):
            verify_catalog(FieldDescriptor.prime(p))


def test_exhaustive_oracle_gf5():
    a12 = with_field(catalog_entry("A_{1,2}"), GF5)
    found = enumerate_derivations(a12)
    space = derivation_basis(a12)
    assert len(found) == 25 == 5 ** space.dim
    assert all(space.contains(d) for d in found)


def test_oracle_guards():
    with pytest.raises(FieldError):
        enumerate_derivations(catalog_entry("A_{1,2}"))
    with pytest.raises(OracleTooLargeError):
        enumerate_derivations(with_field(catalog_entry("A_{1,3}"), GF5))


def test_abelian_baseline():
    assert [derivation_basis(catalog_entry(name)).dim for name in abelian_names()] == [1, 4, 9, 16]


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_rank_plus_nullity(name):
    a = catalog_entry(name)
    system = constraint_matrix(a)
    assert rank(system) + len(kernel_basis(system)) == a.dim ** 2


def test_non_commutative_input_uses_every_pair():
    lopsided = make_algebra("lopsided", 2, {(1, 2): {1: 1}})
    assert constraint_matrix(lopsided, all_pairs=True).rows == 8
    for d in derivation_basis(lopsided).basis:
        assert is_derivation(lopsided, d)


def test_basis_is_sound_on_random_pairs():
    rng = make_rng()
    spaces = {name: derivation_basis(catalog_entry(name)) for name in non_abelian_names()}
    checked = 0
    while checked < config.PROPERTY_SAMPLES:
        for name, space in spaces.items():
            a = catalog_entry(name)
            x, y = random_vector(rng, Q, a.dim), random_vector(rng, Q, a.dim)
            for d in space.basis:
                lhs = apply(d, multiply(a, x, y))
                rhs = [u + v for u, v in zip(multiply(a, apply(d, x), y), multiply(a, x, apply(d, y)))]
                assert list(lhs) == rhs
            checked += 1


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_bracket_closure(name):
    a = catalog_entry(name)
    tensor = der_structure_constants(a)
    for p, q, r in tensor.coeffs:
        assert tensor.coefficient(q, p, r) == -tensor.coefficient(p, q, r)


@pytest.mark.parametrize("name", non_abelian_names())
def test_der_satisfies_jacobi(name):
    tensor = der_structure_constants(catalog_entry(name))
    lie = Algebra(f"Der({name})", tensor)
    n = tensor.dim
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                assert all(x.value == 0 for x in jacobiator(lie, i, j, k))


def test_closure_error_for_non_subalgebra():
    # E_12 and E_21 alone do not close under the commutator
    space = DerivationSpace(2, (m([[0, 1], [0, 0]]), m([[0, 0], [1, 0]])), Q)
    with pytest.raises(ClosureError):
        der_structure_constants(make_algebra("abelian", 2, {}), space)


def test_coordinates():
    space = derivation_basis(catalog_entry("A_{1,2}"))
    assert space.coordinates(m([[2, 0], [5, 4]])) == (Q.scalar(2), Q.scalar(5))
    assert space.coordinates(ExactMatrix.identity(2, Q)) is None


def test_direct_sum_lower_bound():
    a12, a13 = catalog_entry("A_{1,2}"), catalog_entry("A_{1,3}")
    total = direct_sum(a12, a13)
    left, right = derivation_basis(a12), derivation_basis(a13)
    space = derivation_basis(total)
    assert space.dim >= left.dim + right.dim
    zero2, zero3 = ExactMatrix.zeros(2, 2, Q), ExactMatrix.zeros(3, 3, Q)
    for d in left.basis:
        assert is_derivation(total, block_diagonal_derivation(d, zero3))
    for d in right.basis:
        assert space.contains(block_diagonal_derivation(zero2, d))


def test_equivariance_under_base_change():
    rng = make_rng()
    names = non_abelian_names()
    for sample in range(config.PROPERTY_SAMPLES):
        a = catalog_entry(names[sample % len(names)])
        p = random_invertible_matrix(rng, Q, a.dim)
        transported = derivation_basis(change_basis(a, p))
        conjugated = conjugate_space(derivation_basis(a), p)
        assert subspace_equal(transported.vectors(), conjugated.vectors()), (a.name, p)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_constraint_matrix_matches_leibniz_defect(name):
    a = catalog_entry(name)
    n = a.dim
    rng = make_rng()
    for _ in range(5):
        d = random_matrix(rng, Q, n, n)
        stacked = tuple(x for i in range(1, n + 1) for j in range(i, n + 1) for x in leibniz_defect(a, d, i, j))
        assert apply(constraint_matrix(a), d.flatten()) == stacked


def test_constraint_matrix_all_pairs_matches_leibniz_defect():
    lopsided = make_algebra("lopsided", 2, {(1, 2): {1: 1}, (2, 2): {1: 2}})
    d = random_matrix(make_rng(), Q, 2, 2)
    stacked = tuple(x for i in range(1, 3) for j in range(1, 3) for x in leibniz_defect(lopsided, d, i, j))
    assert apply(constraint_matrix(lopsided, all_pairs=True), d.flatten()) == stacked


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_render_substitution_recovers_space(name):
    space = derivation_basis(catalog_entry(name))
    family = render_parametric(space)
    assert family.dimension == space.dim
    assert subspace_equal([d.flatten() for d in family.basis()], space.vectors())


def test_render_abelian_dim_two():
    family = render_parametric(derivation_basis(catalog_entry("A_{0,1}^2")))
    assert family.used_parameters == ("d11", "d21", "d12", "d22")
    assert family.as_strings() == [["d11", "d12"], ["d21", "d22"]]


def test_kernel_vector_failing_leibniz_is_reported(monkeypatch):
    monkeypatch.setattr(derivations, "kernel_basis", lambda system: [ExactMatrix.identity(2, Q).flatten()])
    with pytest.raises(SolverConsistencyError):
        derivation_basis(catalog_entry("A_{1,2}"))


def test_verify_catalog_in_fresh_process():
    # Grammar parse actions run for the first time on the worker threads
    script = (
        "from derivations import verify_catalog\n"
        "reports = verify_catalog(max_workers=4)\n"
        "print(sum(r.spaces_equal for r in reports), len(reports))\n"
    )
    result = subprocess.run([sys.executable, "-c", script], cwd=Path(__file__).parent,
                            capture_output=True, text=True, timeout=600)
    assert result.returncode == 0, result.stderr
    assert result.stdout.split() == ["8", "8"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
