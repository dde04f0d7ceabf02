"""Tests for the permutation-invariant algebra on the zero-sum hyperplane."""

from fractions import Fraction

import pytest

from voaplus.symn import (
    PermAlgebra,
    ad_spectrum,
    invariant_algebra_report,
    build,
    char_poly,
    diff_coords,
    difference_basis,
    distinguished_idempotents,
    enumerate_idempotents_n3,
    equivariant_product_space_dim,
    nonassociativity_witness,
    rational_roots,
    trace_form,
)

F = Fraction


def test_difference_basis_and_coordinates_invert_each_other():
    for n in (3, 5):
        basis = difference_basis(n)
        assert len(basis) == n - 1
        for i, b in enumerate(basis):
            coords = diff_coords(b)
            assert coords == tuple(F(1) if j == i else F(0) for j in range(n - 1))
    # a generic zero-sum vector round-trips through its coordinates
    v = (F(3), F(-1), F(-5), F(3))
    coords = diff_coords(v)
    basis = difference_basis(4)
    rebuilt = tuple(
        sum(c * b[k] for c, b in zip(coords, basis)) for k in range(4)
    )
    assert rebuilt == v


def test_structure_constants_n3_by_hand():
    # d1 = (1,-1,0), d2 = (0,1,-1); products projected to the hyperplane
    A = build(3)
    assert A.structure[0][0] == (F(1, 3), F(2, 3))
    assert A.structure[0][1] == (F(1, 3), F(-1, 3))
    assert A.structure[1][0] == (F(1, 3), F(-1, 3))
    assert A.structure[1][1] == (F(-2, 3), F(-1, 3))


def test_product_validation():
    A = build(3)
    with pytest.raises(ValueError):
        A.multiply((1, 0, 0), (1, -1, 0))  # not zero-sum
    with pytest.raises(ValueError):
        A.multiply((1, -1), (1, -1, 0))  # wrong length
    with pytest.raises(ValueError):
        build(2)


def test_permutation_action():
    A = build(3)
    swap01 = (1, 0, 2)
    assert A.permute(swap01, (F(1), F(-1), F(0))) == (F(-1), F(1), F(0))
    cyc = (1, 2, 0)
    assert A.permute(cyc, (F(1), F(-1), F(0))) == (F(0), F(1), F(-1))


def test_equivariance_for_small_n():
    for n in (3, 4, 5):
        assert build(n).is_equivariant()


def test_distinguished_idempotents_n3_values():
    fs = distinguished_idempotents(3)
    assert fs[0] == (F(2), F(-1), F(-1))
    assert fs[1] == (F(-1), F(2), F(-1))
    assert fs[2] == (F(-1), F(-1), F(2))
    A = build(3)
    for f in fs:
        assert A.multiply(f, f) == f


def test_distinguished_idempotents_general_n():
    for n in (4, 5, 6):
        A = build(n)
        fs = distinguished_idempotents(n)
        assert len(fs) == n
        for f in fs:
            assert A.multiply(f, f) == f
            assert sum(f) == 0


def test_ad_spectrum_of_an_axis():
    for n in (3, 4, 5, 6):
        A = build(n)
        f = distinguished_idempotents(n)[0]
        roots, remainder = ad_spectrum(A, f)
        assert roots == {F(1): 1, F(-1, n - 2): n - 2}
        assert len(remainder) == 1  # constant: the polynomial split completely


def test_char_poly_and_rational_roots_on_a_known_matrix():
    # [[2,1],[1,2]] has characteristic polynomial t^2 - 4t + 3 = (t-1)(t-3)
    coeffs = char_poly([[F(2), F(1)], [F(1), F(2)]])
    assert coeffs == [F(3), F(-4), F(1)]
    roots, remainder = rational_roots(coeffs)
    assert roots == {F(1): 1, F(3): 1}
    assert len(remainder) == 1


def test_trace_form_is_the_dot_product():
    form = trace_form(3)  # raises internally if invariance fails
    d1, d2 = difference_basis(3)
    assert form(d1, d1) == F(2)
    assert form(d1, d2) == F(-1)
    assert form(d2, d2) == F(2)


def test_n3_enumeration_finds_exactly_the_three_axes():
    survivors = sorted(enumerate_idempotents_n3())
    axes = sorted(distinguished_idempotents(3))
    assert survivors == axes
    assert len(survivors) == 3


def test_equivariant_product_space_is_a_line():
    for n in (3, 4, 5, 6):
        assert equivariant_product_space_dim(n) == 1


def test_nonassociativity_witness_n3_by_hand():
    # with axes f0,f1,f2:  (f0*f0)*f1 = f0*f1 = f2  but  f0*(f0*f1) = f0*f2 = f1
    fs = distinguished_idempotents(3)
    left, right = nonassociativity_witness(3)
    assert left == fs[2]
    assert right == fs[1]
    assert left != right


def test_nonassociativity_for_larger_n():
    for n in (4, 5, 6):
        left, right = nonassociativity_witness(n)
        assert left != right


def test_invariant_algebra_report_is_all_green():
    rows = invariant_algebra_report(range(3, 9))
    assert rows and all(r["status"] == "pass" for r in rows)
    names = [r["name"] for r in rows]
    assert "n=3 exhaustive filter" in names
    assert any(name.startswith("ad-spectrum n=8") for name in names)
