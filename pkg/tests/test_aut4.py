"""Tests for the finite-order automorphisms and the weight-4 computation."""

from fractions import Fraction

import pytest

from voaplus.aut4 import (
    AutomorphismSpec,
    SpectralError,
    apply,
    check_automorphism,
    compose_specs,
    e_fixed_check,
    e_group,
    exp_spec,
    pairing_p,
    phase_spec,
    rotation_sigma,
    split_H_J,
    sym3_report,
    theta_spec,
    torus_spec,
    y_basis,
    _line_permutation,
)
from voaplus.fock import State, graded_basis, graded_dim
from voaplus.numeric import I, Scalar
from voaplus.reptheory import GradedSubspace
from voaplus.vertex import bracket

ALPHA = State.of_term(2, 0, (1,))
XP = State.of_term(2, 1)
XM = State.of_term(2, -1)


def test_spec_validation():
    with pytest.raises(ValueError):
        AutomorphismSpec("bogus", 2)
    with pytest.raises(ValueError):
        torus_spec(2, 0)
    with pytest.raises(ValueError):
        phase_spec(2, Fraction(1, 3))  # phase lands outside the fourth roots
    with pytest.raises(ValueError):
        exp_spec(State.of_term(2, 0, (1, 1)), 1)  # weight 2, not 1
    with pytest.raises(ValueError):
        exp_spec(State(2, {}), 1)
    with pytest.raises(ValueError):
        exp_spec(ALPHA, "one")
    with pytest.raises(ValueError):
        compose_specs()
    with pytest.raises(ValueError):
        compose_specs(theta_spec(2), theta_spec(4))
    with pytest.raises(ValueError):
        apply(theta_spec(4), ALPHA)  # lattice mismatch


def test_exponential_of_a_real_spectrum_zero_mode_is_rejected():
    # the zero-mode of the weight-1 polynomial state has eigenvalues 2m on
    # sector m, which are not in i*Z, so the quarter-turn cannot be evaluated
    with pytest.raises(SpectralError):
        apply(exp_spec(ALPHA, 1), ALPHA)


def test_theta_squares_to_the_identity():
    th = theta_spec(2)
    for w in range(5):
        for b in graded_basis(2, w, "full"):
            assert apply(th, apply(th, b)) == b


def test_torus_and_phase_act_by_sector():
    assert apply(torus_spec(2, I), XP + XM) == I * XP + XM * Scalar(0, -1)
    assert apply(torus_spec(2, Scalar(3)), ALPHA) == ALPHA
    tau1 = phase_spec(2, Fraction(1, 2))  # (-1)^m on sector m
    assert apply(tau1, XP) == XP * Scalar(-1)
    assert apply(tau1, XM) == XM * Scalar(-1)
    assert apply(tau1, ALPHA) == ALPHA


def test_compose_applies_right_to_left():
    th = theta_spec(2)
    tor = torus_spec(2, Scalar(2))
    # torus first: 2*e^+, then the involution flips the sector
    assert apply(compose_specs(th, tor), XP) == XM * Scalar(2)
    # involution first: e^-, then the torus scales sector -1 by 1/2
    assert apply(compose_specs(tor, th), XP) == XM * Scalar(Fraction(1, 2))


def test_mode_compatibility_of_the_primitive_kinds():
    assert check_automorphism(theta_spec(2), 3)["ok"] is True
    assert check_automorphism(torus_spec(2, Scalar(3)), 2)["ok"] is True
    assert check_automorphism(phase_spec(2, Fraction(1, 2)), 2)["ok"] is True


def test_y_basis_cyclic_brackets():
    y1, y2, y3 = y_basis()
    assert bracket(y1, y2) == y3
    assert bracket(y2, y3) == y1
    assert bracket(y3, y1) == y2


def test_quarter_turn_on_the_weight_one_triple():
    y1, y2, y3 = y_basis()
    s1 = rotation_sigma(1)
    assert apply(s1, y1) == y1
    assert apply(s1, y2) == y3
    assert apply(s1, y3) == y2 * Scalar(-1)
    # squaring gives -1 on the moved lines, so the line action is an involution
    assert apply(s1, apply(s1, y2)) == y2 * Scalar(-1)


def test_line_permutations_of_the_three_rotations():
    assert _line_permutation(rotation_sigma(1)) == (0, 2, 1)
    assert _line_permutation(rotation_sigma(2)) == (1, 0, 2)
    assert _line_permutation(rotation_sigma(3)) == (2, 1, 0)
    with pytest.raises(ValueError):
        rotation_sigma(4)


def test_four_group_fixed_space_matches_the_norm_8_plus_space():
    specs = e_group()
    assert len(specs) == 3
    out = e_fixed_check(6)
    assert out["ok"] is True
    dims = [row["efixed_dim"] for row in out["rows"]]
    assert dims == [1, 0, 1, 1, 4, 4, 8]
    assert dims == [graded_dim(8, w, "plus") for w in range(7)]


def test_weight_four_split_and_projector():
    H, J, q = split_H_J()
    assert len(H) == 2 and len(J) == 2
    for h in H:
        assert q(h) == h
    for jv in J:
        assert q(jv).is_zero()
    # the pairing needs weight-4 inputs
    with pytest.raises(ValueError):
        pairing_p(ALPHA, H[0])


def test_sym3_report_is_green_with_a_nonzero_scale():
    rep = sym3_report()
    assert rep["ok"] is True
    assert all(r["status"] == "pass" for r in rep["rows"])
    assert rep["scale"] is not None and not rep["scale"].is_zero()
    assert rep["line_permutations"]["rho"] == (1, 2, 0)


def test_rotations_preserve_the_distinguished_lines_exactly():
    ys = y_basis()
    lines = []
    for y in ys:
        g = GradedSubspace(2, 1)
        g.insert(y)
        lines.append(g)
    for j in (1, 2, 3):
        spec = rotation_sigma(j)
        perm = _line_permutation(spec)
        for src, y in enumerate(ys):
            assert lines[perm[src]].contains(apply(spec, y))
