"""Module engines: closures, singular vectors, couplings, fusion spans."""

from fractions import Fraction

import pytest

from voaplus.fock import State, graded_dim
from voaplus.numeric import Scalar, virasoro_character
from voaplus.reptheory import (
    CGLabel,
    GradedSubspace,
    cg_coefficient,
    character_decomposition_suite,
    closure,
    fusion_span,
    lower_u,
    parity_sweep,
    rescale_heisenberg_state,
    singular_vectors,
    tensor_decompose,
)
from voaplus.vertex import mode, virasoro


def character_dims(h, max_weight):
    ch = virasoro_character(Fraction(h), Fraction(max_weight + 1))
    return [int(ch.coeff(Fraction(w) - Fraction(1, 24)).re) for w in range(max_weight + 1)]


def test_graded_subspace_insert_and_membership():
    sub = GradedSubspace(2, 4)
    a = State.of_term(2, 0, (1, 1))
    b = State.of_term(2, 0, (2,))
    assert sub.insert(a) is not None
    assert sub.insert(a * 5) is None
    assert sub.insert(a + b) is not None
    assert sub.contains(a * 3 + b * Scalar(0, 2))
    assert sub.dim(2) == 2 and sub.dims() == [0, 0, 2, 0, 0]
    with pytest.raises(ValueError):
        sub.insert(State.of_term(2, 0, (5,)))  # weight above the window
    with pytest.raises(ValueError):
        sub.insert(State.of_term(2, 1, (1,)) + State.of_term(2, 0, (1,)))  # mixed


def test_closure_of_the_conformal_vector_is_the_vacuum_module():
    sub = closure(2, [State.omega(2)], 8)
    assert sub.dims() == character_dims(0, 8)


def test_closure_monotone_idempotent_and_schedule_independent():
    om = State.omega(2)
    u4 = lower_u(2)
    small = closure(2, [om], 6)
    big = closure(2, [om, u4], 6)
    for w in range(7):
        assert small.dim(w) <= big.dim(w)
    again = closure(2, [b for w in range(7) for b in big.basis_states(w)], 6)
    assert again.same_space(big)
    fifo = closure(2, [om, u4], 6, schedule="fifo")
    assert fifo.same_space(big)


def test_lower_u_produces_singular_vectors():
    # lower_u(1) is a nonzero multiple of g(-1) vacuum
    u1 = lower_u(1)
    assert u1.terms and set(u1.terms) == {(0, (1,))}
    for m in (1, 2, 3):
        um = lower_u(m)
        assert um.weight() == Fraction(m * m)
        assert virasoro(0, um) == um * (m * m)
        for k in (1, 2, 3, 4):
            assert virasoro(k, um) == State(2, {})
        assert mode(State.of_term(2, 0, (1,)), 0, um) == State(2, {})


def test_singular_vectors_in_the_even_heisenberg_space():
    counts = [len(singular_vectors(2, w, "pair+:0")) for w in range(7)]
    assert counts == [1, 0, 0, 0, 1, 0, 0]
    s4 = singular_vectors(2, 4, "pair+:0")[0]
    sub = GradedSubspace(2, 4)
    sub.insert(s4)
    assert sub.contains(lower_u(2) * _leading_ratio(lower_u(2), s4))
    for k in (1, 2, 3, 4):
        assert virasoro(k, s4) == State(2, {})


def _leading_ratio(a, b):
    term, ca = next(iter(a.sorted_terms()))
    cb = b.terms.get(term)
    return (cb / ca) if cb else Scalar(1)


def test_rescale_heisenberg_state_moves_between_lattices():
    u4 = lower_u(2)
    moved = rescale_heisenberg_state(u4, 6)
    assert moved.lattice == 6
    assert moved.weight() == Fraction(4)
    for k in (1, 2, 3, 4):
        assert virasoro(k, moved) == State(6, {})
    with pytest.raises(ValueError):
        rescale_heisenberg_state(State.of_term(2, 1, (1, 1)), 6)  # nonzero sector
    with pytest.raises(ValueError):
        rescale_heisenberg_state(State.of_term(2, 0, (2, 1, 1)), 6)  # odd part count


def test_cg_label_validation():
    with pytest.raises(ValueError):
        CGLabel(2, 2, 1)  # odd label
    with pytest.raises(ValueError):
        CGLabel(2, 2, 6)  # outside the tensor range
    with pytest.raises(ValueError):
        CGLabel(4, 0, 2)  # below the tensor range


def test_tensor_decompose_range():
    assert tensor_decompose(4, 2) == [2, 4, 6]
    assert tensor_decompose(2, 4) == [2, 4, 6]
    assert tensor_decompose(0, 0) == [0]


def sl2_coupling_oracle(m, n, i):
    """Signed square of the zero-weight coupling, built from the raw tensor.

    Works in the unnormalized bases F^r v of the two factors, locates the
    highest-weight vector of the label-i constituent (phase fixed so the
    coefficient on the highest-m1 component is positive), lowers it to weight
    zero, and projects the product of the two weight-zero vectors using the
    exact Gram data <F^r v, F^r v> = prod_{s<=r} s(m-s+1).
    """
    if (m + n + i) % 2 or not abs(m - n) <= i <= m + n:
        return Fraction(0)

    def gram(mm):
        out = [Fraction(1)]
        for s in range(1, mm + 1):
            out.append(out[-1] * s * (mm - s + 1))
        return out

    gm, gn, gi = gram(m), gram(n), gram(i)
    # tensor basis (r, s): F^r v_m x F^s v_n; E acts factorwise
    pairs_at = lambda wt: [
        (r, (m + n - wt) // 2 - r)
        for r in range(m + 1)
        if 0 <= (m + n - wt) // 2 - r <= n
    ]
    # highest-weight vector of the label-i constituent: solve E x = 0 at weight i
    level = (m + n - i) // 2
    basis = pairs_at(i)
    above = pairs_at(i + 2)
    rows = {p: {} for p in above}
    for col, (r, s) in enumerate(basis):
        if r:
            rows[(r - 1, s)][col] = Fraction(r * (m - r + 1))
        if s:
            rows[(r, s - 1)][col] = Fraction(s * (n - s + 1))
    # eliminate to find the one-dimensional kernel
    mat = [[row.get(c, Fraction(0)) for c in range(len(basis))] for row in rows.values()]
    kern = _kernel_1d(mat, len(basis))
    if kern[0] < 0:  # highest-m1 component is basis[0] = (level, ...) ordering
        kern = [-c for c in kern]
    hw = dict(zip(basis, kern))
    # lower i/2 times to weight zero
    vec = hw
    for _ in range(i // 2):
        nxt = {}
        for (r, s), c in vec.items():
            if c:
                if r < m:
                    nxt[(r + 1, s)] = nxt.get((r + 1, s), Fraction(0)) + c
                if s < n:
                    nxt[(r, s + 1)] = nxt.get((r, s + 1), Fraction(0)) + c
        vec = nxt
    # inner products against w_{m,0} x w_{n,0} = F^{m/2} v x F^{n/2} v
    target = (m // 2, n // 2)
    dot = vec.get(target, Fraction(0)) * gm[m // 2] * gn[n // 2]
    norm_sq = sum(c * c * gm[r] * gn[s] for (r, s), c in vec.items())
    target_norm_sq = gm[m // 2] * gn[n // 2]
    # c = <vec, w00> / (|vec| |w00|); return sign(c) * c^2, all rational
    num = dot * dot
    den = norm_sq * target_norm_sq
    signed = Fraction(num, den)
    return signed if dot >= 0 else -signed


def _kernel_1d(mat, ncols):
    from voaplus.linalg import kernel_basis

    ker = kernel_basis(mat, ncols, Fraction(0), Fraction(1))
    assert len(ker) == 1
    return ker[0]


def test_cg_coefficient_against_tensor_oracle():
    for m in range(0, 5, 2):
        for n in range(0, 5, 2):
            for i in tensor_decompose(m, n):
                got = cg_coefficient(CGLabel(max(m, n), min(m, n), i))
                want = sl2_coupling_oracle(max(m, n), min(m, n), i)
                assert got == Scalar(want), (m, n, i)


def test_cg_symmetry_and_parity():
    for m in range(0, 9, 2):
        for n in range(0, m + 1, 2):
            for i in tensor_decompose(m, n):
                a = cg_coefficient(CGLabel(m, n, i))
                assert a == cg_coefficient((m, n, i))
                odd = ((m + n + i) // 2) % 2 == 1
                assert a.is_zero() == odd
    sweep = parity_sweep(8)
    assert sweep["all_match"]
    assert len(sweep["entries"]) == sum(
        len(tensor_decompose(m, n)) for m in range(0, 9, 2) for n in range(0, 9, 2)
    )


def test_fusion_span_matches_and_never_exceeds():
    res = fusion_span(1, 1, 6)
    assert res["components"] == [0, 2]
    assert res["all_match"]
    for w, row in res["per_weight"].items():
        assert row["actual"] <= row["predicted"]
    res21 = fusion_span(1, 2, 6)  # arguments swap to (2, 1)
    assert res21["components"] == [1, 3]
    assert res21["all_match"]
    with pytest.raises(ValueError):
        fusion_span(1, 0, 4)


def test_character_decomposition_suite_small():
    rows = character_decomposition_suite(2, 6, 20)
    assert rows and all(r["status"] == "pass" for r in rows)
    names = [r["name"] for r in rows]
    assert any("full" in x for x in names)
    with pytest.raises(ValueError):
        character_decomposition_suite(2, 20, 10)  # order must exceed the window
