"""Finite-order automorphisms of the rank-one lattice algebras.

Four primitive kinds act here: the parity involution, the torus scaling c^m on
sector m, diagonal sector phases, and quarter-turn exponentials of weight-one
zero-modes.  Exponentials are evaluated exactly: the zero-mode is diagonalized
over the Gaussian rationals on each graded piece (its spectrum must lie in
i*Z) and each eigenspace is multiplied by the appropriate power of i.

The weight-four computation at the end of the module: the fixed space of the
four-group E matches the plus space of the norm-8 lattice, weight 4 splits
into singular vectors H plus a Virasoro-descendant complement J, and the
projected pairing on H carries a faithful three-letter symmetric group action
matching the invariant algebra from symn at n = 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import I, ONE, Scalar, ZERO, as_fraction
from .fock import State, form, graded_basis, graded_dim, term_weight, theta, weight_terms
from .linalg import kernel_basis, rref, solve_columns
from .vertex import mode, virasoro
from .reptheory import GradedSubspace, singular_vectors
from . import symn


@dataclass(frozen=True)
class AutomorphismSpec:
    """Description of an automorphism; `kind` selects how `apply` acts.

    kinds: "theta"; "torus" (payload: nonzero Scalar c, acts by c^m on sector
    m); "phase" (payload: rational half_turns h, acts by the phase
    e^(pi*i*h*m*N), which must land in the fourth roots of unity); "exp"
    (payload: weight-1 State x and integer quarter_turns q, acts by i^(k*q) on
    the i*k eigenspace of the zero-mode of x); "compose" (payload: tuple of
    specs, applied right to left).
    """

    kind: str
    lattice: int
    payload: tuple = ()

    def __post_init__(self):
        if self.kind not in ("theta", "torus", "phase", "exp", "compose"):
            raise ValueError(f"unknown automorphism kind {self.kind!r}")


def theta_spec(lattice: int) -> AutomorphismSpec:
    return AutomorphismSpec("theta", lattice)


def torus_spec(lattice: int, c) -> AutomorphismSpec:
    c = Scalar.coerce(c)
    if c.is_zero():
        raise ValueError("torus scaling must be nonzero")
    return AutomorphismSpec("torus", lattice, (c,))


def phase_spec(lattice: int, half_turns) -> AutomorphismSpec:
    h = as_fraction(half_turns)
    step = 2 * h * lattice  # phase on sector m is i^(step*m)
    if step.denominator != 1:
        raise ValueError("sector phases must be fourth roots of unity")
    return AutomorphismSpec("phase", lattice, (h,))


def exp_spec(x: State, quarter_turns: int) -> AutomorphismSpec:
    if not isinstance(quarter_turns, int):
        raise ValueError("quarter_turns must be an integer")
    if x.is_zero() or not x.is_homogeneous() or x.weight() != 1:
        raise ValueError("exponentials take a nonzero weight-1 state")
    return AutomorphismSpec("exp", x.lattice, (x, quarter_turns))


def compose_specs(*specs: AutomorphismSpec) -> AutomorphismSpec:
    if not specs:
        raise ValueError("compose needs at least one spec")
    lat = specs[0].lattice
    for s in specs:
        if s.lattice != lat:
            raise ValueError("composed specs must share a lattice")
    return AutomorphismSpec("compose", lat, tuple(specs))


class SpectralError(ValueError):
    """Zero-mode failed to diagonalize with spectrum in i*Z."""


_EIGEN_CACHE: dict = {}


def _zero_mode_matrix(x: State, w: int):
    """Rows of the zero-mode of x on the canonical weight-w term basis."""
    N = x.lattice
    terms = weight_terms(N, w)
    index = {t: i for i, t in enumerate(terms)}
    d = len(terms)
    cols = []
    for t in terms:
        img = mode(x, 0, State.of_term(N, t[0], t[1]))
        col = [ZERO] * d
        for tt, c in img.terms.items():
            col[index[tt]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(d)] for i in range(d)], terms


def _eigen_data(x: State, w: int):
    """Exact eigendecomposition of the zero-mode of x at weight w.

    Returns (terms, eigenvalues-as-integers k, eigenvector columns, inverse
    rows) with the i*k eigenvector columns assembled into a basis; raises
    SpectralError if the eigenspaces do not fill the piece within the scanned
    band |k| <= 2w + 2.
    """
    key = (x.fingerprint(), w)
    hit = _EIGEN_CACHE.get(key)
    if hit is not None:
        return hit
    M, terms = _zero_mode_matrix(x, w)
    d = len(terms)
    ks: list = []
    cols: list = []
    band = 2 * w + 2
    for k in range(-band, band + 1):
        shifted = [
            [M[i][j] - (I * k if i == j else ZERO) for j in range(d)] for i in range(d)
        ]
        for vec in kernel_basis(shifted, d, ZERO, ONE):
            ks.append(k)
            cols.append(vec)
        if len(ks) == d:
            break
    if len(ks) != d:
        raise SpectralError(
            f"zero-mode spectrum at weight {w} is not i*Z-diagonalizable "
            f"(found {len(ks)} of {d} eigenvectors)"
        )
    aug = [[cols[j][i] for j in range(d)] + [ONE if r == i else ZERO for r in range(d)] for i in range(d)]
    reduced, pivots = rref(aug)
    if pivots != list(range(d)):
        raise SpectralError("eigenvectors failed to form a basis")
    inv = [row[d:] for row in reduced]
    data = (terms, ks, cols, inv)
    _EIGEN_CACHE[key] = data
    return data


def _apply_exp(x: State, q: int, s: State) -> State:
    N = s.lattice
    by_weight: dict = {}
    for t, c in s.terms.items():
        wt = term_weight(N, t)
        if wt.denominator != 1:
            raise ValueError("exponentials need integral weights")
        by_weight.setdefault(int(wt), {})[t] = c
    out = State(N, {})
    for w, terms_dict in by_weight.items():
        terms, ks, cols, inv = _eigen_data(x, w)
        index = {t: i for i, t in enumerate(terms)}
        vec = [ZERO] * len(terms)
        for t, c in terms_dict.items():
            vec[index[t]] = c
        coords = [
            sum((inv[r][j] * vec[j] for j in range(len(vec))), ZERO)
            for r in range(len(vec))
        ]
        new = [ZERO] * len(vec)
        for j, (k, col) in enumerate(zip(ks, cols)):
            cj = coords[j]
            if cj.is_zero():
                continue
            phase = I ** ((k * q) % 4)
            scale = phase * cj
            for r in range(len(vec)):
                if col[r]:
                    new[r] = new[r] + scale * col[r]
        out = out + State(N, {terms[r]: new[r] for r in range(len(vec)) if new[r]})
    return out


def apply(spec: AutomorphismSpec, s: State) -> State:
    """Apply the described automorphism to a state, exactly."""
    if spec.lattice != s.lattice:
        raise ValueError("spec and state live on different lattices")
    if spec.kind == "theta":
        return theta(s)
    if spec.kind == "torus":
        (c,) = spec.payload
        return State(
            s.lattice, {t: coeff * c ** t[0] for t, coeff in s.terms.items()}
        )
    if spec.kind == "phase":
        (h,) = spec.payload
        step = int(2 * h * s.lattice)
        return State(
            s.lattice,
            {t: coeff * I ** ((step * t[0]) % 4) for t, coeff in s.terms.items()},
        )
    if spec.kind == "exp":
        x, q = spec.payload
        return _apply_exp(x, q, s)
    out = s
    for inner in reversed(spec.payload):
        out = apply(inner, out)
    return out


def check_automorphism(spec: AutomorphismSpec, max_weight: int) -> dict:
    """Verify the defining compatibility with every mode on graded bases.

    For all basis states u, v of weight <= max_weight and every mode index
    whose result weight stays in range, the image of u_k v must equal
    (image u)_k (image v); the conformal vector and the vacuum must be fixed.
    Returns per-weight-pair rows and an overall flag.
    """
    N = spec.lattice
    W = int(max_weight)
    rows = []
    ok_all = True
    vac = State.vacuum(N)
    om = State.omega(N)
    fixed_vac = apply(spec, vac) == vac
    fixed_om = apply(spec, om) == om
    rows.append({"pair": "vacuum", "ok": fixed_vac})
    rows.append({"pair": "conformal-vector", "ok": fixed_om})
    ok_all = ok_all and fixed_vac and fixed_om
    bases = {w: graded_basis(N, w, "full") for w in range(W + 1)}
    images = {
        w: [apply(spec, b) for b in bases[w]] for w in range(W + 1)
    }
    for wu in range(W + 1):
        for wv in range(W + 1):
            good = True
            total = wu + wv
            for iu, u in enumerate(bases[wu]):
                gu = images[wu][iu]
                for iv, v in enumerate(bases[wv]):
                    gv = images[wv][iv]
                    for k in range(total - 1 - W, total):
                        lhs = apply(spec, mode(u, k, v))
                        rhs = mode(gu, k, gv)
                        if lhs != rhs:
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    break
            rows.append({"pair": (wu, wv), "ok": good})
            ok_all = ok_all and good
    return {"rows": rows, "ok": ok_all}


def y_basis():
    """The rescaled weight-1 triple of the norm-2 lattice with cyclic
    brackets [y_j, y_(j+1)] = y_(j+2)."""
    ihalf = Scalar(0, Fraction(1, 2))
    mhalf = Scalar(Fraction(-1, 2))
    alpha = State.of_term(2, 0, (1,))
    xp = State.of_term(2, 1)
    xm = State.of_term(2, -1)
    return (ihalf * alpha, ihalf * (xp + xm), mhalf * (xp - xm))


def rotation_sigma(j: int) -> AutomorphismSpec:
    """Quarter-turn exponential realizing the j-th line transposition.

    The returned automorphism fixes the j-th distinguished weight-1 line and
    swaps the other two; the exponentiated axis for j = 1, 2, 3 is y_1, y_3,
    y_2 respectively (the middle case follows the swap-lines-1-and-2
    description rather than the cycle pattern of the other two).
    """
    y1, y2, y3 = y_basis()
    axis = {1: y1, 2: y3, 3: y2}
    if j not in axis:
        raise ValueError("rotation index must be 1, 2 or 3")
    return exp_spec(axis[j], 1)


def e_group():
    """The four-group: identity is omitted; tau1 is the sector-sign phase."""
    tau1 = phase_spec(2, Fraction(1, 2))
    th = theta_spec(2)
    return (tau1, th, compose_specs(th, tau1))


def e_fixed_check(max_weight: int) -> dict:
    """Graded dimensions of the E-fixed subspace against the norm-8 plus space."""
    W = int(max_weight)
    rows = []
    ok_all = True
    specs = e_group()
    for w in range(W + 1):
        efixed = graded_dim(2, w, "efixed")
        target = graded_dim(8, w, "plus")
        fixed_ok = True
        for b in graded_basis(2, w, "efixed"):
            for spec in specs:
                if apply(spec, b) != b:
                    fixed_ok = False
        good = efixed == target and fixed_ok
        rows.append(
            {
                "weight": w,
                "efixed_dim": efixed,
                "plus8_dim": target,
                "pointwise_fixed": fixed_ok,
                "ok": good,
            }
        )
        ok_all = ok_all and good
    return {"rows": rows, "ok": ok_all}


def pairing_p(x: State, y: State) -> State:
    """The weight-4 pairing: the mode reading the fourth-power coefficient."""
    for s in (x, y):
        if not s.is_homogeneous() or s.weight() != 4:
            raise ValueError("the pairing takes weight-4 states")
    return mode(x, 3, y)


def split_H_J():
    """Split weight 4 of the E-fixed model into singular vectors and
    Virasoro descendants, with the projector onto the first factor."""
    H = singular_vectors(2, 4, "efixed")
    vac = State.vacuum(2)
    om = State.omega(2)
    J = [virasoro(-2, om), virasoro(-4, vac)]
    if len(H) != 2:
        raise AssertionError("singular block is not 2-dimensional")
    sub = GradedSubspace(2, 4)
    basis_cols = [sub.coords(v, 4) for v in H + J]
    probe = GradedSubspace(2, 4)
    for v in H + J:
        if probe.insert(v) is None:
            raise AssertionError("weight-4 sum is not direct")

    def q(v: State) -> State:
        if v.is_zero():
            return v
        if not v.is_homogeneous() or v.weight() != 4:
            raise ValueError("the projector acts on weight-4 states")
        target = sub.coords(v, 4)
        combo = solve_columns(basis_cols, target)
        if combo is None:
            raise ValueError("state lies outside the E-fixed weight-4 piece")
        out = State(2, {})
        for c, h in zip(combo[:2], H):
            if c:
                out = out + c * h
        return out

    return H, J, q


def _efixed4_matrix(spec_or_matrix, basis, sub):
    """Matrix (rows) of an automorphism on the E-fixed weight-4 basis."""
    cols = []
    basis_cols = [sub.coords(b, 4) for b in basis]
    for b in basis:
        img = apply(spec_or_matrix, b)
        combo = solve_columns(basis_cols, sub.coords(img, 4))
        if combo is None:
            raise AssertionError("automorphism left the E-fixed weight-4 piece")
        cols.append(combo)
    d = len(basis)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _mat_mul(A, B):
    d = len(A)
    return [
        [sum((A[i][k] * B[k][j] for k in range(d)), ZERO) for j in range(d)]
        for i in range(d)
    ]


def _line_permutation(spec) -> tuple:
    """Permutation induced on the three distinguished weight-1 lines."""
    ys = y_basis()
    sub = [GradedSubspace(2, 1) for _ in ys]
    for g, y in zip(sub, ys):
        g.insert(y)
    out = []
    for y in ys:
        img = apply(spec, y)
        hits = [j for j, g in enumerate(sub) if g.contains(img)]
        if len(hits) != 1:
            raise AssertionError("image of a distinguished line is not a line")
        out.append(hits[0])
    if sorted(out) != [0, 1, 2]:
        raise AssertionError("line images do not form a permutation")
    return tuple(out)


def sym3_report() -> dict:
    """The weight-4 computation: coset representatives, faithfulness, the
    projected pairing on H, and the match with the n=3 invariant algebra."""
    rows = []
    ok_all = True

    def check(name, location, expected, actual):
        nonlocal ok_all
        good = expected == actual
        ok_all = ok_all and good
        rows.append(
            {
                "name": name,
                "status": "pass" if good else "fail",
                "expected": expected,
                "actual": actual,
                "location": location,
            }
        )

    basis4 = graded_basis(2, 4, "efixed")
    check("weight-4 E-fixed dimension", "v4-span", 4, len(basis4))
    sub4 = GradedSubspace(2, 4)
    inserted = sum(1 for b in basis4 if sub4.insert(b) is not None)
    check("spanning set independent", "v4-span", 4, inserted)

    s1, s2, s3 = rotation_sigma(1), rotation_sigma(2), rotation_sigma(3)
    perms = {"id": (0, 1, 2)}
    mats = {}
    ident = [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
    mats["id"] = ident
    for name, spec in (("s1", s1), ("s2", s2), ("s3", s3)):
        perms[name] = _line_permutation(spec)
        mats[name] = _efixed4_matrix(spec, basis4, sub4)
    check("s1 line action", "line-permutations", (0, 2, 1), perms["s1"])
    check("s2 line action", "line-permutations", (1, 0, 2), perms["s2"])
    check("s3 line action", "line-permutations", (2, 1, 0), perms["s3"])

    # three-cycles as matrix products (E acts trivially here, so products of
    # representatives represent the product cosets)
    mats["rho"] = _mat_mul(mats["s2"], mats["s1"])  # lines 0->1->2->0
    mats["rho2"] = _mat_mul(mats["s1"], mats["s2"])
    perms["rho"] = tuple(perms["s2"][perms["s1"][i]] for i in range(3))
    perms["rho2"] = tuple(perms["s1"][perms["s2"][i]] for i in range(3))
    check("three-cycle line action", "line-permutations", (1, 2, 0), perms["rho"])
    check(
        "all six line permutations",
        "line-permutations",
        6,
        len(set(perms.values())),
    )
    check(
        "faithful on weight 4",
        "v4-faithfulness",
        6,
        len({tuple(tuple(c for c in row) for row in m) for m in mats.values()}),
    )
    check("involutions differ", "v4-faithfulness", False, mats["s1"] == mats["s2"])

    # s1 fixes every sector-0 (polynomial) vector; s2 moves at least one
    poly_indices = [i for i, b in enumerate(basis4) if all(t[0] == 0 for t in b.terms)]
    s1_fixes_poly = all(
        all(
            (mats["s1"][r][i] == (ONE if r == i else ZERO)) for r in range(4)
        )
        for i in poly_indices
    )
    s2_fixes_poly = all(
        all(
            (mats["s2"][r][i] == (ONE if r == i else ZERO)) for r in range(4)
        )
        for i in poly_indices
    )
    check("first involution fixes polynomials", "polynomial-part", True, s1_fixes_poly)
    check("second involution moves polynomials", "polynomial-part", False, s2_fixes_poly)

    H, J, q = split_H_J()
    check("dim H", "h-j-split", 2, len(H))
    check("dim J", "h-j-split", 2, len(J))
    a31 = State.of_term(2, 0, (3, 1))
    check("projector keeps the cross term", "h-j-split", False, q(a31).is_zero())
    check("projector annihilates J", "h-j-split", True, all(q(j).is_zero() for j in J))
    qq_ok = True
    for h in H:
        if q(h) != h:
            qq_ok = False
    check("projector restricts to identity on H", "h-j-split", True, qq_ok)

    # J is fixed pointwise by the representatives
    j_fixed = True
    for spec in (s1, s2, s3):
        for jv in J:
            if apply(spec, jv) != jv:
                j_fixed = False
    check("J fixed pointwise", "h-j-split", True, j_fixed)

    # restriction to H: matrices in the basis H, via coordinates
    sub_h = GradedSubspace(2, 4)
    h_cols = [sub_h.coords(h, 4) for h in H]

    def h_restriction(apply_state):
        cols = []
        for h in H:
            img = apply_state(h)
            combo = solve_columns(h_cols, sub_h.coords(img, 4))
            if combo is None:
                raise AssertionError("H is not preserved")
            cols.append(combo)
        return [[cols[j][i] for j in range(len(H))] for i in range(len(H))]

    h_mats = {
        "id": h_restriction(lambda v: v),
        "s1": h_restriction(lambda v: apply(s1, v)),
        "s2": h_restriction(lambda v: apply(s2, v)),
        "s3": h_restriction(lambda v: apply(s3, v)),
        "rho": h_restriction(lambda v: apply(s2, apply(s1, v))),
        "rho2": h_restriction(lambda v: apply(s1, apply(s2, v))),
    }
    traces = {name: m[0][0] + m[1][1] for name, m in h_mats.items()}
    check("H trace of identity", "h-irreducible", Scalar(2), traces["id"])
    check(
        "H traces of involutions",
        "h-irreducible",
        [ZERO, ZERO, ZERO],
        [traces["s1"], traces["s2"], traces["s3"]],
    )
    check(
        "H traces of three-cycles",
        "h-irreducible",
        [Scalar(-1), Scalar(-1)],
        [traces["rho"], traces["rho2"]],
    )

    # Gram matrix invariance on weight 4
    gram_ok = True
    for name in ("s1", "s2", "s3"):
        spec = {"s1": s1, "s2": s2, "s3": s3}[name]
        for u in basis4:
            for v in basis4:
                if form(apply(spec, u), apply(spec, v)) != form(u, v):
                    gram_ok = False
    check("invariant form on weight 4", "form-invariance", True, gram_ok)

    # the product on H and the equivariant identification with the n=3 algebra
    def star(u, v):
        return q(pairing_p(u, v))

    product_nonzero = any(
        not star(H[i], H[j]).is_zero() for i in range(2) for j in range(2)
    )
    check("projected pairing nonzero on H", "h-algebra", True, product_nonzero)
    comm_ok = star(H[0], H[1]) == star(H[1], H[0])
    check("projected pairing commutative", "h-algebra", True, comm_ok)

    # axis states: the +1 eigenvector of the first involution on H, and its
    # rotations under the three-cycle
    M1 = h_mats["s1"]
    shifted = [
        [M1[0][0] - ONE, M1[0][1]],
        [M1[1][0], M1[1][1] - ONE],
    ]
    plus_space = kernel_basis(shifted, 2, ZERO, ONE)
    check("first involution has a 1-dim fixed line in H", "h-algebra", 1, len(plus_space))
    c0, c1 = plus_space[0]
    h1 = c0 * H[0] + c1 * H[1]
    rho = lambda v: apply(s2, apply(s1, v))
    h2 = rho(h1)
    h3 = rho(h2)
    check("axis orbit sums to zero", "h-algebra", True, (h1 + h2 + h3).is_zero())

    A3 = symn.build(3)
    third = Scalar(Fraction(1, 3))

    def phi(vec_p):
        a, b = symn.diff_coords(vec_p)
        return third * (Scalar(a) * (h1 - h2) + Scalar(b) * (h2 - h3))

    d1, d2 = A3.basis
    pairs = [(d1, d1), (d1, d2), (d2, d2)]
    scale = None
    match = True
    for u, v in pairs:
        lhs = star(phi(u), phi(v))
        rhs = phi(A3.multiply(u, v))
        if rhs.is_zero():
            if not lhs.is_zero():
                match = False
            continue
        # find s with lhs = s * rhs by comparing any nonzero coordinate
        sub_c = GradedSubspace(2, 4)
        lv = sub_c.coords(lhs, 4)
        rv = sub_c.coords(rhs, 4)
        s_here = None
        for a, b in zip(lv, rv):
            if b:
                s_here = a / b
                break
        if s_here is None:
            match = False
            continue
        if any((a - s_here * b) for a, b in zip(lv, rv)):
            match = False
            continue
        if scale is None:
            scale = s_here
        elif scale != s_here:
            match = False
    check("H algebra matches the n=3 invariant algebra up to one scalar", "h-algebra", True, match and scale is not None and not scale.is_zero())

    # equivariance of the identification on both generators of the group:
    # the first involution fixes axis 1 (permutation (0)(12) on axes), the
    # second swaps axes 0 and 1
    equi_ok = True
    for sigma, spec in (((0, 2, 1), s1), ((1, 0, 2), s2)):
        for vec in (d1, d2):
            lhs = phi(A3.permute(sigma, vec))
            rhs = apply(spec, phi(vec))
            if lhs != rhs:
                equi_ok = False
    check("identification is equivariant", "h-algebra", True, equi_ok)

    return {
        "rows": rows,
        "ok": ok_all,
        "scale": scale,
        "matrices": mats,
        "h_matrices": h_mats,
        "line_permutations": perms,
    }
