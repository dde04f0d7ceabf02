"""The (n-1)-dimensional permutation-invariant commutative algebra.

Vectors live in the zero-sum hyperplane M of P = Q^n, where P multiplies
coordinatewise with orthonormal idempotent axes.  The product on M projects
the P-product back onto M; everything here is exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .linalg import kernel_basis, rref

F0 = Fraction(0)
F1 = Fraction(1)


def _as_vec(v, n):
    vec = tuple(Fraction(x) for x in v)
    if len(vec) != n:
        raise ValueError(f"expected a length-{n} vector")
    if sum(vec) != 0:
        raise ValueError("vector is not in the zero-sum hyperplane")
    return vec


def _project(v):
    """Orthogonal projection of a P-vector onto the zero-sum hyperplane."""
    mean = sum(v) / len(v)
    return tuple(x - mean for x in v)


def difference_basis(n):
    """The integral basis e_i - e_(i+1), i = 1..n-1, as P-vectors."""
    out = []
    for i in range(n - 1):
        vec = [F0] * n
        vec[i] = F1
        vec[i + 1] = -F1
        out.append(tuple(vec))
    return out


def diff_coords(v):
    """Coordinates of a zero-sum vector in the difference basis: the partial
    sums of its entries."""
    coords = []
    acc = F0
    for x in v[:-1]:
        acc += x
        coords.append(acc)
    return tuple(coords)


class PermAlgebra:
    """Product, permutation action and structure constants on the zero-sum
    hyperplane of Q^n."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 3:
            raise ValueError("the algebra needs n >= 3 (n = 2 makes the spectrum formula singular)")
        self.n = n
        self.dim = n - 1
        self.basis = difference_basis(n)
        # structure constants in the difference basis: product[i][j] is the
        # coordinate tuple of basis[i] * basis[j]
        self.structure = tuple(
            tuple(diff_coords(self.multiply(bi, bj)) for bj in self.basis) for bi in self.basis
        )
        for i in range(self.dim):
            for j in range(self.dim):
                if self.structure[i][j] != self.structure[j][i]:
                    raise AssertionError("structure constants lost symmetry")

    def multiply(self, a, b):
        a = _as_vec(a, self.n)
        b = _as_vec(b, self.n)
        return _project(tuple(x * y for x, y in zip(a, b)))

    def permute(self, sigma, v):
        """Apply a permutation given as a tuple of images of 0..n-1."""
        v = _as_vec(v, self.n)
        out = [F0] * self.n
        for src, dst in enumerate(sigma):
            out[dst] = v[src]
        return tuple(out)

    def adjacent_transpositions(self):
        out = []
        for i in range(self.n - 1):
            sigma = list(range(self.n))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            out.append(tuple(sigma))
        return out

    def ad_matrix(self, e):
        """Matrix (columns over the difference basis) of x -> x * e."""
        e = _as_vec(e, self.n)
        cols = [diff_coords(self.multiply(b, e)) for b in self.basis]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_equivariant(self) -> bool:
        for sigma in self.adjacent_transpositions():
            for bi in self.basis:
                for bj in self.basis:
                    lhs = self.permute(sigma, self.multiply(bi, bj))
                    rhs = self.multiply(self.permute(sigma, bi), self.permute(sigma, bj))
                    if lhs != rhs:
                        return False
        return True


def build(n: int) -> PermAlgebra:
    return PermAlgebra(n)


def distinguished_idempotents(n: int):
    """The n axis idempotents (n/(n-2)) * (e_i - (1/n) * sum e_j), verified."""
    A = build(n)
    scale = Fraction(n, n - 2)
    out = []
    for i in range(n):
        vec = tuple(
            scale * ((F1 if j == i else F0) - Fraction(1, n)) for j in range(n)
        )
        if A.multiply(vec, vec) != vec:
            raise AssertionError("distinguished vector failed the idempotent identity")
        out.append(vec)
    return out


def char_poly(matrix):
    """Characteristic polynomial det(t*I - M), coefficients low to high, by
    the trace recursion (Faddeev-LeVerrier)."""
    d = len(matrix)
    M = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [F0] * (d + 1)
    coeffs[d] = F1
    Bk = [[F1 if i == j else F0 for j in range(d)] for i in range(d)]
    Ak = None
    for k in range(1, d + 1):
        Ak = _mat_mul(M, Bk) if k > 1 else [row[:] for row in M]
        ck = -sum(Ak[i][i] for i in range(d)) / k
        coeffs[d - k] = ck
        if k < d:
            Bk = [row[:] for row in Ak]
            for i in range(d):
                Bk[i][i] += ck
    return coeffs


def _mat_mul(A, B):
    d = len(A)
    return [
        [sum(A[i][k] * B[k][j] for k in range(d)) for j in range(d)]
        for i in range(d)
    ]


def _divisors(k: int):
    k = abs(k)
    out = set()
    i = 1
    while i * i <= k:
        if k % i == 0:
            out.add(i)
            out.add(k // i)
        i += 1
    return sorted(out)


def rational_roots(coeffs):
    """All rational roots with multiplicity of a rational polynomial, plus the
    fully deflated (root-free) remainder polynomial."""
    poly = list(coeffs)
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        raise ValueError("zero polynomial")
    # clear denominators to an integer polynomial
    lcm = 1
    for c in poly:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ipoly = [int(c * lcm) for c in poly]
    roots = {}
    while len(ipoly) > 1:
        # strip powers of t
        if ipoly[0] == 0:
            roots[F0] = roots.get(F0, 0) + 1
            ipoly = ipoly[1:]
            continue
        content = 0
        for c in ipoly:
            content = math.gcd(content, c)
        ipoly = [c // content for c in ipoly]
        found = None
        for qd in _divisors(ipoly[-1]):
            for pd in _divisors(ipoly[0]):
                for sign in (1, -1):
                    cand = Fraction(sign * pd, qd)
                    if _poly_eval(ipoly, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        ipoly = _deflate(ipoly, found)
    remainder = [Fraction(c) for c in ipoly]
    return roots, remainder


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(ipoly, root):
    """Divide an integer polynomial by (t - root) via synthetic division and
    rescale to integer coefficients (roots are unaffected by the scale)."""
    high = [Fraction(c) for c in reversed(ipoly)]
    quotient = []
    carry = F0
    for c in high:
        carry = c + carry * root
        quotient.append(carry)
    if quotient[-1] != 0:
        raise AssertionError("deflation by a non-root")
    low = list(reversed(quotient[:-1]))
    lcm = 1
    for c in low:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in low]


def ad_spectrum(A: PermAlgebra, e):
    """Exact eigenvalues (with multiplicity) of multiplication by e on M.

    Returns ({eigenvalue: multiplicity}, remainder_poly); the remainder is the
    root-free factor of the characteristic polynomial (empty list of degree 0
    means it factored completely)."""
    poly = char_poly(A.ad_matrix(e))
    roots, remainder = rational_roots(poly)
    total = sum(roots.values())
    missing = A.dim - total
    if missing and len(remainder) - 1 != missing:
        raise AssertionError("root bookkeeping mismatch")
    return roots, remainder


def trace_form(n: int):
    """The form tr(ad_P(a) ad_P(b)) on M, returned as a callable, after
    verifying it equals the coordinate dot product (the orthonormal-axis form
    restricted to M, positive multiple exactly 1) and respects the action."""
    A = build(n)

    def form(a, b):
        a = _as_vec(a, n)
        b = _as_vec(b, n)
        # ad_P of a zero-sum vector is the diagonal matrix of its entries,
        # so the trace of the product is the dot product
        return sum(x * y for x, y in zip(a, b))

    for bi in A.basis:
        for bj in A.basis:
            dot = sum(x * y for x, y in zip(bi, bj))
            if form(bi, bj) != dot:
                raise AssertionError("trace form drifted from the dot product")
    for sigma in A.adjacent_transpositions():
        for bi in A.basis:
            for bj in A.basis:
                if form(A.permute(sigma, bi), A.permute(sigma, bj)) != form(bi, bj):
                    raise AssertionError("trace form is not invariant")
    return form


def enumerate_idempotents_n3():
    """Every solution of x*x = x in the n=3 algebra, certified exhaustive.

    In difference-basis coordinates (a, b) the identity is two quadratics;
    eliminating b by a Sylvester resultant gives one polynomial in a whose
    rational roots are extracted and certified to exhaust it (the deflated
    remainder must be constant).  Solutions are then filtered by the
    eigenvalue condition {1, -1} of multiplication-by-e.
    """
    A = build(3)
    d1, d2 = A.basis
    # x = a*d1 + b*d2; expand x*x - x in the difference basis.
    # Products of basis vectors, in difference coordinates:
    p11 = A.structure[0][0]
    p12 = A.structure[0][1]
    p22 = A.structure[1][1]

    # coefficient polynomials in (a, b):  eq_k: c_aa a^2 + c_ab ab + c_bb b^2 - (a or b) = 0
    def eq_coeffs(k):
        return {
            "aa": p11[k],
            "ab": 2 * p12[k],
            "bb": p22[k],
        }

    e1, e2 = eq_coeffs(0), eq_coeffs(1)

    # treat both as quadratics in b with coefficients polynomial in a:
    #   e(a, b) = bb * b^2 + (ab * a) * b + (aa * a^2 - delta)
    # delta is a for the first equation, b appears in the second's linear term.
    # Build coefficient triples (low to high in b) as polynomials in a
    # (coefficient lists low to high in a).
    def b_poly(e, var_is_a):
        c0 = [F0, -F1, e["aa"]] if var_is_a else [F0, F0, e["aa"]]
        c1 = [F0, e["ab"]] if var_is_a else [-F1, e["ab"]]
        c2 = [e["bb"]]
        return [c0, c1, c2]

    P = b_poly(e1, True)
    Q = b_poly(e2, False)
    res = _sylvester_resultant(P, Q)
    roots, remainder = rational_roots(res)
    if len(remainder) > 1:
        raise AssertionError("resultant did not factor over the rationals; enumeration incomplete")
    solutions = set()
    for a0 in roots:
        # substitute a0 into both quadratics in b and collect common rational roots
        cands = set()
        for poly_b in (P, Q):
            coeffs_b = [_poly_eval(c, a0) for c in poly_b]
            if all(c == 0 for c in coeffs_b):
                continue
            rr, _ = rational_roots(coeffs_b)
            cands.update(rr)
        for b0 in cands:
            x = tuple(a0 * u + b0 * v for u, v in zip(d1, d2))
            if A.multiply(x, x) == x:
                solutions.add(x)
    filtered = []
    for x in sorted(solutions):
        roots_x, rem_x = ad_spectrum(A, x)
        if len(rem_x) == 1 and roots_x == {F1: 1, Fraction(-1): 1}:
            filtered.append(x)
    return filtered


def _poly_add(p, q):
    out = [F0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def _poly_mul(p, q):
    out = [F0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _sylvester_resultant(P, Q):
    """Resultant in the outer variable of two quadratics-in-b whose b-coefficients
    are polynomials (coefficient lists) in a: determinant of the 4x4 Sylvester
    matrix computed by cofactor expansion over the polynomial ring."""
    p2, p1, p0 = P[2], P[1], P[0]
    q2, q1, q0 = Q[2], Q[1], Q[0]
    rows = [
        [p2, p1, p0, [F0]],
        [[F0], p2, p1, p0],
        [q2, q1, q0, [F0]],
        [[F0], q2, q1, q0],
    ]
    return _poly_det(rows)


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = [F0]
    for j in range(n):
        entry = rows[0][j]
        if all(c == 0 for c in entry):
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = _poly_mul(entry, _poly_det(minor))
        if j % 2:
            term = [-c for c in term]
        out = _poly_add(out, term)
    return out


def equivariant_product_space_dim(n: int) -> int:
    """Dimension of the space of symmetric bilinear maps M x M -> M commuting
    with the permutation action; 1 is the uniqueness statement in play."""
    A = build(n)
    d = A.dim
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    pair_index = {p: k for k, p in enumerate(pairs)}
    nunk = len(pairs) * d

    def unk(i, j, k):
        if i > j:
            i, j = j, i
        return pair_index[(i, j)] * d + k

    # permutation matrices on M in the difference basis
    sigmas = []
    for sigma in A.adjacent_transpositions():
        cols = [diff_coords(A.permute(sigma, b)) for b in A.basis]
        sigmas.append([[cols[j][i] for j in range(d)] for i in range(d)])

    rows = []
    for S in sigmas:
        for (i, j) in pairs:
            for k in range(d):
                # [sigma applied to (b_i * b_j)]_k minus [sigma(b_i) * sigma(b_j)]_k
                row = [F0] * nunk
                for t in range(d):
                    row[unk(i, j, t)] += S[k][t]
                for p in range(d):
                    for q in range(d):
                        c = S[p][i] * S[q][j]
                        if c:
                            row[unk(p, q, k)] -= c
                if any(row):
                    rows.append(row)
    return len(kernel_basis(rows, nunk, F0, F1))


def nonassociativity_witness(n: int):
    """Returns ((f1*f1)*f2, f1*(f1*f2)) — unequal for every n >= 3 in play."""
    A = build(n)
    f = distinguished_idempotents(n)
    left = A.multiply(A.multiply(f[0], f[0]), f[1])
    right = A.multiply(f[0], A.multiply(f[0], f[1]))
    return left, right


def invariant_algebra_report(n_range=range(3, 9)) -> list:
    """Check rows for the invariant-algebra suite across a range of n."""
    rows = []

    def check(name, location, expected, actual):
        rows.append(
            {
                "name": name,
                "status": "pass" if expected == actual else "fail",
                "expected": expected,
                "actual": actual,
                "location": location,
            }
        )

    for n in n_range:
        A = build(n)
        check(f"equivariance n={n}", "perm-algebra", True, A.is_equivariant())
        fs = distinguished_idempotents(n)
        ok_idem = all(A.multiply(f, f) == f for f in fs)
        check(f"idempotents n={n}", "axis-idempotents", True, ok_idem)
        want = {F1: 1, Fraction(-1, n - 2): n - 2}
        ok_spec = True
        for f in fs:
            roots, rem = ad_spectrum(A, f)
            if roots != want or len(rem) > 1:
                ok_spec = False
        check(f"ad-spectrum n={n}", "axis-spectrum", True, ok_spec)
        coords = [diff_coords(f) for f in fs]
        _, pivots = rref([list(c) for c in coords])
        check(f"idempotents span n={n}", "axis-span", n - 1, len(pivots))
        if n <= 6:
            left, right = nonassociativity_witness(n)
            check(f"nonassociative n={n}", "nonassociativity", False, left == right)
            check(
                f"equivariant products n={n}",
                "product-uniqueness",
                1,
                equivariant_product_space_dim(n),
            )
    survivors = sorted(tuple(v) for v in enumerate_idempotents_n3())
    distinguished = sorted(tuple(v) for v in distinguished_idempotents(3))
    check("n=3 exhaustive filter", "idempotent-enumeration", distinguished, survivors)
    return rows
