"""Exact vertex operator modes on the lattice Fock space.

Conventions, fixed once here:
  * Y(v,z) = sum_k v_k z^(-k-1); "coefficient of z^(-t)" means mode index t-1.
  * For a pure sector vector the operator is the classical exponential form
    (creation exponential) (annihilation exponential) (sector shift) z^(a m N),
    with trivial two-cocycle (every pairing a*b*N is even in rank one).
    The z-exponent reads the sector of the operand before the shift, and in
    normal-ordered expressions the zero mode g(0) stays on the annihilation
    side; both choices are forced by skew-symmetry and are tested.
  * A leading creation factor g(-j) is peeled off through the derivative
    normal-ordering rule, which turns it into the mode family
    C(n+j-1, j-1) g(n) attached at z^(-n-j).
  * Binomials use the polynomial extension C(x,r) = x(x-1)...(x-r+1)/r! for
    every integer x; no table lookups, no special-casing of negatives.

Everything is computed per graded component with no truncation: a mode of a
homogeneous state is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from math import factorial

from .numeric import Scalar
from .fock import State, partitions, term_weight

__all__ = ["mode", "virasoro", "bracket", "poly_binom", "clear_mode_cache"]


def poly_binom(x: int, r: int) -> int:
    """C(x, r) for any integer x via the falling factorial; r < 0 gives 0."""
    if r < 0:
        return 0
    num = 1
    for i in range(r):
        num *= x - i
    return num // factorial(r)


def _multiset(lam: tuple) -> dict:
    out: dict = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


def _merge_parts(*part_groups) -> tuple:
    merged = []
    for g in part_groups:
        merged.extend(g)
    merged.sort(reverse=True)
    return tuple(merged)


def _falling(c: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= c - i
    return out


_MODE_CACHE: dict = {}


def clear_mode_cache():
    _MODE_CACHE.clear()


def _lattice_term_mode(N: int, a: int, k: int, m: int, mu: tuple) -> dict:
    """Mode k of the pure sector-a vector on the term (m, mu)."""
    out: dict = {}
    base_power = a * m * N
    mu_ms = _multiset(mu)
    parts_list = sorted(mu_ms)
    ranges = [range(mu_ms[p] + 1) for p in parts_list]
    for removal in iter_product(*ranges):
        ann = Fraction(1)
        removed_weight = 0
        for p, r in zip(parts_list, removal):
            if r == 0:
                continue
            # (-a/p)^r/r! from the exponential, (pN)^r falling(c,r) from g(p)^r;
            # the p-powers cancel
            removed_weight += p * r
            ann *= Fraction(((-a) * N) ** r * _falling(mu_ms[p], r), factorial(r))
        if not ann:
            continue
        need = -k - 1 - base_power + removed_weight
        if need < 0 or (a == 0 and need > 0):
            continue
        kept = []
        for p, r in zip(parts_list, removal):
            kept.extend([p] * (mu_ms[p] - r))
        for nu in partitions(need):
            cre = Fraction(1)
            for n, s in _multiset(nu).items():
                cre *= Fraction(a, n) ** s / factorial(s)
            term = (m + a, _merge_parts(kept, nu))
            coeff = ann * cre
            if coeff:
                out[term] = out.get(term, 0) + coeff
    return {t: c for t, c in out.items() if c}


def _term_mode(N: int, a: int, lam: tuple, k: int, m: int, mu: tuple) -> dict:
    """Mode k of the single term (a, lam) applied to the single term (m, mu)."""
    key = (N, a, lam, k, m, mu)
    hit = _MODE_CACHE.get(key)
    if hit is not None:
        return hit

    if not lam:
        result = _lattice_term_mode(N, a, k, m, mu)
        _MODE_CACHE[key] = result
        return result

    j, rest = lam[0], lam[1:]
    out: dict = {}
    # (1/(j-1)!) d^(j-1)/dz^(j-1) of g(n) z^(-n-1) is
    # (-1)^(j-1) C(n+j-1, j-1) g(n) z^(-n-j)
    sign = -1 if (j - 1) % 2 else 1

    def acc(term, coeff):
        if coeff:
            out[term] = out.get(term, 0) + coeff

    # annihilation side: g(n), n >= 0, acts on (m, mu) first
    ann_indices = [0] if m != 0 else []
    ann_indices.extend(sorted(set(mu)))
    for n in ann_indices:
        c_field = sign * poly_binom(n + j - 1, j - 1)
        if not c_field:
            continue
        if n == 0:
            hscale = m * N
            inner_operand = (m, mu)
        else:
            cnt = mu.count(n)
            hscale = cnt * n * N
            lst = list(mu)
            lst.remove(n)
            inner_operand = (m, tuple(lst))
        inner = _term_mode(N, a, rest, k - n - j, *inner_operand)
        factor = c_field * hscale
        for t, c in inner.items():
            acc(t, c * factor)

    # creation side: g(-t), t >= 1, applied after the inner mode
    wt_inner = term_weight(N, (a, rest)) + term_weight(N, (m, mu))
    t_max = wt_inner + j - 1 - k  # inner result weight must stay nonnegative
    t = 1
    while t <= t_max:
        c_field = sign * poly_binom(j - 1 - t, j - 1)
        if c_field:
            inner = _term_mode(N, a, rest, k + t - j, m, mu)
            for (mm, ll), c in inner.items():
                acc((mm, _merge_parts(ll, (t,))), c * c_field)
        t += 1

    result = {t: c for t, c in out.items() if c}
    _MODE_CACHE[key] = result
    return result


def mode(v: State, k: int, w: State) -> State:
    """The k-th mode of v applied to w; v must be homogeneous.

    The result is the single graded component of weight wt(v) + wt(w) - k - 1
    (per homogeneous component of w), computed exactly.
    """
    if not isinstance(v, State) or not isinstance(w, State):
        raise ValueError("mode expects two states")
    if v.lattice != w.lattice:
        raise ValueError("mode needs both states on the same lattice")
    if not isinstance(k, int):
        raise ValueError("mode index must be an integer")
    if not v.is_homogeneous():
        raise ValueError("mode requires a homogeneous first argument")
    N = v.lattice
    zero = Fraction(0)
    acc: dict = {}
    for (a, lam), cv in v.terms.items():
        for (m, mu), cw in w.terms.items():
            sub = _term_mode(N, a, lam, k, m, mu)
            if not sub:
                continue
            cc = cv * cw
            ccr, cci = cc.re, cc.im
            for t, c in sub.items():
                pr, pi = acc.get(t, (zero, zero))
                acc[t] = (pr + ccr * c, pi + cci * c)
    out = {}
    for t, (r, i) in acc.items():
        if r or i:
            out[t] = Scalar(r, i)
    return State(N, out)


def virasoro(k: int, w: State) -> State:
    """L(k) acting on w: the (k+1)-st mode of the conformal vector."""
    return mode(State.omega(w.lattice), k + 1, w)


def bracket(a: State, b: State) -> State:
    """Zero-mode bracket on the weight-one piece of the N=2 lattice algebra."""
    for s in (a, b):
        if not isinstance(s, State) or s.lattice != 2:
            raise ValueError("bracket is defined on the N=2 lattice")
        if s and s.weight() != 1:
            raise ValueError("bracket arguments must be homogeneous of weight one")
    return mode(a, 0, b)
