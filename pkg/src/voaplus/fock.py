"""States of the rank-one even lattice Fock space.

The model works with the long generator g of the lattice, <g,g> = N (N a
positive even integer), so every structure constant downstream is rational.
A basis term is (sector m, partition): the partition lists the creation
indices j of the product of g(-j) applied to the sector-m ground vector.
Term weight is m^2 N / 2 + |partition|.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .numeric import ONE, Scalar, ZERO

Term = tuple[int, tuple[int, ...]]


class LatticeMismatch(ValueError):
    pass


def check_lattice(N: int):
    if not isinstance(N, int) or N <= 0 or N % 2:
        raise ValueError(f"lattice norm must be a positive even integer, got {N!r}")


def term_weight(N: int, term: Term) -> Fraction:
    m, lam = term
    return Fraction(m * m * N, 2) + sum(lam)


def _canonical_partition(parts) -> tuple[int, ...]:
    lam = tuple(sorted(parts, reverse=True))
    if any((not isinstance(p, int)) or p < 1 for p in lam):
        raise ValueError(f"partition parts must be positive integers, got {parts!r}")
    return lam


class State:
    """A finite linear combination of Fock terms over one lattice.

    Wraps {term: Scalar} with no stored zeros.  States add, subtract and scale;
    equality is structural.
    """

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: int, terms=None):
        check_lattice(lattice)
        object.__setattr__(self, "lattice", lattice)
        clean = {}
        if terms:
            for t, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    clean[t] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("State is immutable")

    @classmethod
    def of_term(cls, lattice: int, sector: int, partition=(), coeff=1) -> "State":
        return cls(lattice, {(sector, _canonical_partition(partition)): Scalar.coerce(coeff)})

    @classmethod
    def vacuum(cls, lattice: int) -> "State":
        return cls.of_term(lattice, 0)

    @classmethod
    def omega(cls, lattice: int) -> "State":
        """The conformal vector (1/2N) g(-1)^2 applied to the vacuum."""
        return cls.of_term(lattice, 0, (1, 1), Fraction(1, 2 * lattice))

    def __add__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeMismatch("cannot add states over different lattices")
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, ZERO) + c
        return State(self.lattice, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, s):
        s = Scalar.coerce(s)
        return State(self.lattice, {t: s * c for t, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.lattice == other.lattice and self.terms == other.terms

    def sorted_terms(self):
        """Terms in the canonical (weight, sector, partition) order."""
        N = self.lattice
        return sorted(self.terms.items(), key=lambda it: (term_weight(N, it[0]),) + it[0][:1] + (it[0][1],))

    def is_homogeneous(self) -> bool:
        ws = {term_weight(self.lattice, t) for t in self.terms}
        return len(ws) <= 1

    def weight(self):
        """Common weight of all terms; None for the zero state."""
        ws = {term_weight(self.lattice, t) for t in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError("state is not homogeneous")
        return ws.pop()

    def fingerprint(self):
        """Hashable canonical content, used as a cache/serialization key."""
        return (self.lattice, tuple((t, c) for t, c in self.sorted_terms()))

    def __repr__(self):
        if not self.terms:
            return f"State(N={self.lattice}, 0)"
        bits = [f"({c})*[m={t[0]};{list(t[1])}]" for t, c in self.sorted_terms()]
        return f"State(N={self.lattice}, " + " + ".join(bits) + ")"


def heisenberg(k: int, s: State) -> State:
    """Apply g(k): creation for k<0, annihilation for k>0, mN scaling for k=0."""
    if not isinstance(k, int):
        raise ValueError("mode index must be an integer")
    N = s.lattice
    out: dict = {}

    def acc(term, coeff):
        if coeff:
            out[term] = out.get(term, ZERO) + coeff

    for (m, lam), c in s.terms.items():
        if k < 0:
            acc((m, _canonical_partition(lam + (-k,))), c)
        elif k == 0:
            acc((m, lam), c * (m * N))
        else:
            mult = lam.count(k)
            if mult:
                rest = list(lam)
                rest.remove(k)
                acc((m, tuple(rest)), c * (mult * k * N))
    return State(N, out)


def theta(s: State) -> State:
    """The parity involution: negate the sector, sign (-1)^(number of parts)."""
    out = {}
    for (m, lam), c in s.terms.items():
        sign = -1 if len(lam) % 2 else 1
        out[(-m, lam)] = c * sign
    return State(s.lattice, out)


def _term_norm(N: int, lam: tuple) -> int:
    # <prod g(-j) ground, same> with orthonormal ground vectors: per distinct
    # part j of multiplicity c the factor is c! (jN)^c
    val = 1
    j_prev = None
    run = 0
    for j in lam + (None,):
        if j == j_prev:
            run += 1
            continue
        if j_prev is not None:
            val *= factorial(run) * (j_prev * N) ** run
        j_prev, run = j, 1
    return val


def form(s: State, t: State) -> Scalar:
    """Contravariant sesquilinear pairing, conjugate-linear in the first slot.

    Ground vectors of distinct sectors are orthogonal and have norm one; the
    adjoint of g(-k) is g(k), which forces the closed product formula per term.
    """
    if not isinstance(s, State) or not isinstance(t, State):
        raise ValueError("form expects two states")
    if s.lattice != t.lattice:
        raise LatticeMismatch("form needs both states on the same lattice")
    N = s.lattice
    total = ZERO
    for term, c in s.terms.items():
        d = t.terms.get(term)
        if d is not None:
            total = total + c.conjugate() * d * _term_norm(N, term[1])
    return total


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n with parts bounded by max_part, descending tuples."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    if max_part is None or max_part > n:
        max_part = n
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    if n < 0:
        return 0
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return counts[n]


@lru_cache(maxsize=None)
def partition_count_by_parity(n: int) -> tuple[int, int]:
    """(number with evenly many parts, number with oddly many parts)."""
    if n < 0:
        return (0, 0)
    even = [1] + [0] * n
    odd = [0] * (n + 1)
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            even[total], odd[total] = even[total] + odd[total - part], odd[total] + even[total - part]
    return (even[n], odd[n])


def _parse_constraint(constraint):
    if constraint in ("full", "plus", "minus", "efixed"):
        return (constraint, None)
    if isinstance(constraint, str) and constraint.startswith("pair"):
        head, _, tail = constraint.partition(":")
        try:
            m = int(tail)
        except ValueError:
            raise ValueError(f"bad sector-pair constraint {constraint!r}") from None
        if head == "pair":
            return ("pair", m)
        if head == "pair+":
            return ("pair+", m)
        if head == "pair-":
            return ("pair-", m)
    raise ValueError(f"unknown graded-basis constraint {constraint!r}")


def _sectors_at_weight(N: int, w: int):
    top = isqrt((2 * w) // N) if w >= 0 else -1
    return [m for m in range(-top - 1, top + 2) if Fraction(m * m * N, 2) <= w]


def weight_terms(N: int, w) -> list[Term]:
    """Every term of the given weight, in the canonical (sector, partition) order.

    This enumeration fixes the coordinate columns used by all exact linear
    algebra on graded pieces.
    """
    check_lattice(N)
    w = Fraction(w)
    if w < 0 or w.denominator != 1:
        return []
    w = int(w)
    out = []
    for m in _sectors_at_weight(N, w):
        rest = w - (m * m * N) // 2
        for lam in sorted(partitions(rest)):
            out.append((m, lam))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def graded_basis(N: int, w, constraint="full") -> list[State]:
    """Deterministic basis of one graded piece under a symmetry constraint.

    Constraints: "full" (all terms), "plus"/"minus" (parity eigenspaces),
    "pair:m" (the sector +-m submodule; m=0 is the Heisenberg part),
    "pair+:m"/"pair-:m" (its parity eigenspaces), and "efixed" (N=2 only:
    parity-fixed vectors of even sector, the small-lattice model of the
    plus subalgebra of the norm-8 lattice).
    """
    check_lattice(N)
    kind, pair_m = _parse_constraint(constraint)
    if kind == "efixed" and N != 2:
        raise ValueError("the efixed constraint is only defined on the N=2 lattice")
    w = Fraction(w)
    if w < 0 or w.denominator != 1:
        return []
    w = int(w)

    if kind == "full":
        return [State.of_term(N, m, lam) for m, lam in weight_terms(N, w)]

    out: list[State] = []
    sectors = sorted(set(abs(m) for m in _sectors_at_weight(N, w)))
    if kind in ("pair", "pair+", "pair-"):
        if pair_m < 0:
            raise ValueError("sector-pair label must be nonnegative")
        sectors = [m for m in sectors if m == pair_m]
    for m in sectors:
        rest = w - (m * m * N) // 2
        for lam in sorted(partitions(rest)):
            if m == 0:
                even = len(lam) % 2 == 0
                if kind in ("plus", "efixed", "pair+") and not even:
                    continue
                if kind in ("minus", "pair-") and even:
                    continue
                out.append(State.of_term(N, 0, lam))
            else:
                plus_sign = 1 if len(lam) % 2 == 0 else -1
                a = State.of_term(N, m, lam)
                b = State.of_term(N, -m, lam)
                if kind == "pair":
                    out.append(a)
                    out.append(b)
                elif kind in ("plus", "pair+"):
                    out.append(a + plus_sign * b)
                elif kind in ("minus", "pair-"):
                    out.append(a - plus_sign * b)
                elif kind == "efixed":
                    if m % 2 == 0:
                        out.append(a + plus_sign * b)
    return out


def graded_dim(N: int, w, constraint="full") -> int:
    """Dimension of graded_basis(N, w, constraint), computed by counting only."""
    check_lattice(N)
    kind, pair_m = _parse_constraint(constraint)
    if kind == "efixed" and N != 2:
        raise ValueError("the efixed constraint is only defined on the N=2 lattice")
    w = Fraction(w)
    if w < 0 or w.denominator != 1:
        return 0
    w = int(w)
    total = 0
    sectors = sorted(set(abs(m) for m in _sectors_at_weight(N, w)))
    if kind in ("pair", "pair+", "pair-"):
        sectors = [m for m in sectors if m == pair_m]
    for m in sectors:
        rest = w - (m * m * N) // 2
        if m == 0:
            even, odd = partition_count_by_parity(rest)
            if kind in ("full", "pair"):
                total += even + odd
            elif kind in ("plus", "efixed", "pair+"):
                total += even
            else:
                total += odd
        else:
            p = partition_count(rest)
            if kind in ("full", "pair"):
                total += 2 * p
            elif kind == "efixed":
                total += p if m % 2 == 0 else 0
            else:
                total += p
    return total
