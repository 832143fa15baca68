"""Möbius functions on finite posets, the classical Möbius function and
Gaussian binomial coefficients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import ContractError, ResourceError

MAX_POSET_SIZE = 10_000


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise ContractError(f"cannot factor {n}")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def classical_mobius(n: int) -> int:
    if n < 1:
        raise ContractError(f"classical_mobius needs n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (exact integer)."""
    if q < 2:
        raise ContractError(f"q must be >= 2, got {q}")
    if n < 0:
        raise ContractError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """Poset on ``0..m-1`` given by a dense boolean ``leq`` matrix.

    ``labels`` optionally carries the objects the indices stand for.
    """

    leq: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        leq = np.asarray(self.leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ContractError("leq must be a square matrix")
        m = leq.shape[0]
        if m > MAX_POSET_SIZE:
            raise ResourceError(f"poset of size {m} exceeds {MAX_POSET_SIZE}")
        if self.labels and len(self.labels) != m:
            raise ContractError("labels length does not match poset size")
        if not leq.diagonal().all():
            raise ContractError("relation is not reflexive")
        off = leq & leq.T
        np.fill_diagonal(off, False)
        if off.any():
            raise ContractError("relation is not antisymmetric")
        li = leq.astype(np.int64)
        if ((li @ li > 0) & ~leq).any():
            raise ContractError("relation is not transitive")
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def linear_extension(self) -> list[int]:
        """Indices sorted so that x <= y implies x comes first."""
        # the number of elements below x strictly increases along chains
        below = self.leq.sum(axis=0)
        return sorted(range(self.size), key=lambda x: (int(below[x]), x))

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable], leq_func) -> "FinitePoset":
        m = len(elements)
        mat = np.zeros((m, m), dtype=bool)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                mat[i, j] = bool(leq_func(a, b))
        return cls(mat, tuple(elements))


def mobius_table(P: FinitePoset) -> np.ndarray:
    """Integer matrix ``mu[x, y]`` of the Möbius function of ``P``.

    Built row by row with ``mu(x,y) = -sum_{x<=z<y} mu(x,z)`` and checked
    against ``sum_{x<=z<=y} mu(x,z) = delta(x,y)``.
    """
    m = P.size
    order = P.linear_extension()
    leq = P.leq
    mu = np.zeros((m, m), dtype=object)
    for x in range(m):
        row = mu[x]
        for y in order:
            if not leq[x, y]:
                continue
            if y == x:
                row[y] = 1
            else:
                row[y] = -sum(row[z] for z in np.flatnonzero(leq[x] & leq[:, y]) if z != y)
    zeta = leq.astype(object)
    check = mu.dot(zeta)
    if not (check == np.eye(m, dtype=object)).all():
        raise AssertionError("Möbius table fails the zeta inversion check")
    return mu


def mobius_inversion(P: FinitePoset, g: Sequence, mu: np.ndarray | None = None) -> list:
    """Recover f from ``g(x) = sum_{y<=x} f(y)``."""
    if mu is None:
        mu = mobius_table(P)
    return [
        sum(g[y] * mu[y, x] for y in range(P.size) if P.leq[y, x])
        for x in range(P.size)
    ]


# -- standard posets ----------------------------------------------------------

def chain_poset(length: int) -> FinitePoset:
    """Chain with ``length + 1`` elements 0 < 1 < ... < length."""
    idx = np.arange(length + 1)
    return FinitePoset(idx[:, None] <= idx[None, :], tuple(range(length + 1)))


def boolean_poset(rank: int) -> FinitePoset:
    """Subsets of a ``rank``-element set encoded as bitmasks."""
    els = list(range(1 << rank))
    return FinitePoset.from_relation(els, lambda a, b: a & b == a)


def divisor_poset(n: int) -> FinitePoset:
    return FinitePoset.from_relation(divisors(n), lambda a, b: b % a == 0)


def _span(vectors: Sequence[tuple[int, ...]], q: int, n: int) -> frozenset:
    span = {tuple([0] * n)}
    for v in vectors:
        span = {
            tuple((a + c * b) % q for a, b in zip(w, v))
            for w in span
            for c in range(q)
        }
    return frozenset(span)


def subspace_poset(n: int, q: int) -> FinitePoset:
    """Lattice of subspaces of F_q^n ordered by inclusion (q prime)."""
    if not is_prime(q):
        raise ContractError(f"subspace_poset needs a prime q, got {q}")
    vectors = list(itertools.product(range(q), repeat=n))
    spaces = {_span([], q, n)}
    frontier = list(spaces)
    while frontier:
        new = []
        for s in frontier:
            for v in vectors:
                if v in s:
                    continue
                t = _span([*_basis_of(s, q, n), v], q, n)
                if t not in spaces:
                    spaces.add(t)
                    new.append(t)
        frontier = new
    ordered = sorted(spaces, key=lambda s: (len(s), sorted(s)))
    return FinitePoset.from_relation(ordered, lambda a, b: a <= b)


def _basis_of(space: frozenset, q: int, n: int) -> list[tuple[int, ...]]:
    basis: list[tuple[int, ...]] = []
    current = _span([], q, n)
    for v in sorted(space):
        if v not in current:
            basis.append(v)
            current = _span(basis, q, n)
    return basis
