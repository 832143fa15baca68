"""Zassenhaus subquotient dimensions c_n from Hilbert–Poincaré series.

Pipeline: ``P -> b_n = [t^n] log P -> w_n -> c_n`` where

    w_n = (1/n) * sum_{m | n} mu(n/m) * m * b_m
    c_n = w_m + w_{pm} + ... + w_{p^k m},   n = p^k m, (m, p) = 1.

The closed-form evaluators avoid series expansion altogether: for every
family ``m * b_m`` is an integer power sum, obtained from the
characteristic polynomial by Newton's identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import series as S
from .errors import ContractError, DataError, UnsupportedFamilyError
from .families import (
    CyclicPFree,
    Demushkin,
    FreeProdCyclicP,
    FreeProP,
    GroupFamily,
    MixedFreeProd,
    SuperPyth,
    check_family_prime,
    family_series,
)
from .mobius import classical_mobius, divisors, is_prime
from .series import TruncatedSeries


@dataclass(frozen=True)
class DimensionTable:
    p: int
    order: int
    b: tuple[Fraction, ...]
    w: tuple[int, ...]
    c: tuple[int, ...]
    family: GroupFamily | None = None

    def __post_init__(self):
        for n in range(1, self.order + 1):
            cn, wn = self.c[n - 1], self.w[n - 1]
            if cn < 0:
                raise DataError(f"c_{n} = {cn} is negative")
            prev = self.c[n // self.p - 1] if n % self.p == 0 else 0
            if cn != prev + wn:
                raise DataError(f"c_{n} violates the c_n = c_(n/p) + w_n recurrence")


def _split_p(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _invert(nb: Sequence, N: int) -> list[int]:
    """w_n from the sequence nb[m-1] = m*b_m, checking integrality."""
    w = []
    for n in range(1, N + 1):
        total = sum(classical_mobius(n // m) * nb[m - 1] for m in divisors(n))
        wn = Fraction(total) / n
        if wn.denominator != 1:
            raise DataError(f"w_{n} = {wn} is not an integer")
        w.append(wn.numerator)
    return w


def _c_from_w(w: Sequence[int], p: int) -> list[int]:
    c = []
    for n in range(1, len(w) + 1):
        k, m = _split_p(n, p)
        c.append(sum(w[m * p**j - 1] for j in range(k + 1)))
    return c


def b_sequence(P: TruncatedSeries, N: int | None = None) -> list[Fraction]:
    N = P.order if N is None else N
    if N > P.order:
        raise ContractError(f"series has order {P.order} < {N}")
    if P[0] != 1:
        raise ContractError("series must have constant term 1")
    L = S.log(P.truncate(N))
    return list(L.coefficients[1:])


def w_sequence(P: TruncatedSeries, N: int | None = None) -> list[int]:
    b = b_sequence(P, N)
    return _invert([m * bm for m, bm in enumerate(b, start=1)], len(b))


def c_sequence(P: TruncatedSeries, p: int, N: int | None = None) -> list[int]:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    c = _c_from_w(w_sequence(P, N), p)
    for n, cn in enumerate(c, start=1):
        if cn < 0:
            raise DataError(f"c_{n} = {cn} is negative; not the series of a gr algebra")
    return c


def dimension_table(P: TruncatedSeries, p: int, N: int | None = None,
                    family: GroupFamily | None = None) -> DimensionTable:
    b = b_sequence(P, N)
    w = _invert([m * bm for m, bm in enumerate(b, start=1)], len(b))
    c = _c_from_w(w, p)
    return DimensionTable(p, len(b), tuple(b), tuple(w), tuple(c), family)


def family_table(family: GroupFamily, p: int, N: int) -> DimensionTable:
    return dimension_table(family_series(family, p, N), p, N, family)


# -- closed forms ---------------------------------------------------------------

def power_sums(charpoly: Sequence[int], N: int) -> list[int]:
    """s_m = sum_i a_i^m for ``charpoly = prod_i (1 - a_i t)``, m = 1..N.

    Newton's identities for the reversed polynomial:
    ``s_m = -m e_m - sum_{i=1}^{m-1} e_i s_{m-i}`` where ``charpoly = 1 + e_1 t + ...``.
    """
    if not charpoly or charpoly[0] != 1:
        raise ContractError("characteristic polynomial must have constant term 1")
    e = list(charpoly) + [0] * max(0, N + 1 - len(charpoly))
    s: list[int] = []
    for m in range(1, N + 1):
        acc = -m * e[m]
        for i in range(1, m):
            acc -= e[i] * s[m - i - 1]
        s.append(acc)
    return s


def _root_of_unity_sums(p: int, N: int) -> list[int]:
    """Sum of the m-th powers of the non-trivial p-th roots of unity."""
    return [p - 1 if m % p == 0 else -1 for m in range(1, N + 1)]


def _log_weights(family: GroupFamily, p: int, N: int) -> list[int]:
    """The integers m * b_m, m = 1..N, without expanding the series."""
    if isinstance(family, FreeProP):
        return [family.d**m for m in range(1, N + 1)]
    if isinstance(family, Demushkin):
        return power_sums([1, -family.d, 1], N)
    if isinstance(family, MixedFreeProd):
        r = len(family.demushkin_ranks)
        return power_sums([1, -(sum(family.demushkin_ranks) + family.free_rank), r], N)
    if isinstance(family, FreeProdCyclicP):
        d = family.copies - 1
        a = power_sums([1] + [-d] * (p - 1), N)
        z = _root_of_unity_sums(p, N)
        return [x - y for x, y in zip(a, z)]
    if isinstance(family, CyclicPFree):
        a = power_sums([1] + [-family.d] * p, N)
        z = _root_of_unity_sums(p, N)
        return [x - y for x, y in zip(a, z)]
    raise UnsupportedFamilyError(f"no power-sum form for {family!r}")


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, f"{a} is not divisible by {b}"
    return q


def w_closed(family: GroupFamily, p: int, n: int) -> int:
    check_family_prime(family, p)
    if isinstance(family, SuperPyth):
        if n == 1:
            return family.d + 1
        if n == 2:
            return -1
        return 0
    nb = _log_weights(family, p, n)
    return _exact_div(sum(classical_mobius(n // m) * nb[m - 1] for m in divisors(n)), n)


def c_closed(family: GroupFamily, p: int, n: int) -> int:
    """c_n(G) for a classified family, evaluated without series expansion."""
    if n < 1:
        raise ContractError("n must be >= 1")
    check_family_prime(family, p)
    if isinstance(family, SuperPyth):
        if n == 1:
            return family.d + 1
        k, m = _split_p(n, 2)
        return family.d if m == 1 else 0
    k, m = _split_p(n, p)
    return sum(w_closed(family, p, m * p**j) for j in range(k + 1))


def generator_counts(family: GroupFamily, p: int, n: int) -> int:
    """Minimal number of generators of G_(n) for free and Demushkin groups."""
    if n < 1:
        raise ContractError("n must be >= 1")
    check_family_prime(family, p)
    if isinstance(family, FreeProP):
        shift = 1
    elif isinstance(family, Demushkin):
        shift = 2
    else:
        raise UnsupportedFamilyError(
            f"generator counts are only known for free and Demushkin groups, not {family!r}"
        )
    index_exp = sum(c_closed(family, p, i) for i in range(1, n))
    return p**index_exp * (family.d - shift) + shift


def epsilon(n: int) -> int:
    """(1/n) sum_{m|n} mu(n/m) (-1)^m."""
    return _exact_div(sum(classical_mobius(n // m) * (-1) ** m for m in divisors(n)), n)
