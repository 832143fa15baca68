"""Hilbert–Poincaré series of gr(F_p[[G]]) for the classified pro-p families.

Two displays for free products involving C_p look alike but describe
different groups, and both follow from the free-product formula:

* ``C_p * ... * C_p`` (``d + 1`` copies)::

      (1 + t + ... + t^(p-1)) / (1 - d t - ... - d t^(p-1))

* ``C_p * S`` with ``S`` free of rank ``d``::

      (1 + t + ... + t^(p-1)) / (1 - d t - ... - d t^p)

For p = 2 the first reduces to ``(1+t)/(1-dt)`` and the second to
``(1+t)/(1-dt-dt^2)``.  ``tests/test_families.py`` checks both against the
free-product formula.

The series of ``Z_2^d ⋊ C_2`` is ``(1+t)/(1-t)^d``.  This is what the
Jennings product gives for c_1 = d+1, c_{2^s} = d and c_n = 0 otherwise,
which is the filtration ``G_(n) = H^(2^s)``; the finite quotients
``(Z/2^K)^d ⋊ C_2`` confirm it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Union

from . import series as S
from .errors import ContractError
from .mobius import is_prime
from .series import TruncatedSeries


class _Infinity:
    """The f-invariant value ∞ (so that 2^f is read as 0)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

RELATION_CASES = ("r1", "r2", "r3", "r4")


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")


def _is_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def check_demushkin_case(d: int, case: str, q: int | None, f, p: int | None = None) -> None:
    """Validate the relation-case constraints of a Demushkin presentation."""
    if case not in RELATION_CASES:
        raise ContractError(f"unknown relation case {case!r}")
    if d < 2:
        raise ContractError(f"Demushkin rank must be >= 2, got {d}")
    if q is not None and p is not None and not _is_power_of(q, p):
        raise ContractError(f"q={q} is not a power of p={p}")
    if case == "r1":
        if q == 2:
            raise ContractError("case r1 requires q != 2")
        if d % 2:
            raise ContractError("case r1 requires even rank")
    else:
        if q is not None and q != 2:
            raise ContractError(f"case {case} requires q = 2")
        if p is not None and p != 2:
            raise ContractError(f"case {case} requires p = 2")
        if case == "r2" and d % 2 == 0:
            raise ContractError("case r2 requires odd rank")
        if case in ("r3", "r4") and d % 2:
            raise ContractError(f"case {case} requires even rank")
    if f is INF:
        if case == "r4":
            raise ContractError("case r4 requires a finite f")
    elif not isinstance(f, int) or f < 2:
        raise ContractError(f"f must be an integer >= 2 or INF, got {f!r}")


@dataclass(frozen=True)
class FreeProP:
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ContractError("rank must be non-negative")


@dataclass(frozen=True)
class Demushkin:
    """Demushkin group of rank ``d``.

    ``case``, ``q`` and ``f`` describe the defining relation; the
    Hilbert–Poincaré series depends on ``d`` only.  When ``case`` is
    omitted it defaults to r2 for odd ``d`` and r1 otherwise.
    """

    d: int
    case: str | None = None
    q: int | None = None
    f: object = 2

    def __post_init__(self):
        if self.case is None:
            object.__setattr__(self, "case", "r2" if self.d % 2 else "r1")
        check_demushkin_case(self.d, self.case, self.q, self.f)


@dataclass(frozen=True)
class FreeProdCyclicP:
    p: int
    copies: int

    def __post_init__(self):
        _check_prime(self.p)
        if self.copies < 1:
            raise ContractError("need at least one copy of C_p")


@dataclass(frozen=True)
class SuperPyth:
    """The group Z_2^d ⋊ C_2 with C_2 acting by inversion."""

    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ContractError("rank must be non-negative")


@dataclass(frozen=True)
class MixedFreeProd:
    demushkin_ranks: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        ranks = tuple(self.demushkin_ranks)
        object.__setattr__(self, "demushkin_ranks", ranks)
        if any(r < 2 for r in ranks):
            raise ContractError("Demushkin ranks must be >= 2")
        if self.free_rank < 0:
            raise ContractError("free rank must be non-negative")


@dataclass(frozen=True)
class CyclicPFree:
    """C_p * S with S free pro-p of rank d."""

    p: int
    d: int

    def __post_init__(self):
        _check_prime(self.p)
        if self.d < 0:
            raise ContractError("rank must be non-negative")


GroupFamily = Union[FreeProP, Demushkin, FreeProdCyclicP, SuperPyth, MixedFreeProd, CyclicPFree]


def check_family_prime(family: GroupFamily, p: int) -> None:
    _check_prime(p)
    if isinstance(family, (FreeProdCyclicP, CyclicPFree)) and family.p != p:
        raise ContractError(f"{family} is a pro-{family.p} group, not pro-{p}")
    if isinstance(family, SuperPyth) and p != 2:
        raise ContractError("SuperPyth is a pro-2 group")
    if isinstance(family, Demushkin):
        if family.case != "r1" and p != 2:
            raise ContractError(f"Demushkin case {family.case} only occurs for p = 2")
        if family.q is not None and not _is_power_of(family.q, p):
            raise ContractError(f"q={family.q} is not a power of p={p}")
    if isinstance(family, MixedFreeProd) and any(r % 2 for r in family.demushkin_ranks) and p != 2:
        raise ContractError("odd-rank Demushkin factors only occur for p = 2")


def family_rational_function(family: GroupFamily, p: int) -> tuple[list[int], list[int]]:
    """Numerator and denominator polynomials of the family's series.

    SuperPyth is a rational function too: ``(1+t)/(1-t)^d``.
    """
    check_family_prime(family, p)
    if isinstance(family, FreeProP):
        return [1], [1, -family.d]
    if isinstance(family, Demushkin):
        return [1], [1, -family.d, 1]
    if isinstance(family, MixedFreeProd):
        r = len(family.demushkin_ranks)
        return [1], [1, -(sum(family.demushkin_ranks) + family.free_rank), r]
    if isinstance(family, FreeProdCyclicP):
        d = family.copies - 1
        return [1] * p, [1] + [-d] * (p - 1)
    if isinstance(family, CyclicPFree):
        return [1] * p, [1] + [-family.d] * p
    if isinstance(family, SuperPyth):
        den = [1]
        for _ in range(family.d):
            den = [a - b for a, b in zip(den + [0], [0] + den)]
        return [1, 1], den
    raise ContractError(f"unknown family {family!r}")


def family_series(family: GroupFamily, p: int, order: int) -> TruncatedSeries:
    if order < 1:
        raise ContractError("order must be >= 1")
    num, den = family_rational_function(family, p)
    return S.from_rational_function(num, den, order)


def free_product_series(factors: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Series of a free product: ``(sum_i P_i^{-1} - (k-1))^{-1}``."""
    factors = list(factors)
    if len(factors) < 2:
        raise ContractError("free product needs at least two factors")
    order = factors[0].order
    for f in factors:
        if f.order != order:
            raise ContractError("all factors must have the same order")
        if f[0] != 1:
            raise ContractError("every factor must have constant term 1")

    def lemaire(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        return S.inverse(S.inverse(a) + S.inverse(b) - 1)

    return reduce(lemaire, factors)


def _cyclic_factor(n: int, p: int, order: int) -> list[Fraction]:
    """Coefficients of (1 - t^{np})/(1 - t^n) = 1 + t^n + ... + t^{n(p-1)}."""
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(p):
        if n * k <= order:
            coeffs[n * k] = Fraction(1)
    return coeffs


def jennings_product(c: Sequence[int], p: int, order: int) -> TruncatedSeries:
    """Expand ``prod_{n>=1} ((1 - t^{np})/(1 - t^n))^{c_n}`` to the given order."""
    if len(c) != order:
        raise ContractError(f"need {order} dimensions, got {len(c)}")
    result = S.one(order)
    for n, cn in enumerate(c, start=1):
        if cn < 0:
            raise ContractError(f"c_{n} = {cn} is negative")
        if cn:
            result = result * S.TruncatedSeries(tuple(_cyclic_factor(n, p, order)), order) ** cn
    return result


def witt_product(w: Sequence[int], order: int) -> TruncatedSeries:
    """Expand ``prod_{n>=1} (1 - t^n)^{-w_n}``; negative exponents are allowed."""
    if len(w) != order:
        raise ContractError(f"need {order} exponents, got {len(w)}")
    result = S.one(order)
    for n, wn in enumerate(w, start=1):
        if wn:
            factor = S.from_polynomial([1] + [0] * (n - 1) + [-1], order)
            result = result * factor ** (-wn)
    return result
