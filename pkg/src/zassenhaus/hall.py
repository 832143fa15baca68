"""Hall commutators and bases of Zassenhaus quotients of free pro-p groups.

Order: heavier terms are larger; within a weight, compare left factors
and then right factors.  Generators satisfy x_1 > x_2 > ... > x_d.
A bracket [c1, c2] is a Hall commutator when c1 and c2 are, c1 > c2, and
if c1 = [c3, c4] then c2 >= c4.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import ContractError
from .mobius import classical_mobius, divisors, is_prime

HALL_ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class Generator:
    index: int

    @property
    def weight(self) -> int:
        return 1

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Bracket:
    left: "HallTerm"
    right: "HallTerm"
    weight: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weight", self.left.weight + self.right.weight)

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


HallTerm = Union[Generator, Bracket]


def sort_key(c: HallTerm) -> tuple:
    """Key realising the total order (larger key = larger term)."""
    if isinstance(c, Generator):
        return (1, -c.index)
    return (c.weight, sort_key(c.left), sort_key(c.right))


def is_hall(c: HallTerm) -> bool:
    """Structural re-check of the admissibility conditions."""
    if isinstance(c, Generator):
        return c.index >= 1
    c1, c2 = c.left, c.right
    if not (is_hall(c1) and is_hall(c2)):
        return False
    if not sort_key(c1) > sort_key(c2):
        return False
    if isinstance(c1, Bracket) and sort_key(c2) < sort_key(c1.right):
        return False
    return True


@lru_cache(maxsize=None)
def _basis(d: int, n: int) -> tuple[HallTerm, ...]:
    if n == 1:
        terms = [Generator(i) for i in range(1, d + 1)]
    else:
        terms = []
        for w1 in range(1, n):
            w2 = n - w1
            for c1 in _basis(d, w1):
                k1 = sort_key(c1)
                for c2 in _basis(d, w2):
                    k2 = sort_key(c2)
                    if k1 <= k2:
                        continue
                    if isinstance(c1, Bracket) and k2 < sort_key(c1.right):
                        continue
                    terms.append(Bracket(c1, c2))
    return tuple(sorted(terms, key=sort_key))


def hall_basis(d: int, n: int) -> list[HallTerm]:
    """Hall commutators of weight n on d generators, ascending."""
    if d < 1 or n < 1:
        raise ContractError("need d >= 1 and n >= 1")
    return list(_basis(d, n))


def _level_pairs(d: int, levels: list[np.ndarray], offsets: list[int], n: int):
    """For weight n, yield (w2, rank1, lo, hi): c1 has global rank ``rank1`` and
    the admissible right factors are the weight-w2 terms with ranks in [lo, hi)."""
    for w1 in range(1, n):
        w2 = n - w1
        right1 = levels[w1 - 1]
        rank1 = offsets[w1 - 1] + np.arange(right1.size)
        lo = np.maximum(offsets[w2 - 1], right1)
        hi = np.minimum(offsets[w2 - 1] + levels[w2 - 1].size, rank1)
        yield w2, rank1, lo, hi


def _count(d: int, n: int) -> int:
    """Count Hall commutators by enumerating rank intervals only.

    Every term is replaced by its global rank in the total order; a level
    stores, for each term, the rank of its right factor (-1 for generators).
    Terms are produced in increasing order, so ranks come for free, and the
    top weight is only counted, never built.
    """
    levels = [np.full(d, -1, dtype=np.int64)]
    offsets = [0]
    for w in range(2, n + 1):
        total = 0
        rights = []
        for w2, rank1, lo, hi in _level_pairs(d, levels, offsets, w):
            cnt = np.maximum(hi - lo, 0)
            total += int(cnt.sum())
            if w < n:
                # right factors of each new bracket run over [lo, hi)
                starts = np.repeat(lo, cnt)
                pos = np.arange(starts.size) - np.repeat(np.cumsum(cnt) - cnt, cnt)
                rights.append(starts + pos)
        if w == n:
            return total
        offsets.append(offsets[-1] + levels[-1].size)
        levels.append(np.concatenate(rights) if rights else np.zeros(0, dtype=np.int64))
    return d


def witt_number(d: int, n: int) -> int:
    total = sum(classical_mobius(n // m) * d**m for m in divisors(n))
    assert total % n == 0
    return total // n


def hall_count(d: int, n: int) -> int:
    if d < 1 or n < 1:
        raise ContractError("need d >= 1 and n >= 1")
    if n > HALL_ENUMERATION_LIMIT:
        return witt_number(d, n)
    return _count(d, n)


def zassenhaus_basis(d: int, p: int, n: int) -> list[tuple[HallTerm, int]]:
    """Pairs (c, p^e) whose powers c^(p^e) give a basis of S_(n)/S_(n+1).

    With n = p^k m and (m, p) = 1 the pieces are C_m^(p^k), C_pm^(p^(k-1)),
    ..., C_n.
    """
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if d < 1 or n < 1:
        raise ContractError("need d >= 1 and n >= 1")
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    out = []
    for j in range(k + 1):
        exp = p ** (k - j)
        out.extend((c, exp) for c in hall_basis(d, m * p**j))
    return out


def format_power(c: HallTerm, exp: int) -> str:
    return str(c) if exp == 1 else f"{c}^{exp}"
