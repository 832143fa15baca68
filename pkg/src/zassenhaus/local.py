"""Square classes of Q_p and the quadratic Hilbert symbol.

A class is stored as its valuation parity plus unit coordinates over F_2:
``(e,)`` with e = 1 for the non-residue unit when p is odd, and ``(s, t)``
for the unit (-1)^s 5^t when p = 2.

Hilbert symbol, with a = p^alpha u and b = p^beta v:

* odd p:  (-1)^(alpha beta eps(p)) (u/p)^beta (v/p)^alpha, eps(p) = (p-1)/2
* p = 2:  (-1)^(eps(u) eps(v) + alpha omega(v) + beta omega(u)),
  eps(u) = (u-1)/2, omega(u) = (u^2-1)/8 (mod 2)

Values at p = 2 on the representatives 1, -1, 5, -5, 2, -2, 10, -10
(+ means +1)::

           1  -1   5  -5   2  -2  10 -10
      1    +   +   +   +   +   +   +   +
     -1    +   -   +   -   +   -   +   -
      5    +   +   +   +   -   -   -   -
     -5    +   -   +   -   -   +   -   +
      2    +   +   -   -   +   +   -   -
     -2    +   -   -   +   +   -   -   +
     10    +   +   -   -   -   -   +   +
    -10    +   -   -   +   -   +   +   -
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import ContractError
from .mobius import is_prime


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    if not is_prime(p) or p == 2:
        raise ContractError(f"need an odd prime, got {p}")
    return next(a for a in range(2, p) if legendre(a, p) == -1)


@dataclass(frozen=True, order=True)
class SquareClass:
    p: int
    valuation_parity: int
    unit_class: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ContractError(f"{self.p} is not prime")
        want = 2 if self.p == 2 else 1
        uc = tuple(int(x) % 2 for x in self.unit_class)
        if len(uc) != want:
            raise ContractError(f"unit class needs {want} coordinates for p={self.p}")
        object.__setattr__(self, "unit_class", uc)
        object.__setattr__(self, "valuation_parity", int(self.valuation_parity) % 2)

    @classmethod
    def from_int(cls, p: int, a: int) -> "SquareClass":
        if a == 0:
            raise ContractError("0 has no square class")
        v = 0
        while a % p == 0:
            a //= p
            v += 1
        if p == 2:
            s, t = {1: (0, 0), 3: (1, 1), 5: (0, 1), 7: (1, 0)}[a % 8]
            return cls(p, v, (s, t))
        return cls(p, v, (0 if legendre(a, p) == 1 else 1,))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if other.p != self.p:
            raise ContractError("classes over different primes")
        return SquareClass(
            self.p,
            self.valuation_parity + other.valuation_parity,
            tuple(a + b for a, b in zip(self.unit_class, other.unit_class)),
        )

    def is_trivial(self) -> bool:
        return self.valuation_parity == 0 and not any(self.unit_class)

    def unit_rep(self) -> int:
        if self.p == 2:
            s, t = self.unit_class
            return (-1) ** s * 5**t
        return smallest_nonresidue(self.p) if self.unit_class[0] else 1

    def value(self) -> int:
        """Integer representative p^v * unit."""
        return self.p**self.valuation_parity * self.unit_rep()

    def __str__(self) -> str:
        return str(self.value())


def square_class_reps(p: int) -> list[SquareClass]:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    units = list(product((0, 1), repeat=2)) if p == 2 else [(0,), (1,)]
    return [SquareClass(p, v, u) for v in (0, 1) for u in units]


def hilbert_symbol(a: SquareClass, b: SquareClass) -> int:
    if a.p != b.p:
        raise ContractError("classes over different primes")
    p = a.p
    al, be = a.valuation_parity, b.valuation_parity
    if p == 2:
        u, v = a.unit_rep(), b.unit_rep()

        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + al * omega(v) + be * omega(u)
        return -1 if e % 2 else 1
    lu = -1 if a.unit_class[0] else 1
    lv = -1 if b.unit_class[0] else 1
    sign = (-1) ** (al * be * ((p - 1) // 2))
    return sign * lu**be * lv**al


def d4_admissible_pairs(p: int) -> list[tuple[SquareClass, SquareClass]]:
    """Unordered pairs {a, b} of independent classes with (a, b) = 1."""
    nontrivial = [c for c in square_class_reps(p) if not c.is_trivial()]
    return [(a, b) for a, b in combinations(nontrivial, 2) if hilbert_symbol(a, b) == 1]


def d4_extension_count_qp(p: int) -> int:
    """Number of D_4-extensions of Q_p.

    Each admissible pair contributes one extension per class of
    Q_p^x / <squares, a, b>, i.e. |classes| / 4 of them.
    """
    classes = square_class_reps(p)
    return len(d4_admissible_pairs(p)) * (len(classes) // 4)
