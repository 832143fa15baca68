"""Truncated formal power series with exact rational coefficients.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``t^0 .. t^N``.  Binary operations require both operands to have the same
order; use :meth:`TruncatedSeries.truncate` to compare series of different
orders explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractError, InvertibilityError

__all__ = [
    "TruncatedSeries",
    "from_polynomial",
    "from_rational_function",
    "multiply",
    "inverse",
    "log",
    "one",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    return Fraction(x)


@dataclass(frozen=True)
class TruncatedSeries:
    coefficients: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ContractError(f"order must be non-negative, got {self.order}")
        coeffs = tuple(_frac(c) for c in self.coefficients)
        if len(coeffs) != self.order + 1:
            raise ContractError(
                f"expected {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, order: int) -> "TruncatedSeries":
        """Pad with zeros or drop terms so that the result has the given order."""
        coeffs = list(coeffs)[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise ContractError(
                f"order mismatch: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _constant(other, self.order)
        self._check(other)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
            self.order,
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coefficients), self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                tuple(a * other for a in self.coefficients), self.order
            )
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inverse(self) ** (-k)
        result = _constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            k >>= 1
        return result

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ContractError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coefficients[: order + 1], order)

    def derivative(self) -> tuple[Fraction, ...]:
        """Coefficients of the formal derivative, valid up to t^(order-1)."""
        return tuple(n * self.coefficients[n] for n in range(1, self.order + 1))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def integer_coefficients(self) -> list[int]:
        if not self.is_integral():
            raise ContractError("series has non-integral coefficients")
        return [c.numerator for c in self.coefficients]

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(t^{self.order + 1})"


def _constant(c, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coefficients([c], order)


def one(order: int) -> TruncatedSeries:
    return _constant(1, order)


def from_polynomial(coeffs: Sequence, order: int) -> TruncatedSeries:
    """Embed a polynomial, dropping terms of degree greater than ``order``."""
    return TruncatedSeries.from_coefficients(coeffs, order)


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the common order."""
    a._check(b)
    n = a.order
    x, y = a.coefficients, b.coefficients
    out = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j in range(n + 1 - i):
            yj = y[j]
            if yj:
                out[i + j] += xi * yj
    return TruncatedSeries(tuple(out), n)


def _divide_coefficients(num: Sequence[Fraction], den: Sequence[Fraction], order: int):
    if not den or den[0] == 0:
        raise InvertibilityError("denominator has zero constant term")
    d0 = den[0]
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for k in range(1, min(n, len(den) - 1) + 1):
            if den[k]:
                acc -= den[k] * out[n - k]
        out.append(acc / d0)
    return out


def from_rational_function(
    numerator: Sequence[int], denominator: Sequence[int], order: int
) -> TruncatedSeries:
    """Expand ``numerator/denominator`` (coefficient lists, lowest degree first)."""
    if order < 0:
        raise ContractError("order must be non-negative")
    num = [_frac(c) for c in numerator]
    den = [_frac(c) for c in denominator]
    return TruncatedSeries(tuple(_divide_coefficients(num, den, order)), order)


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    if a.coefficients[0] == 0:
        raise InvertibilityError("series with zero constant term is not invertible")
    return TruncatedSeries(
        tuple(_divide_coefficients([Fraction(1)], a.coefficients, a.order)), a.order
    )


def log(a: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1.

    Uses ``(log a)' = a'/a`` so every step is an exact rational division.
    """
    if a.coefficients[0] != 1:
        raise ContractError(
            f"log requires constant term 1, got {a.coefficients[0]}"
        )
    n = a.order
    if n == 0:
        return TruncatedSeries((Fraction(0),), 0)
    # q = a'/a up to t^(n-1); then integrate.
    q = _divide_coefficients(list(a.derivative()), a.coefficients, n - 1)
    coeffs = [Fraction(0)] + [q[k - 1] / k for k in range(1, n + 1)]
    return TruncatedSeries(tuple(coeffs), n)
