"""Exact rational kernel: canonical fractions, cached factorials, and the
auxiliary coefficients a_n and b_n of the shortened recurrence.

Rationals are :class:`fractions.Fraction`, which reduces on construction and
keeps the sign on the numerator, so every value observed outside this module
is already canonical.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, prod

__all__ = [
    "ExactRational",
    "FactorialTable",
    "FrozenTableError",
    "normalize",
    "is_canonical",
    "factorial",
    "coeff_a",
    "coeff_b",
    "DEFAULT_FACTORIALS",
]

ExactRational = Fraction


class FrozenTableError(LookupError):
    pass


def normalize(num: int, den: int) -> Fraction:
    """Return ``num/den`` in lowest terms with a positive denominator.

    >>> normalize(-3, -6)
    Fraction(1, 2)
    """
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {num}/0")
    return Fraction(int(num), int(den))


def is_canonical(q: Fraction) -> bool:
    return q.denominator >= 1 and gcd(abs(q.numerator), q.denominator) == 1


class FactorialTable:
    """Growable cache ``entries[k] == k!``.

    Growth is single-writer (guarded by a lock). After :meth:`freeze` the
    table is read-only and requests past the cached bound raise
    :class:`FrozenTableError`, so it can be shared freely between readers.
    """

    def __init__(self, bound: int = 0):
        self._entries = [1]
        self._lock = threading.Lock()
        self._frozen = False
        if bound:
            self.grow(bound)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def bound(self) -> int:
        return len(self._entries) - 1

    def grow(self, bound: int) -> None:
        if bound <= self.bound:
            return
        if self._frozen:
            raise FrozenTableError(f"table frozen at {self.bound}!, cannot grow to {bound}!")
        with self._lock:
            entries = self._entries
            for k in range(len(entries), bound + 1):
                entries.append(entries[-1] * k)

    def freeze(self, bound: int | None = None) -> None:
        if bound is not None:
            self.grow(bound)
        self._frozen = True

    def __getitem__(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"factorial of negative number {k}")
        if k > self.bound:
            self.grow(k)
        return self._entries[k]

    def entries(self) -> list[int]:
        return list(self._entries)


DEFAULT_FACTORIALS = FactorialTable()


def factorial(k: int) -> int:
    return DEFAULT_FACTORIALS[k]


def _coeff_a_factorial(n: int) -> Fraction:
    f = DEFAULT_FACTORIALS
    return Fraction(n * f[2 * n - 2], 2 * f[n - 1] ** 2)


def _coeff_a_product(n: int) -> Fraction:
    if n == 1:
        return Fraction(1, 2)
    return Fraction(n * prod(2 * n - m for m in range(2, n + 1)), 2 * factorial(n - 1))


def _coeff_b_factorial(n: int) -> Fraction:
    f = DEFAULT_FACTORIALS
    return Fraction(f[2 * n], 2 * f[n - 1])


def _coeff_b_product(n: int) -> Fraction:
    if n == 1:
        return Fraction(1)
    return Fraction(n * n * prod(2 * n - m for m in range(1, n)))


def coeff_a(n: int) -> Fraction:
    """``a_n = (n/2)(2n-2)!/((n-1)!)^2``, cross-checked against the product form."""
    if n < 1:
        raise ValueError(f"a_n needs n >= 1, got {n}")
    a = _coeff_a_factorial(n)
    if a != _coeff_a_product(n):
        raise ArithmeticError(f"factorial and product forms of a_{n} disagree")
    return a


def coeff_b(n: int) -> Fraction:
    """``b_n = (2n)!/(2(n-1)!)``, cross-checked against ``n^2 prod_{m<n}(2n-m)``."""
    if n < 1:
        raise ValueError(f"b_n needs n >= 1, got {n}")
    b = _coeff_b_factorial(n)
    if b != _coeff_b_product(n):
        raise ArithmeticError(f"factorial and product forms of b_{n} disagree")
    return b
