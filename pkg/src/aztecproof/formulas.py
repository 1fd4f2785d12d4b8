"""Closed-form product formulas, evaluated exactly.

Every evaluator works over :class:`fractions.Fraction` internally and insists
that the final value is a non-negative integer; a remainder means a
transcription or construction bug and raises :class:`NonInteger`.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .dyadic import DyadicWeight


class FormulaError(ValueError):
    pass


class InvalidParameter(FormulaError):
    pass


class NotBalanced(FormulaError):
    pass


class NonInteger(FormulaError):
    pass


_lock = threading.Lock()
_fact = [1]
_h = [1]  # _h[n] = 0! 1! ... (n-1)!


def factorial(n: int) -> int:
    if n < 0:
        raise InvalidParameter(f"factorial of {n}")
    if n >= len(_fact):
        with _lock:
            while len(_fact) <= n:
                _fact.append(_fact[-1] * len(_fact))
    return _fact[n]


def superfactorial(n: int) -> int:
    """h(n) = 0! 1! ... (n-1)!, with h(0) = 1 and h(n) = 0 for n < 0."""
    if n < 0:
        return 0
    if n >= len(_h):
        factorial(n)
        with _lock:
            while len(_h) <= n:
                _h.append(_h[-1] * _fact[len(_h) - 1])
    return _h[n]


def double_factorial(n: int) -> int:
    """n (n-2) (n-4) ...; 0!! = (-1)!! = 1."""
    if n < -1:
        raise InvalidParameter(f"double factorial of {n}")
    r = 1
    while n > 1:
        r *= n
        n -= 2
    return r


def _pow2(e: Fraction) -> Fraction:
    if e.denominator != 1:
        raise NonInteger(f"exponent of two {e} is not an integer")
    return Fraction(2) ** int(e)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonInteger(f"{what} evaluated to non-integer {value}")
    if value < 0:
        raise NonInteger(f"{what} evaluated to negative {value}")
    return value.numerator


def formula_T(n: int) -> int:
    """Domino tilings of the Aztec triangle of order n."""
    if n < 0:
        raise InvalidParameter(f"n={n}")
    v = Fraction(2 ** (n * (n - 1) // 2))
    for i in range(n):
        v *= Fraction(factorial(4 * i + 2), factorial(n + 2 * i + 1))
    return _integral(v, f"formula_T({n})")


def formula_C(m: int, n: int, a: int, b: int, c: int, d: int) -> int:
    """Perfect matchings of the balanced cruciform graph."""
    if a + b + c + d != m + n - 1:
        raise NotBalanced(f"a+b+c+d={a + b + c + d} but m+n-1={m + n - 1}")
    h = superfactorial
    num = h(m + n + 1) ** 2 * h(m - a) * h(n - b) * h(m - c) * h(n - d)
    if num == 0:
        return 0
    e = (
        Fraction(m * (3 * m + 1), 4)
        + Fraction(n * (3 * n + 1), 4)
        - Fraction((a + c) * (b + d), 2)
        - Fraction((m - n) * (a - b + c - d), 4)
    )
    den = h(n + a + 1) * h(m + b + 1) * h(n + c + 1) * h(m + d + 1)
    return _integral(_pow2(e) * Fraction(num, den), f"formula_C{(m, n, a, b, c, d)}")


def formula_D(m: int, n: int, a: int, b: int, d: int) -> int:
    """Perfect matchings of the balanced nearly-cruciform graph with equal
    NW and SE pier lengths ``a``."""
    if 2 * a + b + d != m + n - 2:
        raise NotBalanced(f"2a+b+d={2 * a + b + d} but m+n-2={m + n - 2}")
    h = superfactorial
    num = h(m + n + 1) * h(m + n) * h(m - a) * h(m - a - 1) * h(n - b) * h(n - d)
    if num == 0:
        return 0
    e = Fraction(n * (n - 2 * a - 2)) - Fraction(3 * n * (n - 1), 2) + (m - a) * (m - a - 1) + (n + a + 1) * (n + a)
    den = h(n + a + 1) ** 2 * h(m + b + 1) * h(m + d + 1)
    v = _pow2(e) * Fraction(double_factorial(m + b - 1), double_factorial(n - d - 1)) * Fraction(num, den)
    return _integral(v, f"formula_D{(m, n, a, b, d)}")


def check_subset(m: int, n: int, T) -> tuple[int, ...]:
    T = tuple(int(t) for t in T)
    if not (1 <= m <= n):
        raise InvalidParameter(f"need 1 <= m <= n, got m={m}, n={n}")
    if len(T) != m or list(T) != sorted(set(T)) or T[0] < 1 or T[-1] > n + 1:
        raise InvalidParameter(f"T={T} must be {m} increasing elements of [1, {n + 1}]")
    return T


def formula_trimmed_AR(m: int, n: int, T) -> int:
    """Perfect matchings of the trimmed Aztec rectangle with bottom set T removed."""
    T = check_subset(m, n, T)
    v = Fraction(2 ** (m * (m - 1) // 2), superfactorial(m))
    for i in range(m):
        for j in range(i + 1, m):
            v *= T[j] - T[i]
    return _integral(v, f"formula_trimmed_AR({m}, {n}, {T})")


def ratio_identity(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """The three expressions for M(T_{n+1}) / M(T_n):

    * from the cruciform and nearly-cruciform formulas,
    * the closed double-factorial form,
    * straight from ``formula_T``.
    """
    if n < 1:
        raise InvalidParameter(f"n={n}")
    lhs = Fraction(formula_C(2 * n + 1, 2 * n + 1, n + 1, n, n, n), 2 * formula_D(2 * n + 1, 2 * n + 1, n, n, n))
    mid = (
        Fraction(2**n)
        * Fraction(double_factorial(n), double_factorial(3 * n))
        * Fraction(factorial(4 * n + 2), factorial(3 * n + 2))
    )
    rhs = Fraction(formula_T(n + 1), formula_T(n))
    return lhs, mid, rhs


def as_dyadic(value: int) -> DyadicWeight:
    return DyadicWeight(value)
