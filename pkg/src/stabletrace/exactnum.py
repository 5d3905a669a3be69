"""Exact scalar arithmetic: rationals, Bernoulli numbers, cyclotomic integers.

Every quantity produced by this package is an exact rational or an element
of Z[zeta_m]; nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

# The universal value type for all formula outputs.
Rat = Fraction

_RAT_OPS = ("add", "sub", "mul", "div")


class NonIntegralError(ValueError):
    """A cyclotomic element expected to be a rational integer is not."""


def rat_arith(a: Rat, b: Rat, op: str) -> Rat:
    """Apply one of {add, sub, mul, div} to two exact rationals."""
    if op not in _RAT_OPS:
        raise ValueError(f"unknown rational operation {op!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    return a / b


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Rat:
    """n-th Bernoulli number in the convention with B_1 = -1/2.

    Computed from the defining recurrence sum(C(n+1,k) B_k, k=0..n) = 0.
    """
    if n < 0:
        raise ValueError("Bernoulli numbers are indexed by n >= 0")
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


# -- integer polynomial helpers (coefficient lists, ascending degree) --------


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod_monic(num: list, den: list) -> tuple[list, list]:
    """Divide by a monic polynomial; exact over the integers."""
    assert den and den[-1] == 1, "divisor must be monic"
    rem = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(rem) - deg_d, 0)
    for i in range(len(rem) - 1, deg_d - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, b in enumerate(den):
            rem[i - deg_d + j] -= c * b
    return _poly_trim(quot), _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending degree."""
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_monic(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


@dataclass(frozen=True)
class CycElt:
    """Element of Z[zeta_m], stored as sum(coeffs[i] * zeta_m^i) mod zeta^m - 1.

    Arithmetic reduces exponents mod m only; equality and integrality tests
    reduce modulo the m-th cyclotomic polynomial, which is exact.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient vector length must equal the order")

    @staticmethod
    def zero(m: int) -> "CycElt":
        return CycElt(m, (0,) * m)

    @staticmethod
    def integer(m: int, value: int) -> "CycElt":
        return CycElt(m, (value,) + (0,) * (m - 1))

    @staticmethod
    def zeta_power(m: int, k: int) -> "CycElt":
        coeffs = [0] * m
        coeffs[k % m] = 1
        return CycElt(m, tuple(coeffs))

    def _check_order(self, other: "CycElt") -> None:
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CycElt") -> "CycElt":
        self._check_order(other)
        return CycElt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycElt") -> "CycElt":
        self._check_order(other)
        return CycElt(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycElt":
        return CycElt(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycElt") -> "CycElt":
        self._check_order(other)
        m = self.order
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % m] += a * b
        return CycElt(m, tuple(out))

    def scaled(self, c: int) -> "CycElt":
        return CycElt(self.order, tuple(c * a for a in self.coeffs))

    def __pow__(self, n: int) -> "CycElt":
        if n < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result = CycElt.integer(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reduced(self) -> tuple[int, ...]:
        """Residue modulo the m-th cyclotomic polynomial (ascending coeffs)."""
        phi = list(cyclotomic_polynomial(self.order))
        _, rem = _poly_divmod_monic(list(self.coeffs), phi)
        return tuple(rem)

    def is_zero(self) -> bool:
        return not self.reduced()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycElt):
            return NotImplemented
        if self.order != other.order:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.order, self.reduced()))


def cyc_reduce_to_int(x: CycElt) -> int:
    """The integer value of x, or NonIntegralError naming the residue."""
    rem = x.reduced()
    if not rem:
        return 0
    if len(rem) == 1:
        return rem[0]
    raise NonIntegralError(
        f"element of Z[zeta_{x.order}] is not a rational integer; "
        f"residual coefficients {list(rem)}"
    )


def cyc_divide(num: CycElt, den: CycElt) -> CycElt:
    """Exact quotient num/den in Z[zeta_m]; den must be nonzero.

    Works in Q[x]/(Phi_m) via the extended Euclidean algorithm, then checks
    the quotient has integer coefficients (Z[zeta_m] has a power basis).
    """
    num._check_order(den)
    m = num.order
    phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
    d = _qpoly_mod([Fraction(c) for c in den.coeffs], phi)
    if not d:
        raise ZeroDivisionError("division by zero in Z[zeta]")
    n = _qpoly_mod([Fraction(c) for c in num.coeffs], phi)
    inv = _qpoly_inverse_mod(d, phi)
    q = _qpoly_mod(_qpoly_mul(n, inv), phi)
    coeffs = [0] * m
    for i, c in enumerate(q):
        if c.denominator != 1:
            raise NonIntegralError("quotient is not integral over Z[zeta]")
        coeffs[i] = int(c)
    result = CycElt(m, tuple(coeffs))
    assert result * den == num
    return result


# -- rational polynomial helpers for cyc_divide -------------------------------


def _qpoly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _qpoly_trim(out)


def _qpoly_divmod(num: list, den: list) -> tuple[list, list]:
    den = _qpoly_trim(list(den))
    rem = list(num)
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(rem) - deg_d, 0)
    for i in range(len(rem) - 1, deg_d - 1, -1):
        if rem[i] == 0:
            continue
        c = rem[i] / lead
        quot[i - deg_d] = c
        for j, b in enumerate(den):
            rem[i - deg_d + j] -= c * b
    return _qpoly_trim(quot), _qpoly_trim(rem)


def _qpoly_mod(p: list, modulus: list) -> list:
    _, rem = _qpoly_divmod(p, modulus)
    return rem


def _qpoly_inverse_mod(p: list, modulus: list) -> list:
    """Inverse of p in Q[x]/(modulus) by the extended Euclidean algorithm."""
    r0, r1 = list(modulus), list(p)
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        qt = _qpoly_mul(q, t1)
        t_next = [Fraction(0)] * max(len(t0), len(qt))
        for i, c in enumerate(t0):
            t_next[i] += c
        for i, c in enumerate(qt):
            t_next[i] -= c
        t0, t1 = t1, _qpoly_trim(t_next)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    return [c / r0[0] for c in t0]
