"""Exact scalar arithmetic: rational helpers and cyclotomic field elements.

Rational numbers are plain ``fractions.Fraction`` values throughout the
package; this module adds the exact root helpers the series layer needs,
plus a dense representation of Q(zeta_N) with canonical reduction modulo
the N-th cyclotomic polynomial.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction


class OrderMismatch(ArithmeticError):
    """Arithmetic between cyclotomic numbers of different orders.

    Callers embed into a common order first; mixing orders silently would
    make equality meaningless.
    """


def integer_nth_root(m: int, n: int) -> int | None:
    """Exact n-th root of an integer, or None if m is not a perfect power.

    >>> integer_nth_root(729, 6)
    3
    >>> integer_nth_root(730, 6) is None
    True
    >>> integer_nth_root(-27, 3)
    -3
    """
    if n <= 0:
        raise ValueError("root index must be positive")
    if m < 0:
        if n % 2 == 0:
            return None
        r = integer_nth_root(-m, n)
        return None if r is None else -r
    if m in (0, 1) or n == 1:
        return m
    r = round(m ** (1.0 / n))
    # float guess, then walk to the exact root
    while r**n > m:
        r -= 1
    while (r + 1) ** n <= m:
        r += 1
    return r if r**n == m else None


def rational_nth_root(x: Fraction, n: int) -> Fraction | None:
    """Exact positive-branch n-th root of a rational, or None.

    >>> rational_nth_root(Fraction(4, 9), 2)
    Fraction(2, 3)
    >>> rational_nth_root(Fraction(2), 2) is None
    True
    """
    num = integer_nth_root(x.numerator, n)
    den = integer_nth_root(x.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low to high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(9)
    (1, 0, 0, 1, 0, 0, 1)
    >>> len(cyclotomic_polynomial(72)) - 1
    24
    """
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    """Degree of the n-th cyclotomic polynomial."""
    return len(cyclotomic_polynomial(n)) - 1


def _reduce_mod_cyclotomic(vec: list[int], n: int) -> list[int]:
    """Reduce an integer coefficient vector modulo Phi_n in place."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    vec[base + j] -= c * phi[j]
    del vec[deg:]
    while len(vec) < deg:
        vec.append(0)
    return vec


class CyclotomicNumber:
    """Element of Q(zeta_n), stored as integer coordinates over one denominator.

    The coordinate vector has length deg Phi_n and represents the element in
    the power basis 1, zeta, ..., zeta^(phi(n)-1); the vector is always fully
    reduced (gcd of all numerators with the denominator is 1, denominator
    positive), so equality is plain tuple comparison.

    >>> w = CyclotomicNumber.zeta(3)
    >>> (w * w + w + 1).is_zero()
    True
    >>> (CyclotomicNumber.one(3) / (1 + w)) == 1 + w**2
    True
    >>> CyclotomicNumber.zeta(72) ** 72 == 1
    True
    """

    __slots__ = ("order", "nums", "den")

    def __init__(self, order: int, nums: tuple[int, ...], den: int = 1):
        deg = euler_phi(order)
        if len(nums) != deg:
            raise ValueError(f"expected {deg} coordinates for order {order}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = tuple(-c for c in nums)
            den = -den
        g = math.gcd(den, *nums) if nums else den
        if g > 1:
            nums = tuple(c // g for c in nums)
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, order: int, value: Fraction | int) -> "CyclotomicNumber":
        value = Fraction(value)
        deg = euler_phi(order)
        nums = (value.numerator,) + (0,) * (deg - 1)
        return cls(order, nums, value.denominator)

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "CyclotomicNumber":
        return cls.from_rational(order, 1)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        """The root of unity exp(2 pi i power / order) as a field element."""
        power %= order
        vec = [0] * (power + 1)
        vec[power] = 1
        _reduce_mod_cyclotomic(vec, order)
        return cls(order, tuple(vec), 1)

    # -- predicates and conversions --------------------------------------

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(self.nums[0], self.den)

    def coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates in the power basis, as Fractions."""
        return tuple(Fraction(c, self.den) for c in self.nums)

    def embed(self, new_order: int) -> "CyclotomicNumber":
        """Image under Q(zeta_n) -> Q(zeta_m), zeta_n |-> zeta_m^(m/n).

        Requires n | m.

        >>> w = CyclotomicNumber.zeta(3).embed(72)
        >>> w == CyclotomicNumber.zeta(72, 24)
        True
        """
        if new_order % self.order != 0:
            raise OrderMismatch(f"{self.order} does not divide {new_order}")
        if new_order == self.order:
            return self
        step = new_order // self.order
        vec = [0] * (len(self.nums) * step)
        for i, c in enumerate(self.nums):
            if c:
                vec[i * step] += c
        _reduce_mod_cyclotomic(vec, new_order)
        return CyclotomicNumber(new_order, tuple(vec), self.den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise OrderMismatch(
                    f"orders differ: {self.order} vs {other.order}; embed first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        nums = tuple(a * db + b * da for a, b in zip(self.nums, o.nums))
        return CyclotomicNumber(self.order, nums, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-c for c in self.nums), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.nums, o.nums
        vec = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        vec[i + j] += ca * cb
        _reduce_mod_cyclotomic(vec, self.order)
        return CyclotomicNumber(self.order, tuple(vec), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Phi_n is irreducible over Q, so every nonzero element is a unit.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # Work in Q[x]: find u with u * self = 1 (mod Phi_n).
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = [Fraction(c, self.den) for c in self.nums]

        def deg(p):
            d = len(p) - 1
            while d >= 0 and p[d] == 0:
                d -= 1
            return d

        def poly_sub_scaled(p, q, s, shift):
            # p -= s * x^shift * q
            need = deg(q) + shift + 1
            if len(p) < need:
                p.extend([Fraction(0)] * (need - len(p)))
            for i in range(deg(q) + 1):
                if q[i]:
                    p[i + shift] -= s * q[i]
            return p

        r0, r1 = phi[:], a[:]
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while True:
            d1 = deg(r1)
            if d1 < 0:
                raise ZeroDivisionError("element shares a factor with Phi_n")
            if d1 == 0:
                break
            d0 = deg(r0)
            if d0 < d1:
                r0, r1, t0, t1 = r1, r0, t1, t0
                continue
            s = r0[d0] / r1[d1]
            poly_sub_scaled(r0, r1, s, d0 - d1)
            poly_sub_scaled(t0, t1, s, d0 - d1)
            if deg(r0) < deg(r1):
                r0, r1, t0, t1 = r1, r0, t1, t0
        c = r1[0]
        inv = [t / c for t in t1]
        den = math.lcm(*(f.denominator for f in inv)) if inv else 1
        vec = [int(f * den) for f in inv]
        _reduce_mod_cyclotomic(vec, self.order)
        return CyclotomicNumber(self.order, tuple(vec), den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self.nums == other.nums and self.den == other.den
            # Different orders only agree on the shared rational subfield.
            return (
                self.is_rational()
                and other.is_rational()
                and self.rational_value() == other.rational_value()
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == Fraction(other)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.order, self.nums, self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.nums):
            if c:
                coeff = str(Fraction(c, self.den))
                terms.append(coeff if i == 0 else f"{coeff}*z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"


def cyclotomic_root(order: int, power: int = 1) -> CyclotomicNumber:
    """The root of unity exp(2 pi i power / order), canonically reduced.

    >>> cyclotomic_root(1, 0).rational_value()
    Fraction(1, 1)
    >>> cyclotomic_root(72, 36).rational_value()
    Fraction(-1, 1)
    >>> w = cyclotomic_root(3)
    >>> (1 + w + w * w).is_zero()
    True
    """
    return CyclotomicNumber.zeta(order, power)
