"""Named modular objects as exact q-expansions.

Divisor sums, the weight-two quasi-modular series f(q), Dedekind eta and eta
quotients, Jacobi theta constants with their Halphen system, lattice theta
functions for the even-sum sublattice of Z^4, and the classical tower
E4 -> Delta -> j -> J.  Everything is a QSeries or PuiseuxSeries with exact
coefficients; identity checks come back as IdentityReports.
"""

from __future__ import annotations

import dataclasses
import math
import re
import threading
from fractions import Fraction

from .exact_arith import CyclotomicNumber
from .qseries import PuiseuxSeries, QSeries
from .reporting import (
    IdentityReport,
    combine,
    failure_report,
    pass_report,
    puiseux_match,
    series_match,
)

# -- divisor sums -------------------------------------------------------------

_sigma_lock = threading.Lock()
_sigma_table: dict[tuple[int, int], int] = {}


def _divisor_power_sum(n: int, power: int) -> int:
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += d**power
            e = n // d
            if e != d:
                total += e**power
    return total


def sigma(n: int, power: int = 1) -> int:
    """Sum of the `power`-th powers of the positive divisors of n.

    >>> sigma(6)
    12
    >>> sigma(10) == 3 * sigma(5)
    True
    """
    if n < 1:
        raise ValueError("sigma is defined for positive integers")
    key = (n, power)
    with _sigma_lock:
        value = _sigma_table.get(key)
        if value is None:
            value = _divisor_power_sum(n, power)
            _sigma_table[key] = value
        return value


def f_series(truncation: int) -> QSeries:
    """The logarithmic eta derivative -1/24 + sum sigma(n) q^n.

    >>> f_series(4).coefficient(0)
    Fraction(-1, 24)
    >>> f_series(4).coefficient(2)
    Fraction(3, 1)
    """
    if truncation < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fraction(-1, 24)] + [Fraction(sigma(n)) for n in range(1, truncation)]
    return QSeries(coeffs, 0, truncation)


# -- eta quotients --------------------------------------------------------------


def _eta_unit_coeffs(scale: int, truncation: int) -> list[int]:
    """Integer coefficients of prod_{n>=1} (1 - q^(scale*n)) through q^(T-1)."""
    cs = [0] * truncation
    if truncation > 0:
        cs[0] = 1
    n = scale
    while n < truncation:
        # multiply by (1 - q^n); descending index keeps reads unpolluted
        for i in range(truncation - 1 - n, -1, -1):
            if cs[i]:
                cs[i + n] -= cs[i]
        n += scale
    return cs


def eta_unit(scale: int, truncation: int) -> QSeries:
    """The unit part prod (1 - q^(scale*n)) of eta(q^scale)."""
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    return QSeries(_eta_unit_coeffs(scale, truncation), 0, truncation)


def dedekind_eta(truncation: int, scale: int = 1) -> PuiseuxSeries:
    """eta(q^scale) = q^(scale/24) * prod (1 - q^(scale*n))."""
    return PuiseuxSeries(1, Fraction(scale, 24), eta_unit(scale, truncation))


@dataclasses.dataclass(frozen=True)
class EtaQuotient:
    """A finite product prod eta(q^m)^r with exact rational exponents r."""

    factors: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        factors = tuple((int(m), Fraction(r)) for m, r in self.factors)
        for m, r in factors:
            if m < 1:
                raise ValueError(f"eta scale must be positive, got {m}")
            if r == 0:
                raise ValueError("zero exponents are not stored")
        object.__setattr__(self, "factors", factors)

    @property
    def offset(self) -> Fraction:
        return sum((Fraction(m) * r / 24 for m, r in self.factors), Fraction(0))

    def expand(self, truncation: int) -> PuiseuxSeries:
        unit = QSeries.one(truncation)
        for m, r in self.factors:
            base = eta_unit(m, truncation)
            if r.denominator == 1:
                unit = unit * base ** int(r)
            else:
                unit = unit * base.pow_rational(r)
        return PuiseuxSeries(1, self.offset, unit)

    _FACTOR_RE = re.compile(r"^eta\((\d+)\)(?:\^(-?\d+(?:/\d+)?))?$")

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse the textual form "eta(9)^3 * eta(3)^-1".

        >>> EtaQuotient.parse("eta(2)^-3/2 * eta(1)").factors
        ((2, Fraction(-3, 2)), (1, Fraction(1, 1)))
        """
        factors = []
        for piece in text.split("*"):
            piece = piece.strip()
            m = cls._FACTOR_RE.match(piece)
            if not m:
                raise ValueError(f"cannot parse eta factor {piece!r}")
            scale = int(m.group(1))
            exponent = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            factors.append((scale, exponent))
        if not factors:
            raise ValueError("empty eta quotient")
        return cls(tuple(factors))

    def __str__(self):
        return " * ".join(
            f"eta({m})" if r == 1 else f"eta({m})^{r}" for m, r in self.factors
        )


def eta_expand(quotient: EtaQuotient | str, truncation: int) -> PuiseuxSeries:
    if isinstance(quotient, str):
        quotient = EtaQuotient.parse(quotient)
    return quotient.expand(truncation)


# -- Jacobi theta constants and the Halphen system ---------------------------------


def theta_jacobi(which: int, truncation: int) -> PuiseuxSeries:
    """Theta constant as a lattice sum over m in Z.

    which=2: sum q^((m+1/2)^2) = 2 q^(1/4) (1 + q^2 + q^6 + ...)
    which=3: sum q^(m^2)
    which=4: sum (-1)^m q^(m^2)
    """
    if which == 2:
        # (m+1/2)^2 = 1/4 + m(m+1); m and -(m+1) pair up
        entries: dict[int, int] = {}
        m = 0
        while m * (m + 1) < truncation:
            entries[m * (m + 1)] = 1
            m += 1
        return PuiseuxSeries(2, Fraction(1, 4), QSeries.from_coefficient_map(entries, truncation))
    if which in (3, 4):
        entries = {0: 1}
        m = 1
        while m * m < truncation:
            entries[m * m] = 2 if which == 3 else (2 if m % 2 == 0 else -2)
            m += 1
        return PuiseuxSeries(1, Fraction(0), QSeries.from_coefficient_map(entries, truncation))
    raise ValueError("theta index must be 2, 3, or 4")


def theta_logderiv(which: int, truncation: int) -> QSeries:
    """X_i = q d/dq log theta_i, the Halphen variables."""
    return theta_jacobi(which, truncation).logderiv()


# The scalar 2 in 2*eta(q^2)^-1*eta(q^4)^2 is constant, so the logarithmic
# derivative never sees it; logderiv drops scalars by construction.
_THETA_ETA_FORMS = {
    2: EtaQuotient(((2, Fraction(-1)), (4, Fraction(2)))),
    3: EtaQuotient(((1, Fraction(-2)), (2, Fraction(5)), (4, Fraction(-2)))),
    4: EtaQuotient(((1, Fraction(2)), (2, Fraction(-1)))),
}


def theta_eta_reports(truncation: int) -> list[IdentityReport]:
    """X_i from the theta sum against its eta-quotient form, i = 2, 3, 4."""
    out = []
    for i in (2, 3, 4):
        lhs = theta_logderiv(i, truncation)
        rhs = _THETA_ETA_FORMS[i].expand(truncation).logderiv()
        out.append(series_match(f"theta-eta-x{i}", lhs, rhs, truncation))
    return out


def halphen_reports(truncation: int) -> list[IdentityReport]:
    """The three Halphen equations plus the theta-eta forms, as separate reports."""
    x = {i: theta_logderiv(i, truncation) for i in (2, 3, 4)}
    out = []
    for i, j in ((2, 3), (3, 4), (4, 2)):
        lhs = (x[i] + x[j]).qdq().scale(Fraction(1, 2))
        rhs = (x[i] * x[j]).scale(2)
        out.append(series_match(f"halphen-x{i}x{j}", lhs, rhs, truncation, indices=(i, j)))
    out.extend(theta_eta_reports(truncation))
    return out


def halphen_verify(truncation: int) -> IdentityReport:
    if truncation < 4:
        raise ValueError("order must be >= 4")
    return combine("halphen", halphen_reports(truncation))


# -- lattice theta functions ---------------------------------------------------


@dataclasses.dataclass(frozen=True)
class LatticeSpec:
    """Coset (M + shift) of the even-sum lattice M = {x in Z^4 : sum x_i even}.

    The shift is 0 or the unit vector (1,0,0,0); either way the coset norms
    are integers, which is what lets the theta function live in QSeries.
    """

    shift: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.shift) != 4 or not all(isinstance(s, int) for s in self.shift):
            raise ValueError("shift must be four integers")

    @classmethod
    def even_sum(cls) -> "LatticeSpec":
        return cls((0, 0, 0, 0))

    @classmethod
    def unit_shift(cls) -> "LatticeSpec":
        return cls((1, 0, 0, 0))


def lattice_theta(spec: LatticeSpec, truncation: int) -> QSeries:
    """Sum of q^(x,x) over the coset, for norms below the truncation.

    Plain box enumeration over |x_i| <= sqrt(T); membership in M + shift is a
    parity condition on the coordinate sum.
    """
    parity = sum(spec.shift) % 2
    bound = math.isqrt(max(truncation - 1, 0))
    counts = [0] * truncation
    rng = range(-bound, bound + 1)
    for x0 in rng:
        n0 = x0 * x0
        if n0 >= truncation:
            continue
        for x1 in rng:
            n1 = n0 + x1 * x1
            if n1 >= truncation:
                continue
            for x2 in rng:
                n2 = n1 + x2 * x2
                if n2 >= truncation:
                    continue
                base = (x0 + x1 + x2) & 1
                for x3 in rng:
                    n3 = n2 + x3 * x3
                    if n3 < truncation and (base ^ (x3 & 1)) == parity:
                        counts[n3] += 1
    return QSeries(counts, 0, truncation)


# -- Eisenstein series, Delta, j, J ------------------------------------------------


def eisenstein_e4(truncation: int) -> QSeries:
    coeffs = [Fraction(1)] + [Fraction(240 * sigma(n, 3)) for n in range(1, truncation)]
    return QSeries(coeffs, 0, truncation)


def delta_series(truncation: int) -> QSeries:
    """The weight-12 cusp form eta(q)^24 = q - 24q^2 + 252q^3 - ..."""
    return EtaQuotient(((1, Fraction(24)),)).expand(truncation).to_qseries().truncate(truncation)


def j_series(truncation: int) -> QSeries:
    """j = E4^3 / Delta = q^-1 + 744 + 196884q + ..., known through q^(T-1)."""
    slack = truncation + 2
    num = eisenstein_e4(slack) ** 3
    den = delta_series(slack)
    return (num * den.inv()).truncate(truncation)


def J_series(truncation: int) -> QSeries:
    """J(q) = j(q^3)/1728, a Laurent series with valuation -3."""
    inner = j_series(truncation // 3 + 2)
    return inner.substitute_power(3).scale(Fraction(1, 1728)).truncate(truncation)


# -- modular identity suite ---------------------------------------------------------


def verify_f_eta(truncation: int) -> IdentityReport:
    """f(q) built from divisor sums against -q d/dq log eta(q)."""
    lhs = f_series(truncation)
    rhs = -dedekind_eta(truncation).logderiv()
    return series_match("divisor-sum-vs-eta-logderiv", lhs, rhs, truncation)


def verify_even_part(truncation: int) -> IdentityReport:
    """(f(q) + f(-q))/2 = 3 f(q^2) - 2 f(q^4)."""
    f = f_series(truncation)
    lhs = (f + f.twist(-1)).scale(Fraction(1, 2))
    base = f_series(truncation // 2 + 1)
    rhs = base.substitute_power(2).scale(3) - f_series(truncation // 4 + 1).substitute_power(4).scale(2)
    return series_match("even-part-halving", lhs, rhs, truncation)


def verify_sigma_doubling(n_max: int = 10_000) -> IdentityReport:
    """sigma(4n) = 3 sigma(2n) - 2 sigma(n) for all n <= n_max."""
    for n in range(1, n_max + 1):
        residual = sigma(4 * n) - 3 * sigma(2 * n) + 2 * sigma(n)
        if residual:
            return failure_report("sigma-doubling", n_max, (n,), n, Fraction(residual))
    return pass_report("sigma-doubling", n_max)


def verify_eta_product_rotation(truncation: int) -> IdentityReport:
    """Rotated eta product over Q(zeta_72):

        zeta_24 * eta(q) eta(q w^-1) eta(q w^-2) eta(q^9) = eta(q^3)^4,

    where w = exp(2 pi i/3) and each twist q -> q w^-k carries the branch
    zeta_72^-k for the 24th root in the prefactor.
    """
    z = CyclotomicNumber.zeta(72)
    w_inv = z ** (-24)
    eta = dedekind_eta(truncation)
    lhs = (
        eta
        * eta.twist(w_inv, branch=z ** (-1))
        * eta.twist(w_inv**2, branch=z ** (-2))
        * dedekind_eta(truncation, scale=9)
        * z**3
    )
    rhs = EtaQuotient(((3, Fraction(4)),)).expand(truncation)
    return puiseux_match("eta-product-rotation", lhs, rhs, truncation)


def verify_cusp_form_from_j(truncation: int) -> IdentityReport:
    """(q dJ/dq)^6 / (2^6 3^9 J^4 (J-1)^3) = eta(q^3)^24."""
    J = J_series(truncation)
    one = QSeries.one(truncation)
    num = J.qdq() ** 6
    den = (J**4 * (J - one) ** 3).scale(Fraction(2**6 * 3**9))
    lhs = num * den.inv()
    rhs = EtaQuotient(((3, Fraction(24)),)).expand(truncation).to_qseries()
    return series_match("cusp-form-weight12", lhs, rhs, truncation)


def modular_reports(truncation: int, zeta_order: int | None = None) -> list[IdentityReport]:
    """The whole modular identity suite at one order.

    The cyclotomic eta-product check runs at `zeta_order` (defaults to the
    main order) since its arithmetic is the costliest per coefficient.
    """
    if zeta_order is None:
        zeta_order = truncation
    reports = [
        verify_f_eta(truncation),
        verify_even_part(truncation),
        verify_sigma_doubling(),
        *halphen_reports(truncation),
        verify_eta_product_rotation(zeta_order),
        verify_cusp_form_from_j(truncation),
    ]
    return reports
