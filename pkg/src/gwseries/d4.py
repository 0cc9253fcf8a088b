"""The orbifold line with four Z/2 points: series, potential, and checks.

Three q-series drive everything here.  In the genus-zero potential they
multiply the three invariant quartic blocks of the coordinates t1..t4:

    a (four-point block t1 t2 t3 t4),   a = q + 4q^3 + 6q^5 + ...
    b (pure quartics t_i^4 / 4),        b = -1/24 + q^4 + ...
    c (mixed squares t_i^2 t_j^2 / 6),  c = 3q^2 + 6q^4 + ...

They are determined twice over: by the associativity recursion with the
normalization a_1 = 1, and in closed form from the weight-two Eisenstein
series f(q) = -1/24 + sum sigma(n) q^n as

    a = (f(q) - f(-q))/2,   b = f(q^4),   c = f - a - b.

The agreement of the two constructions, the first-order system they satisfy,
their eta-quotient forms, the theta-function bridges, and the lattice
theta-series comparison are all exposed as IdentityReports.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .frobenius import FrobeniusPotential
from .modular import (
    LatticeSpec,
    dedekind_eta,
    eta_expand,
    f_series,
    lattice_theta,
    theta_logderiv,
)
from .qseries import QSeries
from .reporting import GenusOneResult, IdentityReport, combine, series_match

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


@dataclasses.dataclass(frozen=True)
class D4Coefficients:
    a: QSeries
    b: QSeries
    c: QSeries

    def __post_init__(self):
        if self.a.leading() != (1, Fraction(1)):
            raise ValueError("a must start with q")
        if self.b.coefficient(0) != Fraction(-1, 24):
            raise ValueError("b must have constant term -1/24")
        if self.c.coefficient(0) != 0:
            raise ValueError("c must have constant term 0")

    @property
    def truncation(self) -> int:
        return min(self.a.truncation, self.b.truncation, self.c.truncation)


def d4_recursion_solve(order: int) -> D4Coefficients:
    """Solve the quadratic recursion equivalent to associativity.

    The system

        q a' =  (8/3) a c - 24 a b
        q b' = -(2/3) a^2 - (16/3) b c + (8/9) c^2
        q c' =   6 a^2 - (8/3) c^2

    forces c_0 = 0 (order-0 part of the last line) and then b_0 = -1/24
    (order-1 part of the first line, using a_1 = 1).  With those seeds the
    n-th coefficients are isolated on the left:

    >>> sol = d4_recursion_solve(6)
    >>> sol.a
    QSeries(q + 4q^3 + 6q^5 + O(q^6))
    >>> sol.c
    QSeries(3q^2 + 6q^4 + O(q^6))
    """
    if order < 2:
        raise ValueError("need at least two coefficients to apply a_1 = 1")
    a = [Fraction(0)] * order
    b = [Fraction(0)] * order
    c = [Fraction(0)] * order
    a[1] = Fraction(1)
    b[0] = Fraction(-1, 24)
    for n in range(2, order):
        a[n] = sum(
            (a[k] * (Fraction(8, 3) * c[n - k] - 24 * b[n - k]) for k in range(1, n)),
            Fraction(0),
        ) / (n - 1)
        s_aa = sum((a[k] * a[n - k] for k in range(1, n)), Fraction(0))
        s_cc = sum((c[k] * c[n - k] for k in range(1, n)), Fraction(0))
        c[n] = (6 * s_aa - Fraction(8, 3) * s_cc) / n
        s_bc = sum((b[k] * c[n - k] for k in range(1, n)), Fraction(0))
        b[n] = (
            -Fraction(2, 3) * s_aa
            - Fraction(16, 3) * (s_bc + b[0] * c[n])
            + Fraction(8, 9) * s_cc
        ) / n
    make = lambda coeffs: QSeries.from_coefficient_map(
        {e: x for e, x in enumerate(coeffs) if x}, order
    )
    return D4Coefficients(make(a), make(b), make(c))


def d4_analytic(order: int) -> D4Coefficients:
    """Closed forms from the divisor-sum series f = -1/24 + sum sigma(n) q^n.

    The eta-quotient forms of the same three series are computed alongside
    and must agree coefficientwise; a mismatch means the arithmetic layer is
    broken, so it raises rather than reporting.
    """
    f = f_series(order)
    a = (f - f.twist(Fraction(-1))).scale(_HALF)
    quarter_order = -(-order // 4)
    b = f_series(quarter_order).substitute_power(4).truncate(order)
    c = f - a - b
    built = D4Coefficients(a, b, c)
    quotients = d4_eta_forms(order)
    for field in ("a", "b", "c"):
        if getattr(built, field) != getattr(quotients, field):
            raise ArithmeticError(f"divisor-sum and eta forms of {field} disagree")
    return built


def d4_eta_forms(order: int) -> D4Coefficients:
    """The same three series as minus log-derivatives of eta quotients."""
    a = eta_expand("eta(1) * eta(2)^-3/2 * eta(4)^1/2", order).logderiv().scale(-1)
    b = eta_expand("eta(4)^1/4", order).logderiv().scale(-1)
    c = eta_expand("eta(2)^3/2 * eta(4)^-3/4", order).logderiv().scale(-1)
    return D4Coefficients(a, b, c)


def d4_ode_reports(order: int, coeffs: D4Coefficients | None = None) -> list[IdentityReport]:
    """The first-order quadratic system the three series satisfy."""
    s = coeffs or d4_analytic(order)
    a, b, c = s.a, s.b, s.c
    return [
        series_match(
            "d4-ode-a", a.qdq(), (a * c).scale(Fraction(8, 3)) - (a * b).scale(24), order
        ),
        series_match(
            "d4-ode-b",
            b.qdq(),
            (a * a).scale(Fraction(-2, 3))
            - (b * c).scale(Fraction(16, 3))
            + (c * c).scale(Fraction(8, 9)),
            order,
        ),
        series_match(
            "d4-ode-c", c.qdq(), (a * a).scale(6) - (c * c).scale(Fraction(8, 3)), order
        ),
    ]


def d4_theta_bridge_reports(
    order: int, coeffs: D4Coefficients | None = None
) -> list[IdentityReport]:
    """Null-value log-derivatives X_i = q d/dq log theta_i against a, b, c."""
    s = coeffs or d4_analytic(order)
    x2 = theta_logderiv(2, order)
    x3 = theta_logderiv(3, order)
    x4 = theta_logderiv(4, order)
    return [
        series_match(
            "d4-bridge-x2", x2, s.b.scale(-6) + s.c.scale(Fraction(2, 3)), order
        ),
        series_match(
            "d4-bridge-x3", x3, s.a.scale(2) - s.c.scale(Fraction(4, 3)), order
        ),
        series_match(
            "d4-bridge-x4", x4, s.a.scale(-2) - s.c.scale(Fraction(4, 3)), order
        ),
    ]


def d4_verify_odes(order: int, coeffs: D4Coefficients | None = None) -> IdentityReport:
    """One verdict covering the quadratic system and the theta bridges."""
    s = coeffs or d4_analytic(order)
    return combine(
        "d4-odes", d4_ode_reports(order, s) + d4_theta_bridge_reports(order, s)
    )


def d4_eta_form_reports(
    order: int, coeffs: D4Coefficients | None = None
) -> list[IdentityReport]:
    """Eta-quotient log-derivative forms against the divisor-sum forms."""
    analytic = coeffs or d4_analytic(order)
    quotients = d4_eta_forms(order)
    return [
        series_match(
            f"d4-eta-form-{field}",
            getattr(quotients, field),
            getattr(analytic, field),
            order,
        )
        for field in ("a", "b", "c")
    ]


def d4_construction_reports(order: int) -> list[IdentityReport]:
    """Recursion, divisor-sum forms, and eta forms all agree."""
    analytic = d4_analytic(order)
    recursive = d4_recursion_solve(order)
    out = []
    for field in ("a", "b", "c"):
        out.append(
            series_match(
                f"d4-recursion-{field}",
                getattr(recursive, field),
                getattr(analytic, field),
                order,
            )
        )
    out.extend(d4_eta_form_reports(order, analytic))
    return out


def d4_build_potential(order: int, coeffs: D4Coefficients | None = None) -> FrobeniusPotential:
    """Genus-zero potential on coordinates (t0, t1..t4, t), t acting as log q."""
    s = coeffs or d4_analytic(order)
    classical = {(2, 0, 0, 0, 0, 1): _HALF}
    quantum = {(0, 1, 1, 1, 1, 0): s.a}
    quarter_b = s.b.scale(_QUARTER)
    sixth_c = s.c.scale(Fraction(1, 6))
    for i in range(1, 5):
        key = [0] * 6
        key[i] = 2
        classical[(1,) + tuple(key[1:])] = _QUARTER
        key[i] = 4
        quantum[tuple(key)] = quarter_b
        for j in range(i + 1, 5):
            pair = [0] * 6
            pair[i] = pair[j] = 2
            quantum[tuple(pair)] = sixth_c
    degrees = (Fraction(1), _HALF, _HALF, _HALF, _HALF, Fraction(0))
    return FrobeniusPotential(
        ("t0", "t1", "t2", "t3", "t4", "t"), degrees, classical, quantum
    )


def d4_elliptic_weyl_reports(
    order: int, coeffs: D4Coefficients | None = None
) -> list[IdentityReport]:
    """Match against the rank-four root lattice theta series.

    The flat-coordinate potential found on the root-system side carries
    h0 = (1/8) Theta_{shifted}, and h1, h2 built from Theta_{even} and the
    log-derivative of eta(q^2); these must reproduce a, b, c exactly.
    """
    s = coeffs or d4_analytic(order)
    theta_even = lattice_theta(LatticeSpec.even_sum(), order)
    theta_shift = lattice_theta(LatticeSpec.unit_shift(), order)
    half_logderiv = dedekind_eta(order, scale=2).logderiv().scale(_HALF)
    h0 = theta_shift.scale(Fraction(1, 8))
    h1 = (half_logderiv + theta_even.scale(Fraction(1, 24))).scale(-_HALF)
    h2 = (half_logderiv - theta_even.scale(Fraction(1, 24))).scale(Fraction(-3, 2))
    return [
        series_match("d4-weyl-h0", h0, s.a, order),
        series_match("d4-weyl-h1", h1, s.b, order),
        series_match("d4-weyl-h2", h2, s.c, order),
    ]


def d4_elliptic_weyl_compare(
    order: int, coeffs: D4Coefficients | None = None
) -> IdentityReport:
    """One verdict for the h0, h1, h2 comparisons."""
    return combine("d4-elliptic-weyl", d4_elliptic_weyl_reports(order, coeffs))


def d4_genus_one(order: int, coeffs: D4Coefficients | None = None) -> GenusOneResult:
    """Genus-one potential -(1/2) log eta(q^2) with its two certificates.

    Splitting off the log q piece of log eta leaves a power series:
    the result carries the coefficient of log q (-1/24) and the series part
    separately.  Certified against q d/dq F_1 = f(q^2), once directly and
    once through the coefficient combination b + c/3 coming from the
    genus-one Virasoro constraint.
    """
    s = coeffs or d4_analytic(order)
    eta_sq = dedekind_eta(order, scale=2)
    linear = eta_sq.offset * -_HALF
    series = eta_sq.unit.log_unit().scale(-_HALF)
    half_order = -(-order // 2)
    f_qsq = f_series(half_order).substitute_power(2).truncate(order)
    derivative = QSeries.constant(linear, order) + series.qdq()
    report = combine(
        "d4-genus-one",
        [
            series_match("d4-genus-one-derivative", derivative, f_qsq, order),
            series_match(
                "d4-genus-one-virasoro", s.b + s.c.scale(Fraction(1, 3)), f_qsq, order
            ),
        ],
    )
    return GenusOneResult(linear, series, report)
