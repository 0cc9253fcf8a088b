"""The orbifold line with three Z/3 points: series, potential, and checks.

The whole structure is generated by one Laurent series with a simple pole,

    a = (1/3) q^-1 + (5/3) q^2 - (7/3) q^5 + q^8 + ...,

obtained either in closed form as 1 + (1/3)(eta(q)/eta(q^9))^3 or as the
unique solution with leading coefficient 1/3 of the Schwarzian-type equation

    a'''/a' - (3/2)(a''/a')^2 = -(1/2) (8 + a^3)/(1 - a^3)^2 * a * (a')^2,

with ' = q d/dq.  Fourteen power series f_0..f_13 built from a and the
square root f_0 = (1/3) (a'/(1 - a^3))^(1/2) populate the genus-zero
potential on eight coordinates.  Everything is certified twice: the solver
against the eta closed form, each derived series against an independent
formula, and a suite of modular identities tying a to the j-invariant,
cusp forms, and twisted eta products over the 72nd cyclotomic field.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .exact_arith import CyclotomicNumber
from .frobenius import FrobeniusPotential
from .modular import (
    J_series,
    dedekind_eta,
    eta_expand,
    f_series,
    verify_cusp_form_from_j,
    verify_eta_product_rotation,
)
from .qseries import QSeries
from .reporting import (
    GenusOneResult,
    IdentityReport,
    combine,
    failure_report,
    series_match,
)

_THIRD = Fraction(1, 3)
_SQRT_NORMALIZATION = _THIRD  # the constant A with A^2 = 1/9 and f_0 = q + ...


@dataclasses.dataclass(frozen=True)
class E6Coefficients:
    a: QSeries
    f: tuple[QSeries, ...]
    A: Fraction = _SQRT_NORMALIZATION

    def __post_init__(self):
        if len(self.f) != 14:
            raise ValueError("expected the fourteen potential coefficients")
        if self.A * self.A != Fraction(1, 9):
            raise ValueError("normalization must square to 1/9")
        if self.a.leading() != (-1, _THIRD):
            raise ValueError("the pole series must start with (1/3) q^-1")
        if self.f[0].leading() != (1, Fraction(1)):
            raise ValueError("f_0 must start with q")
        if self.f[1].coefficient(0) != _THIRD:
            raise ValueError("f_1 must have constant term 1/3")

    @property
    def truncation(self) -> int:
        return min(self.a.truncation, *(s.truncation for s in self.f))


# -- the pole series ---------------------------------------------------------------


def _one_minus_cube(a: QSeries) -> QSeries:
    cube = a * a * a
    return QSeries.constant(Fraction(1), cube.truncation) - cube


def _schwarzian_combination(a: QSeries) -> QSeries:
    """(1-a^3)^2 [a' a''' - (3/2)(a'')^2] + (1/2)(8+a^3) a (a')^4, ' = q d/dq.

    Vanishes identically on the solution; multiplying the equation through
    by (1-a^3)^2 (a')^2 keeps everything polynomial in known coefficients.
    """
    d1 = a.qdq()
    d2 = d1.qdq()
    d3 = d2.qdq()
    cube = a * a * a
    one_minus = QSeries.constant(Fraction(1), cube.truncation) - cube
    eight_plus = QSeries.constant(Fraction(8), cube.truncation) + cube
    wronskian = d1 * d3 - (d2 * d2).scale(Fraction(3, 2))
    quartic = d1 * d1
    quartic = quartic * quartic
    return (one_minus * one_minus) * wronskian + (eight_plus * a * quartic).scale(
        Fraction(1, 2)
    )


def e6_schwarzian_solve(order: int) -> QSeries:
    """Coefficients of the pole series, one per step, from the combination above.

    With a_{-1}, ..., a_{n-2} known and a_{n-1} provisionally zero, the
    combination is determined through O(q^{n-7}) and its q^{n-8} coefficient
    is linear in the withheld a_{n-1} with slope -n^3 a_{-1}^7.  Solving
    step by step pins every coefficient; the q^{-8} coefficient carries no
    unknown at all and must vanish on its own, which is checked outright.

    >>> e6_schwarzian_solve(9)
    QSeries(1/3q^-1 + 5/3q^2 - 7/3q^5 + q^8 + O(q^9))
    """
    if order < 0:
        raise ValueError("order must be at least 0")
    coeffs = {-1: _THIRD}
    base = _schwarzian_combination(QSeries.from_coefficient_map(coeffs, 0))
    if base.coefficient(-8) != 0:
        raise ArithmeticError("pole coefficient fails the degree -8 consistency check")
    slope_inverse = Fraction(3) ** 7
    for n in range(1, order + 1):
        provisional = QSeries.from_coefficient_map(coeffs, n)
        s = _schwarzian_combination(provisional).coefficient(n - 8)
        if s:
            coeffs[n - 1] = s * slope_inverse / n**3
    return QSeries.from_coefficient_map(coeffs, order)


def e6_h_analytic(order: int) -> QSeries:
    """Closed form 1 + (1/3)(eta(q)/eta(q^9))^3 of the pole series.

    Cross-checked against the equation solver on every call; the two
    constructions share nothing but the answer, so a disagreement is an
    arithmetic bug and raises rather than reporting.
    """
    quotient = eta_expand("eta(1)^3 * eta(9)^-3", order + 1).to_qseries()
    closed = QSeries.constant(Fraction(1), order) + quotient.scale(_THIRD)
    if closed != e6_schwarzian_solve(order):
        raise ArithmeticError("eta closed form disagrees with the equation solver")
    return closed


def e6_schwarzian_residual_report(order: int, a: QSeries | None = None) -> IdentityReport:
    """The defining equation holds for the closed form itself."""
    series = a if a is not None else e6_h_analytic(order + 8)
    residual = _schwarzian_combination(series)
    zero = QSeries.zero(residual.truncation)
    return series_match(
        "e6-schwarzian-equation", residual, zero, min(order, residual.truncation)
    )


# -- the fourteen coefficient series ------------------------------------------------


def _sqrt_route_f0(a: QSeries) -> QSeries:
    ratio = a.qdq() * _one_minus_cube(a).inv()
    return ratio.nth_root(2).scale(_SQRT_NORMALIZATION)


def _fi_from_eta(order: int) -> E6Coefficients:
    """All fourteen series at the requested order, from the eta closed forms."""
    slack = order + 2
    a = e6_h_analytic(slack)
    f0 = eta_expand("eta(9)^3 * eta(3)^-1", slack + 1).to_qseries()
    f1 = a * f0
    x = f0.qdq() * f0.inv()
    f1sq = f1 * f1
    f0sq = f0 * f0
    f0cb = f0sq * f0
    f = (
        f0,
        f1,
        x.scale(Fraction(-1, 9)) + f1sq,
        f0sq,
        f1 * f0,
        x.scale(Fraction(-2, 9)) + f1sq,
        f0cb,
        f1 * f0sq,
        f1sq * f0,
        f1 * f1sq,
        (f1 * f0cb).scale(3),
        (f1sq * f0sq).scale(3),
        f0sq.scale(2) * f0sq + f1 * f1sq * f0,
        (f1 * f0cb).scale(6) - (f1sq * f1sq).scale(3),
    )
    return E6Coefficients(a.truncate(order), tuple(s.truncate(order) for s in f))


def e6_build_fi(order: int) -> E6Coefficients:
    """The fourteen coefficient series, cross-checked on construction.

    Each series is built from the eta closed forms, then every independent
    route is recomputed and compared: the square-root formula for f_0, the
    derivative-based forms for f_2..f_5, and the equation solver for the
    pole series itself.  Any disagreement raises, since the caller is about
    to put these series inside a potential.
    """
    coeffs = _fi_from_eta(order)
    for report in e6_coefficient_reports(order, coeffs):
        if not report.passed:
            raise ArithmeticError(f"coefficient cross-check failed: {report.name}")
    return coeffs


def e6_coefficient_reports(
    order: int, coeffs: E6Coefficients | None = None
) -> list[IdentityReport]:
    """Independent routes to the same series: square root, eta quotient, and
    the derivative-based closed forms coming from the flatness calculation."""
    slack = order + 4
    a = e6_h_analytic(slack)
    if coeffs is None:
        coeffs = _fi_from_eta(order)
    f = coeffs.f
    reports = [
        series_match("e6-f0-sqrt-route", _sqrt_route_f0(a), f[0], order),
    ]
    d1 = a.qdq()
    d2 = d1.qdq()
    rational = d1 * _one_minus_cube(a).inv()
    curvature = d2 * d1.inv()
    asq_rational = a * a * rational
    reports.append(
        series_match(
            "e6-f2-derivative-route",
            (curvature + asq_rational).scale(Fraction(-1, 18)),
            f[2],
            order,
        )
    )
    reports.append(
        series_match("e6-f3-derivative-route", rational.scale(Fraction(1, 9)), f[3], order)
    )
    reports.append(
        series_match(
            "e6-f4-derivative-route", (a * rational).scale(Fraction(1, 9)), f[4], order
        )
    )
    reports.append(
        series_match(
            "e6-f5-derivative-route",
            (curvature + asq_rational.scale(2)).scale(Fraction(-1, 9)),
            f[5],
            order,
        )
    )
    reports.append(
        series_match("e6-solver-matches-eta", e6_schwarzian_solve(order), coeffs.a, order)
    )
    reports.append(e6_schwarzian_residual_report(order))
    return reports


# -- modular identity suite ---------------------------------------------------------


def e6_identity_suite(order: int, twisted_order: int | None = None) -> list[IdentityReport]:
    """The j-invariant relation, the cusp-form identities, and the twisted
    eta expressions for the pole series (the last over Q(zeta_72)).

    The two checks that work in the cyclotomic field run at `twisted_order`
    (default: the main order capped at 40) because every coefficient there
    costs a 24-dimensional exact vector."""
    if twisted_order is None:
        twisted_order = min(order, 40)
    slack = order + 2
    a = e6_h_analytic(slack)
    cube = a * a * a
    one_minus = QSeries.constant(Fraction(1), cube.truncation) - cube
    eight_plus = QSeries.constant(Fraction(8), cube.truncation) + cube
    d1 = a.qdq()

    lhs_j = (cube * eight_plus**3 * (one_minus**3).inv()).scale(Fraction(-1, 64))
    reports = [series_match("e6-j-relation", lhs_j, J_series(order), order)]

    cube_minus_one = one_minus.scale(-1)
    # offset of this quotient is -3, so expand three orders deeper
    rhs_unit = (
        eta_expand("eta(3)^12 * eta(9)^-12", order + 3).to_qseries().scale(Fraction(1, 27))
    )
    reports.append(series_match("e6-cube-unit", cube_minus_one, rhs_unit, order))

    sextic = (d1**6 * (cube_minus_one**3).inv()).scale(Fraction(1, 27))
    discriminant = eta_expand("eta(3)^24", order).to_qseries()
    reports.append(series_match("e6-cusp-form-sextic", sextic, discriminant, order))

    slope = d1 * one_minus.inv()
    rhs_slope = (eta_expand("eta(9)^3 * eta(3)^-1", order).to_qseries() ** 2).scale(9)
    reports.append(series_match("e6-slope-eta", slope, rhs_slope, order))

    reports.append(verify_cusp_form_from_j(order))
    reports.append(verify_eta_product_rotation(twisted_order))
    reports.extend(e6_twisted_pole_reports(twisted_order))
    return reports


def e6_twisted_pole_reports(order: int) -> list[IdentityReport]:
    """a = omega^k + (1/3) (eta(q omega^(k-3))/eta(q^9))^3 * zeta, over Q(zeta_72).

    Twisting eta's q^(1/24) prefactor needs a 72nd root of unity branch;
    the branch taken is the literal one, (e^(2 pi i m/3))^(1/24) read off
    the exponent, matching the product identity for eta(q^3)^4.
    """
    a = e6_h_analytic(order)
    zeta = CyclotomicNumber.zeta(72, 1)
    omega = CyclotomicNumber.zeta(72, 24)
    eta_plain = dedekind_eta(order + 1)
    eta_nine_cubed = eta_expand("eta(9)^3", order + 1)
    reports = []
    for name, constant, twist_power, branch_power, phase_power in (
        ("e6-pole-twist-square", omega, -48, -2, 6),
        ("e6-pole-twist-linear", omega * omega, -24, -1, 3),
    ):
        twisted = eta_plain.twist(
            CyclotomicNumber.zeta(72, twist_power),
            branch=CyclotomicNumber.zeta(72, branch_power),
        )
        quotient = (twisted**3 / eta_nine_cubed).to_qseries()
        phase = CyclotomicNumber.zeta(72, phase_power) * _THIRD
        rhs = QSeries.constant(constant, order) + quotient.scale(phase)
        reports.append(series_match(name, a, rhs, order, indices=(twist_power,)))
    return reports


# -- degree-one counts ---------------------------------------------------------------


def e6_gw_table(kmax: int) -> tuple[list[tuple[int, Fraction]], IdentityReport]:
    """Degree counts c_k (coefficient of q^(3k+1) in f_0) plus their certificate.

    The table values come from the eta quotient.  The certificate recomputes
    f_0 down the entirely independent road the counts originally came from:
    solving the associativity-forced equation for the pole series coefficient
    by coefficient, then applying the square-root formula.  The two tables
    must agree, and f_0 must be supported on exponents 1 mod 3.
    """
    order = 3 * kmax + 2
    f0_eta = eta_expand("eta(9)^3 * eta(3)^-1", order).to_qseries()
    f0_solver = _sqrt_route_f0(e6_schwarzian_solve(order + 2)).truncate(order)
    report = series_match("e6-gw-dual-route", f0_solver, f0_eta, order)
    if report.passed:
        for exponent, coeff in f0_eta.known_terms():
            if coeff and exponent % 3 != 1:
                report = failure_report(
                    "e6-gw-dual-route", order, (exponent,), exponent, coeff
                )
                break
    table = [(k, Fraction(f0_eta.coefficient(3 * k + 1))) for k in range(kmax + 1)]
    return table, report


# -- potential, genus one -------------------------------------------------------------


def _block(indices: dict[int, int]) -> tuple[int, ...]:
    key = [0] * 8
    for slot, exponent in indices.items():
        key[slot] = exponent
    return tuple(key)


def e6_build_potential(
    order: int,
    coeffs: E6Coefficients | None = None,
    raw_f11_block: bool = False,
) -> FrobeniusPotential:
    """Genus-zero potential on (t0, t1..t6, t) with t acting as log q.

    raw_f11_block keeps the f_11 monomials exactly as printed in the source
    the potential was transcribed from, where t4 t5 t6^4 appears twice and
    t4^4 t5 t6 not at all; the default completes the orbit symmetrically,
    which is what associativity requires.
    """
    s = coeffs or e6_build_fi(order)
    f = s.f
    classical = {
        _block({0: 2, 7: 1}): Fraction(1, 2),
        _block({0: 1, 1: 1, 6: 1}): _THIRD,
        _block({0: 1, 2: 1, 5: 1}): _THIRD,
        _block({0: 1, 3: 1, 4: 1}): _THIRD,
    }
    blocks: list[tuple[QSeries, Fraction, list[dict[int, int]]]] = [
        (f[0], Fraction(1), [{1: 1, 2: 1, 3: 1}]),
        (f[1], Fraction(1, 6), [{1: 3}, {2: 3}, {3: 3}]),
        (
            f[2],
            Fraction(1),
            [{1: 1, 2: 1, 5: 1, 6: 1}, {1: 1, 3: 1, 4: 1, 6: 1}, {2: 1, 3: 1, 4: 1, 5: 1}],
        ),
        (
            f[3],
            Fraction(1, 2),
            [{1: 2, 4: 1, 5: 1}, {2: 2, 4: 1, 6: 1}, {3: 2, 5: 1, 6: 1}],
        ),
        (
            f[4],
            Fraction(1, 2),
            [{1: 1, 2: 1, 4: 2}, {1: 1, 3: 1, 5: 2}, {2: 1, 3: 1, 6: 2}],
        ),
        (f[5], Fraction(1, 4), [{1: 2, 6: 2}, {2: 2, 5: 2}, {3: 2, 4: 2}]),
        (
            f[6],
            Fraction(1, 6),
            [
                {1: 1, 6: 1, 4: 3},
                {1: 1, 6: 1, 5: 3},
                {2: 1, 5: 1, 4: 3},
                {2: 1, 5: 1, 6: 3},
                {3: 1, 4: 1, 5: 3},
                {3: 1, 4: 1, 6: 3},
            ],
        ),
        (
            f[7],
            Fraction(1, 2),
            [
                {1: 1, 4: 1, 5: 1, 6: 2},
                {2: 1, 4: 1, 5: 2, 6: 1},
                {3: 1, 4: 2, 5: 1, 6: 1},
            ],
        ),
        (
            f[8],
            Fraction(1, 4),
            [{1: 1, 4: 2, 5: 2}, {2: 1, 4: 2, 6: 2}, {3: 1, 5: 2, 6: 2}],
        ),
        (f[9], Fraction(1, 24), [{1: 1, 6: 4}, {2: 1, 5: 4}, {3: 1, 4: 4}]),
        (f[10], Fraction(1, 36), [{4: 3, 5: 3}, {4: 3, 6: 3}, {5: 3, 6: 3}]),
        (f[12], Fraction(1, 8), [{4: 2, 5: 2, 6: 2}]),
        (f[13], Fraction(1, 720), [{4: 6}, {5: 6}, {6: 6}]),
    ]
    if raw_f11_block:
        blocks.append(
            (f[11], Fraction(1, 24), [{4: 1, 5: 1, 6: 4}, {4: 1, 5: 4, 6: 1}, {4: 1, 5: 1, 6: 4}])
        )
    else:
        blocks.append(
            (f[11], Fraction(1, 24), [{4: 4, 5: 1, 6: 1}, {4: 1, 5: 4, 6: 1}, {4: 1, 5: 1, 6: 4}])
        )
    quantum: dict[tuple[int, ...], QSeries] = {}
    for series, prefactor, monomials in blocks:
        for monomial in monomials:
            key = _block(monomial)
            piece = series.scale(prefactor)
            quantum[key] = quantum[key] + piece if key in quantum else piece
    degrees = (
        Fraction(1),
        Fraction(2, 3),
        Fraction(2, 3),
        Fraction(2, 3),
        _THIRD,
        _THIRD,
        _THIRD,
        Fraction(0),
    )
    return FrobeniusPotential(
        ("t0", "t1", "t2", "t3", "t4", "t5", "t6", "t"), degrees, classical, quantum
    )


def e6_genus_one(order: int, coeffs: E6Coefficients | None = None) -> GenusOneResult:
    """Genus-one potential -(1/3) log eta(q^3) with its two certificates.

    q d/dq of it must be -1/24 + sum sigma(n) q^(3n), and the same series
    must come out of the genus-one Virasoro combination (3/4) f_2 + (3/8) f_5.
    """
    s = coeffs or e6_build_fi(order)
    eta_cubed_arg = dedekind_eta(order, scale=3)
    linear = eta_cubed_arg.offset * -_THIRD
    series = eta_cubed_arg.unit.log_unit().scale(-_THIRD)
    third_order = -(-order // 3)
    f_q3 = f_series(third_order).substitute_power(3).truncate(order)
    derivative = QSeries.constant(linear, order) + series.qdq()
    virasoro = s.f[2].scale(Fraction(3, 4)) + s.f[5].scale(Fraction(3, 8))
    report = combine(
        "e6-genus-one",
        [
            series_match("e6-genus-one-derivative", derivative, f_q3, order),
            series_match("e6-genus-one-virasoro", virasoro, f_q3, order),
        ],
    )
    return GenusOneResult(linear, series, report)
