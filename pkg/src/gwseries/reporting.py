"""Machine-checkable verdicts for series identities.

Every verification in the package funnels into an IdentityReport: the name of
the identity, the q-order through which it was certified, and on failure the
exact first offending coefficient.  Reports never round anything; a residual
is an exact field element rendered as text.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .qseries import PrecisionError, PuiseuxSeries, QSeries


@dataclasses.dataclass(frozen=True)
class FirstFailure:
    indices: tuple[int, ...]
    exponent: int
    residual: str


@dataclasses.dataclass(frozen=True)
class IdentityReport:
    name: str
    order_certified: int
    status: str  # "pass" or "fail"
    first_failure: FirstFailure | None = None

    def __post_init__(self):
        if (self.status == "pass") != (self.first_failure is None):
            raise ValueError("pass/fail status must match the stored failure")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_dict(self) -> dict:
        out = {"name": self.name, "order": self.order_certified, "status": self.status}
        if self.first_failure is not None:
            out["failure"] = {
                "indices": list(self.first_failure.indices),
                "exponent": self.first_failure.exponent,
                "residual": self.first_failure.residual,
            }
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "IdentityReport":
        failure = None
        if "failure" in data:
            f = data["failure"]
            failure = FirstFailure(tuple(f["indices"]), int(f["exponent"]), f["residual"])
        return cls(data["name"], int(data["order"]), data["status"], failure)

    def csv_row(self) -> list[str]:
        exponent = "" if self.first_failure is None else str(self.first_failure.exponent)
        return [self.name, str(self.order_certified), self.status, exponent]


def failure_report(
    name: str, order: int, indices: tuple[int, ...], exponent: int, residual
) -> IdentityReport:
    return IdentityReport(
        name, order, "fail", FirstFailure(indices, exponent, str(residual))
    )


def pass_report(name: str, order: int) -> IdentityReport:
    return IdentityReport(name, order, "pass")


def series_match(
    name: str,
    lhs: QSeries,
    rhs: QSeries,
    order: int,
    indices: tuple[int, ...] = (),
) -> IdentityReport:
    """Certify lhs == rhs for all exponents below `order`.

    Both sides must actually know their coefficients that far; asking for more
    precision than was computed is a caller bug, not a failed identity.
    """
    known = min(lhs.truncation, rhs.truncation)
    if known < order:
        raise PrecisionError(
            f"{name}: need order {order} but operands only reach {known}"
        )
    diff = lhs.truncate(order).first_difference(rhs.truncate(order))
    if diff is None:
        return pass_report(name, order)
    exponent, residual = diff
    return failure_report(name, order, indices, exponent, residual)


def series_zero(name: str, series: QSeries, order: int,
                indices: tuple[int, ...] = ()) -> IdentityReport:
    return series_match(name, series, QSeries.zero(order), order, indices)


def puiseux_match(name: str, lhs: PuiseuxSeries, rhs: PuiseuxSeries, order: int) -> IdentityReport:
    """Certify equality of two Puiseux expansions: scalar, offset, and unit."""
    if lhs.offset != rhs.offset:
        return failure_report(name, order, (), 0, f"offset {lhs.offset} != {rhs.offset}")
    if lhs.scalar != rhs.scalar:
        return failure_report(name, order, (), 0, f"scalar {lhs.scalar} != {rhs.scalar}")
    return series_match(name, lhs.unit, rhs.unit, order)


def combine(name: str, reports: list[IdentityReport]) -> IdentityReport:
    """Single verdict for a batch: pass iff all pass, else the first failure.

    The failing sub-identity's name is appended so a combined report stays
    actionable.
    """
    order = min(r.order_certified for r in reports)
    for r in reports:
        if not r.passed:
            return IdentityReport(
                f"{name}[{r.name}]", order, "fail", r.first_failure
            )
    return pass_report(name, order)


@dataclasses.dataclass(frozen=True)
class GenusOneResult:
    """Genus-one potential: (linear coefficient of log q) and the q-series tail."""

    linear_coefficient: Fraction
    series: QSeries
    report: IdentityReport

    @property
    def passed(self) -> bool:
        return self.report.passed
