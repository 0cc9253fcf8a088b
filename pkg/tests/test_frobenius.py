from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest

from gwseries.frobenius import (
    FrobeniusPotential,
    MetricMatrix,
    NonConstantMetric,
    UnknownCoordinate,
    _WdvvEngine,
    euler_residual,
    metric_from_potential,
    third_derivative,
    wdvv_residual,
)
from gwseries.qseries import QSeries

# Rational plane curve counts through 3d-1 generic points, the classic
# associativity benchmark: any single wrong count breaks WDVV.
PLANE_CURVE_COUNTS = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304}


def _projective_plane(truncation: int = 6) -> FrobeniusPotential:
    quantum = {
        (0, 3 * d - 1, 0): QSeries.monomial(
            Fraction(count, factorial(3 * d - 1)), d, truncation
        )
        for d, count in PLANE_CURVE_COUNTS.items()
        if d < truncation
    }
    return FrobeniusPotential(
        coords=("t0", "p", "t"),
        degrees=(Fraction(1), Fraction(1), Fraction(0)),
        classical={(2, 1, 0): Fraction(1, 2), (1, 0, 2): Fraction(1, 2)},
        quantum=quantum,
    )


def _toy_potential() -> FrobeniusPotential:
    series = QSeries([1, 2, 3], 1, 6)
    return FrobeniusPotential(
        coords=("t0", "x", "y", "t"),
        degrees=(Fraction(1), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        classical={(2, 0, 0, 1): Fraction(1, 2), (1, 1, 1, 0): Fraction(1)},
        quantum={(0, 1, 2, 0): series},
    )


# -- third derivatives -------------------------------------------------------------


def test_third_derivative_of_classical_cubic_is_constant():
    F = _toy_potential()
    out = third_derivative(F, "t0", "t0", "t")
    assert list(out) == [(0, 0, 0, 0)]
    assert out[(0, 0, 0, 0)] == QSeries.one(6)
    mixed = third_derivative(F, "t0", "x", "y")
    assert mixed == {(0, 0, 0, 0): QSeries.one(6)}


def test_third_derivative_with_log_slot_applies_q_derivative():
    F = _toy_potential()
    out = third_derivative(F, "x", "y", "t")
    qd = QSeries([1, 2, 3], 1, 6).qdq().scale(2)
    assert out == {(0, 0, 1, 0): qd}


def test_third_derivative_drops_annihilated_terms():
    F = _toy_potential()
    assert third_derivative(F, "x", "x", "x") == {}
    assert third_derivative(F, "y", "y", "y") == {}


def test_pure_log_derivatives_iterate_qdq():
    F = _toy_potential()
    out = third_derivative(F, "t", "t", "t")
    assert out == {(0, 1, 2, 0): QSeries([1, 2, 3], 1, 6).qdq().qdq().qdq()}


def test_third_derivative_is_symmetric_in_its_arguments():
    rng = random.Random(20260818)
    coords = ("t0", "u", "v", "w", "t")
    for _ in range(20):
        classical = {}
        for _ in range(4):
            key = tuple(rng.randint(0, 2) for _ in coords)
            classical[key] = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        quantum = {}
        for _ in range(3):
            key = (0, rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3), 0)
            quantum[key] = QSeries([rng.randint(-4, 4) for _ in range(5)], 1, 6)
        F = FrobeniusPotential(coords, (Fraction(1),) * 5, classical, quantum)
        names = [rng.choice(coords) for _ in range(3)]
        reference = third_derivative(F, *names)
        for perm in ((1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0), (0, 2, 1)):
            shuffled = third_derivative(F, *(names[i] for i in perm))
            assert shuffled == reference


def test_unknown_coordinate_is_reported():
    F = _toy_potential()
    with pytest.raises(UnknownCoordinate):
        third_derivative(F, "t0", "t0", "nope")
    with pytest.raises(UnknownCoordinate):
        F.coordinate_index("q")


# -- the metric --------------------------------------------------------------------


def test_plane_metric_pairs_unit_with_point_class():
    metric = metric_from_potential(_projective_plane())
    assert metric.entry("t0", "p") == 1
    assert metric.entry("t", "t") == 1
    assert metric.entry("t0", "t0") == 0
    assert metric.entry("t0", "t") == 0
    assert metric.entry("p", "p") == 0


def test_metric_is_symmetric_and_inverts():
    metric = metric_from_potential(_projective_plane())
    n = len(metric.coords)
    for i in range(n):
        for j in range(n):
            assert metric.rows[i][j] == metric.rows[j][i]
    inverse = metric.inverse_rows()
    for i in range(n):
        for j in range(n):
            total = sum(metric.rows[i][k] * inverse[k][j] for k in range(n))
            assert total == (1 if i == j else 0)


def test_metric_sees_only_the_classical_part():
    with_quantum = _projective_plane()
    without = FrobeniusPotential(
        with_quantum.coords, with_quantum.degrees, with_quantum.classical, {}
    )
    assert metric_from_potential(with_quantum) == metric_from_potential(without)
    assert without.truncation == 0


def test_quartic_classical_term_is_rejected():
    F = FrobeniusPotential(
        ("t0", "x", "t"),
        (Fraction(1), Fraction(1, 2), Fraction(0)),
        {(2, 2, 0): Fraction(1)},
        {},
    )
    with pytest.raises(NonConstantMetric):
        metric_from_potential(F)


def test_degenerate_metric_is_rejected():
    metric = MetricMatrix(("a", "b"), ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))))
    with pytest.raises(NonConstantMetric):
        metric.inverse_rows()


def test_metric_matrix_validates_shape():
    with pytest.raises(ValueError):
        MetricMatrix(("a", "b"), ((Fraction(1),),))
    with pytest.raises(ValueError):
        MetricMatrix(("a", "b"), ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(0))))


# -- Euler grading -----------------------------------------------------------------


def test_euler_grading_accepts_weight_two_potentials():
    F = FrobeniusPotential(
        ("t0", "x", "y", "t"),
        (Fraction(1), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        {(2, 0, 0, 1): Fraction(1, 2), (1, 1, 1, 0): Fraction(1)},
        {(0, 2, 2, 0): QSeries([1], 1, 4), (0, 4, 0, 0): QSeries([2], 2, 4)},
    )
    assert euler_residual(F).passed


def test_euler_grading_flags_degree_breaking_monomials():
    F = FrobeniusPotential(
        ("t0", "x", "y", "t"),
        (Fraction(1), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        {(2, 0, 0, 1): Fraction(1, 2)},
        {(0, 1, 1, 0): QSeries([1], 1, 4)},
    )
    report = euler_residual(F, name="toy-grading")
    assert not report.passed
    assert report.name == "toy-grading"
    assert report.first_failure.indices == (0, 1, 1, 0)
    assert Fraction(report.first_failure.residual) == -1


# -- WDVV --------------------------------------------------------------------------


def test_plane_curve_counts_satisfy_associativity():
    F = _projective_plane()
    assert wdvv_residual(F, 6).passed
    assert wdvv_residual(F, 6, skip_symmetric=True).passed
    assert wdvv_residual(F, 6, fail_fast=True).passed


def test_each_wrong_curve_count_breaks_associativity():
    F = _projective_plane()
    low = F.with_mutated_quantum((0, 5, 0), 2, Fraction(1, 720))
    report = wdvv_residual(low, 6)
    assert not report.passed
    assert report.first_failure.indices == (1, 1, 2, 2)
    assert report.first_failure.exponent == 2
    assert Fraction(report.first_failure.residual) == Fraction(1, 12)

    high = F.with_mutated_quantum((0, 14, 0), 5, Fraction(-3))
    report = wdvv_residual(high, 6)
    assert report.first_failure.exponent == 5
    assert Fraction(report.first_failure.residual) == -6552


def test_reduced_quadruple_scan_finds_the_same_failure():
    broken = _projective_plane().with_mutated_quantum((0, 5, 0), 2, Fraction(1, 720))
    full = wdvv_residual(broken, 6)
    reduced = wdvv_residual(broken, 6, skip_symmetric=True)
    fast = wdvv_residual(broken, 6, fail_fast=True)
    assert full.first_failure == reduced.first_failure == fast.first_failure


def test_residual_is_antisymmetric_in_the_outer_pair():
    broken = _projective_plane().with_mutated_quantum((0, 5, 0), 2, Fraction(1, 720))
    engine = _WdvvEngine(broken, 6)
    assert engine.residual_failure(1, 1, 2, 2) == (2, Fraction(1, 12))
    assert engine.residual_failure(1, 2, 2, 1) == (2, Fraction(-1, 12))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if b == d:
                        assert engine.residual_failure(a, b, c, d) is None
                        continue
                    forward = engine.residual_failure(a, b, c, d)
                    swapped = engine.residual_failure(a, d, c, b)
                    if forward is None:
                        assert swapped is None
                    else:
                        assert swapped == (forward[0], -forward[1])


def test_mutation_helper_changes_one_coefficient():
    F = _projective_plane()
    bumped = F.with_mutated_quantum((0, 5, 0), 2, Fraction(1, 720))
    assert bumped.quantum[(0, 5, 0)].coefficient(2) == F.quantum[(0, 5, 0)].coefficient(2) + Fraction(1, 720)
    assert bumped.quantum[(0, 8, 0)] == F.quantum[(0, 8, 0)]
    assert F.quantum[(0, 5, 0)].coefficient(2) == Fraction(1, 120)


# -- constructor validation ----------------------------------------------------------


def test_potential_rejects_malformed_input():
    coords = ("t0", "x", "t")
    degrees = (Fraction(1), Fraction(1, 2), Fraction(0))
    good_classical = {(2, 0, 1): Fraction(1, 2)}
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees[:2], good_classical, {})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {(2, 0): Fraction(1)}, {})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {(2, 0, -1): Fraction(1)}, {})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {(2, 0, 1): 1}, {})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {}, {(1, 1, 0): QSeries([1], 1, 4)})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {}, {(0, 1, 1): QSeries([1], 1, 4)})
    with pytest.raises(ValueError):
        FrobeniusPotential(coords, degrees, {}, {(0, 1, 0): Fraction(1)})


def test_truncation_is_the_weakest_quantum_link():
    F = FrobeniusPotential(
        ("t0", "x", "t"),
        (Fraction(1), Fraction(1, 2), Fraction(0)),
        {},
        {(0, 1, 0): QSeries([1], 1, 9), (0, 2, 0): QSeries([1], 1, 7)},
    )
    assert F.truncation == 7
