from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from gwseries.exact_arith import CyclotomicNumber, cyclotomic_root
from gwseries.qseries import (
    KARATSUBA_THRESHOLD,
    BranchMissing,
    LeadingCoefficientNotPower,
    NotUnit,
    PrecisionError,
    PuiseuxSeries,
    QSeries,
    ValuationNotDivisible,
    ZeroDivisor,
    convolve,
    format_series,
)

CASES = 100
RING_ORDER = 64


def _random_series(rng: random.Random, truncation: int, valuation_low: int = -3) -> QSeries:
    valuation = rng.randint(valuation_low, 3)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(truncation - valuation)]
    return QSeries(coeffs, valuation, truncation)


def _random_unit(rng: random.Random, truncation: int) -> QSeries:
    coeffs = [Fraction(1)] + [
        Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(truncation - 1)
    ]
    return QSeries(coeffs, 0, truncation)


# -- ring structure ------------------------------------------------------------------


def test_ring_axioms_randomized():
    rng = random.Random(64)
    for _ in range(CASES):
        x = _random_series(rng, RING_ORDER)
        y = _random_series(rng, RING_ORDER)
        z = _random_series(rng, RING_ORDER)
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert x - x == QSeries.zero(RING_ORDER)


def test_multiplicative_identity_and_zero():
    rng = random.Random(65)
    one = QSeries.one(RING_ORDER)
    zero = QSeries.zero(RING_ORDER)
    for _ in range(20):
        x = _random_series(rng, RING_ORDER, valuation_low=0)
        assert x * one == x
        assert x + zero == x
        assert (x * zero).is_zero()


def test_geometric_series_product():
    one_minus_q = QSeries([1, -1], 0, 40)
    geometric = QSeries([1] * 40, 0, 40)
    assert one_minus_q * geometric == QSeries.one(40)


def test_inverse_round_trips_randomized():
    rng = random.Random(66)
    for _ in range(CASES):
        truncation = rng.randint(8, 48)
        u = _random_unit(rng, truncation)
        shifted = u.shift(rng.randint(-4, 4))
        prod = shifted * shifted.inv()
        assert prod == QSeries.one(prod.truncation)


def test_inverse_of_zero_series_raises():
    with pytest.raises(ZeroDivisor):
        QSeries.zero(10).inv()


def test_nth_root_round_trips_randomized():
    rng = random.Random(67)
    for _ in range(CASES):
        truncation = rng.randint(6, 32)
        n = rng.choice((2, 3, 5))
        u = _random_unit(rng, truncation)
        power = u**n
        root = power.nth_root(n)
        assert root**n == power
        assert root == u or (root - u).leading()[1] != 0  # root of a unit is unique


def test_nth_root_shifts_valuation():
    s = QSeries([Fraction(9)], 2, 12)  # 9 q^2
    root = s.nth_root(2)
    assert root.leading() == (1, Fraction(3))


def test_nth_root_error_conditions():
    with pytest.raises(ValuationNotDivisible):
        QSeries([Fraction(1)], 1, 10).nth_root(2)
    with pytest.raises(LeadingCoefficientNotPower):
        QSeries([Fraction(2)], 0, 10).nth_root(2)


def test_leibniz_rule_randomized():
    rng = random.Random(68)
    for _ in range(CASES):
        x = _random_series(rng, 32)
        y = _random_series(rng, 32)
        lhs = (x * y).qdq()
        rhs = x.qdq() * y + x * y.qdq()
        assert lhs == rhs


def test_substitution_derivative_intertwining_randomized():
    rng = random.Random(69)
    for _ in range(CASES):
        x = _random_series(rng, 24, valuation_low=0)
        m = rng.randint(1, 5)
        lhs = x.substitute_power(m).qdq()
        rhs = x.qdq().substitute_power(m).scale(m)
        assert lhs == rhs


def test_substitution_composes():
    rng = random.Random(70)
    x = _random_series(rng, 12, valuation_low=0)
    assert x.substitute_power(2).substitute_power(3) == x.substitute_power(6)


def test_truncation_monotonicity():
    rng = random.Random(71)
    for _ in range(25):
        low = _random_unit(rng, 16)
        high = QSeries([low.coefficient(e) for e in range(16)] + [Fraction(1)] * 16, 0, 32)
        for build in (
            lambda s: s.inv(),
            lambda s: s.qdq(),
            lambda s: s * s,
            lambda s: s.log_unit(),
            lambda s: (s * s).nth_root(2),
        ):
            coarse = build(low)
            fine = build(high)
            assert fine.truncate(coarse.truncation) == coarse


# -- classical expansion oracles -------------------------------------------------------


def _pentagonal_series(truncation: int) -> QSeries:
    """Direct enumeration of sum (-1)^k q^(k(3k-1)/2) over all integers k."""
    coeffs = {}
    k = 0
    while True:
        done = True
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e < truncation:
                coeffs[e] = Fraction(-1 if kk % 2 else 1)
                done = False
        if done and k > 0:
            break
        k += 1
    return QSeries.from_coefficient_map(coeffs, truncation)


def test_euler_product_matches_pentagonal_numbers():
    truncation = 60
    product = QSeries.one(truncation)
    for n in range(1, truncation):
        product = product * QSeries.from_coefficient_map({0: Fraction(1), n: Fraction(-1)}, truncation)
    assert product == _pentagonal_series(truncation)


def _partition_counts(n_max: int) -> list[int]:
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            table[n] += table[n - part]
    return table


def test_inverse_euler_product_counts_partitions():
    truncation = 45
    counts = _partition_counts(truncation - 1)
    inverse = _pentagonal_series(truncation).inv()
    for n in range(truncation):
        assert inverse.coefficient(n) == counts[n]


def test_partition_oracle_in_qcubed():
    truncation = 30
    inverse = _pentagonal_series(10).substitute_power(3).inv()
    counts = _partition_counts(9)
    for n in range(truncation):
        expected = counts[n // 3] if n % 3 == 0 else 0
        assert inverse.coefficient(n) == expected


# -- twist, log, exp -------------------------------------------------------------------


def test_twist_multiplies_coefficients_termwise():
    rng = random.Random(72)
    z = cyclotomic_root(24, 5)
    s = _random_series(rng, 12)
    twisted = s.twist(z)
    for e, c in s.known_terms():
        assert twisted.coefficient(e) == c * z**e


def test_twist_by_minus_one_flips_odd_part():
    rng = random.Random(73)
    s = _random_series(rng, 20, valuation_low=0)
    flipped = s.twist(Fraction(-1))
    even = (s + flipped).scale(Fraction(1, 2))
    for e, c in even.known_terms():
        assert e % 2 == 0 or c == 0


def test_log_exp_round_trip():
    rng = random.Random(74)
    for _ in range(25):
        u = _random_unit(rng, 24)
        assert u.log_unit().exp_positive() == u
    with pytest.raises(NotUnit):
        QSeries([Fraction(2)], 0, 8).log_unit()


def test_log_turns_products_into_sums():
    rng = random.Random(75)
    u = _random_unit(rng, 20)
    v = _random_unit(rng, 20)
    assert (u * v).log_unit() == u.log_unit() + v.log_unit()


def test_pow_rational_agrees_with_integer_powers():
    rng = random.Random(76)
    u = _random_unit(rng, 16)
    assert u.pow_rational(Fraction(3)) == u**3
    assert u.pow_rational(Fraction(1, 2)) ** 2 == u
    assert u.pow_rational(Fraction(-3, 2)) * u.pow_rational(Fraction(3, 2)) == QSeries.one(16)


# -- truncation bookkeeping -------------------------------------------------------------


def test_truncation_of_product_is_pessimistic():
    a = QSeries([1, 1], 1, 6)  # q + q^2 + O(q^6)
    b = QSeries([1], 2, 5)     # q^2 + O(q^5)
    prod = a * b
    assert prod.truncation == min(6 + 2, 5 + 1)
    assert prod.valuation == 3


def test_coefficient_past_truncation_raises():
    s = QSeries([1], 0, 4)
    assert s.coefficient(3) == 0
    with pytest.raises(PrecisionError):
        s.coefficient(4)


def test_monomial_beyond_truncation_is_zero_series():
    assert QSeries.monomial(5, 9, 6).is_zero()
    assert QSeries.constant(1, 0).is_zero()


def test_truncate_rejects_raising_precision():
    s = QSeries([1], 0, 4)
    with pytest.raises(PrecisionError):
        s.truncate(5)


def test_equality_compares_up_to_common_truncation():
    a = QSeries([1, 2, 3], 0, 3)
    b = QSeries([1, 2, 3, 7], 0, 4)
    assert a == b
    assert b == a
    assert a != b + QSeries.monomial(1, 1, 4)


def test_karatsuba_matches_schoolbook():
    rng = random.Random(77)
    for _ in range(30):
        xs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 40))]
        ys = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 40))]
        assert convolve(xs, ys, threshold=3) == convolve(xs, ys, threshold=10**6)


def test_long_multiplication_crosses_threshold():
    n = KARATSUBA_THRESHOLD + 40
    rng = random.Random(78)
    a = QSeries([Fraction(rng.randint(-5, 5)) for _ in range(n)], 0, n)
    b = QSeries([Fraction(rng.randint(-5, 5)) for _ in range(n)], 0, n)
    prod = a * b
    reference = convolve(list(a.coeffs), list(b.coeffs), threshold=10**6)
    for e in range(prod.truncation):
        assert prod.coefficient(e) == reference[e]


# -- serialization ---------------------------------------------------------------------


def test_json_round_trip():
    rng = random.Random(79)
    for _ in range(20):
        s = _random_series(rng, 12)
        data = json.loads(json.dumps(s.to_json_dict()))
        again = QSeries.from_json_dict(data)
        assert again == s
        assert again.truncation == s.truncation
        assert again.valuation <= s.truncation


def test_json_schema_shape():
    s = QSeries([Fraction(1, 3), Fraction(0), Fraction(-2)], -1, 2)
    data = s.to_json_dict()
    assert sorted(data) == ["coeffs", "truncation", "valuation"]
    assert data["valuation"] == -1
    assert data["truncation"] == 2
    assert data["coeffs"] == ["1/3", "0", "-2"]


def test_cyclotomic_series_refuse_json():
    s = QSeries([cyclotomic_root(3)], 0, 2)
    with pytest.raises(ValueError):
        s.to_json_dict()


def test_format_series_examples():
    assert format_series(QSeries([1, 0, 0, 1, 0, 0, 2], 1, 8)) == "q + q^4 + 2q^7 + O(q^8)"
    assert format_series(QSeries([Fraction(-1, 24)], 0, 2)) == "-1/24 + O(q^2)"
    assert format_series(QSeries.zero(5)) == "O(q^5)"
    assert format_series(QSeries([Fraction(1, 3)], -1, 1)) == "1/3q^-1 + O(q^1)"


# -- Puiseux layer ---------------------------------------------------------------------


def test_puiseux_product_collects_offsets_and_scalars():
    unit = QSeries([1, 1], 0, 6)
    a = PuiseuxSeries(2, Fraction(1, 4), unit)
    b = PuiseuxSeries(Fraction(1, 2), Fraction(3, 4), unit)
    prod = a * b
    assert prod.scalar == 1
    assert prod.offset == 1
    assert prod.unit == unit * unit


def test_puiseux_fractional_power_needs_no_branch_for_rational_scalar():
    unit = QSeries([1, 2, 1], 0, 8)
    s = PuiseuxSeries(4, Fraction(1, 2), unit)
    root = s.pow_rational(Fraction(1, 2))
    assert root.scalar == 2
    assert root.offset == Fraction(1, 4)
    assert root.unit == unit.nth_root(2)


def test_puiseux_twist_branch_contract():
    unit = QSeries([1, 1], 0, 6)
    s = PuiseuxSeries(1, Fraction(1, 24), unit)
    with pytest.raises(BranchMissing):
        s.twist(cyclotomic_root(72, 3))
    twisted = s.twist(cyclotomic_root(72, 3), branch=cyclotomic_root(72, 1))
    assert twisted.scalar == cyclotomic_root(72, 1)
    # integral offsets never need a branch
    t = PuiseuxSeries(1, Fraction(2), unit).twist(Fraction(-1))
    assert t.scalar == 1


def test_puiseux_logderiv_reports_offset():
    unit = QSeries([1, 1], 0, 6)  # 1 + q
    s = PuiseuxSeries(7, Fraction(1, 4), unit)
    ld = s.logderiv()
    assert ld.coefficient(0) == Fraction(1, 4)
    assert ld.coefficient(1) == 1  # q d/dq log(1+q) = q - q^2 + ...
    assert ld.coefficient(2) == -1


def test_puiseux_to_qseries_requires_integral_offset():
    unit = QSeries([1], 0, 4)
    with pytest.raises(ValuationNotDivisible):
        PuiseuxSeries(1, Fraction(1, 2), unit).to_qseries()
    assert PuiseuxSeries(3, Fraction(2), unit).to_qseries() == QSeries([3], 2, 6)
