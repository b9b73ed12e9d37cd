from fractions import Fraction

import pytest
from hypothesis import given, settings

from chancelab.measures import (
    AlreadyCountablyAdditive,
    GeometricTail,
    MassExceedsOne,
    MeasureError,
    NegativeMass,
    PartitionMeasure,
    TailOverlapsHead,
    cellwise_equal,
    deficiency,
    dominate,
    domination_report,
    dyadic_tail_measure,
    hstar,
    make_partition_measure,
    mass,
    measure_from_json,
    measure_to_json,
    total_mass,
)

from strategies import partition_measures

SHAMAN = dyadic_tail_measure(Fraction(1, 2), "under-filled-halving")
ADDITIVE = dyadic_tail_measure(Fraction(1), "coin-geometric")


class TestConstruction:
    def test_halving_tail_totals(self):
        assert total_mass(SHAMAN) == Fraction(1, 2)
        assert total_mass(ADDITIVE) == 1

    def test_point_mass(self):
        m = make_partition_measure([1])
        assert total_mass(m) == 1
        assert mass(m, 2) == 0

    def test_negative_head_rejected(self):
        with pytest.raises(NegativeMass):
            make_partition_measure(["-1/4", "1/2"])

    def test_overshoot_reported_exactly(self):
        with pytest.raises(MassExceedsOne) as err:
            make_partition_measure(["3/4", "1/2"])
        assert err.value.overshoot == Fraction(1, 4)

    def test_tail_must_start_after_head(self):
        with pytest.raises(TailOverlapsHead):
            make_partition_measure(["1/4"], [("1/8", "1/2", 1)])

    def test_tail_field_validation(self):
        with pytest.raises(MeasureError):
            GeometricTail(Fraction(0), Fraction(1, 2), 1)
        with pytest.raises(MeasureError):
            GeometricTail(Fraction(1, 2), Fraction(1), 1)
        with pytest.raises(MeasureError):
            GeometricTail(Fraction(1, 2), Fraction(1, 2), 0)


class TestMass:
    def test_shaman_cell_three(self):
        assert mass(SHAMAN, 3) == Fraction(1, 16)

    def test_point_mass_outside_support(self):
        assert mass(make_partition_measure([1]), 2) == 0

    def test_additive_cell_three(self):
        assert mass(ADDITIVE, 3) == Fraction(1, 8)

    def test_mass_requires_positive_index(self):
        with pytest.raises(MeasureError):
            mass(SHAMAN, 0)


class TestTotalsAndDeficiency:
    def test_shaman_deficiency(self):
        assert deficiency(SHAMAN) == Fraction(1, 2)

    def test_additive_deficiency(self):
        assert deficiency(ADDITIVE) == 0

    def test_finite_head_sum(self):
        m = make_partition_measure(["1/4", "1/4"])
        assert total_mass(m) == Fraction(1, 2)

    def test_quarter_deficiency(self):
        assert deficiency(make_partition_measure(["3/4"])) == Fraction(1, 4)


class TestDominate:
    def test_shaman_becomes_coin_geometric(self):
        topped = dominate(SHAMAN)
        for n in range(1, 60):
            assert mass(topped, n) == Fraction(1, 2**n)
        assert total_mass(topped) == 1
        assert cellwise_equal(topped, ADDITIVE)

    def test_head_measure(self):
        topped = dominate(make_partition_measure(["3/4"]))
        assert mass(topped, 1) == Fraction(7, 8)
        for n in range(2, 30):
            assert mass(topped, n) == Fraction(1, 4) * Fraction(1, 2**n)
        assert total_mass(topped) == 1

    def test_additive_input_rejected(self):
        with pytest.raises(AlreadyCountablyAdditive):
            dominate(ADDITIVE)


class TestHStar:
    def test_shaman_rescaled_is_coin_geometric(self):
        rescaled = hstar(SHAMAN)
        for n in range(1, 60):
            assert mass(rescaled, n) == Fraction(1, 2**n)
        assert cellwise_equal(rescaled, ADDITIVE)

    def test_total_exactly_one(self):
        for m in (SHAMAN, make_partition_measure(["3/4"]), make_partition_measure(["1/8", "1/8"])):
            assert total_mass(hstar(m)) == 1

    def test_additive_input_rejected(self):
        with pytest.raises(AlreadyCountablyAdditive):
            hstar(ADDITIVE)

    def test_intermediate_inequality(self):
        # rescaled mass strictly above (1 + eps) * mass, which is >= mass
        for m in (SHAMAN, make_partition_measure(["1/4"], [("1/16", "3/4", 2)])):
            eps = deficiency(m)
            rescaled = hstar(m)
            for n in range(1, 1001):
                scaled = (1 + eps) * mass(m, n)
                assert mass(rescaled, n) > scaled >= mass(m, n)


class TestDominationReport:
    def test_rescaled_dominates_everywhere(self):
        report = domination_report(SHAMAN, hstar(SHAMAN), 10)
        assert report.dominates_everywhere
        assert report.tail_dominates
        assert all(c.strict for c in report.cells)

    def test_nothing_dominates_itself(self):
        report = domination_report(SHAMAN, SHAMAN, 10)
        assert not report.dominates_everywhere

    def test_failure_witness(self):
        report = domination_report(ADDITIVE, SHAMAN, 10)
        assert not report.dominates_everywhere
        assert report.first_failure == 1
        assert report.cells[0].base_mass == Fraction(1, 2)
        assert report.cells[0].candidate_mass == Fraction(1, 4)

    def test_deficiency_statuses(self):
        report = domination_report(SHAMAN, ADDITIVE, 5)
        assert report.base_deficiency == Fraction(1, 2)
        assert report.candidate_deficiency == 0
        assert not report.base_countably_additive
        assert report.candidate_countably_additive

    def test_tail_comparison_catches_far_cells(self):
        # equal up to the horizon, strictly smaller candidate tail beyond it
        base = make_partition_measure([], [("1/2", "1/2", 1)])
        candidate = make_partition_measure(["1/2"], [("1/8", "1/2", 2)])
        assert mass(base, 1) < mass(candidate, 1)
        report = domination_report(base, candidate, 1)
        assert not report.dominates_everywhere
        assert report.tail_witness is not None and report.tail_witness > 1


@settings(max_examples=120, deadline=None)
@given(partition_measures(deficient=True))
def test_both_constructions_renormalize_exactly(m):
    eps = deficiency(m)
    assert 0 < eps <= 1
    for candidate in (dominate(m), hstar(m)):
        assert total_mass(candidate) == 1
        for n in range(1, 40):
            assert mass(candidate, n) > mass(m, n)


@settings(max_examples=80, deadline=None)
@given(partition_measures(deficient=True))
def test_gap_split_dominates_everywhere_by_report(m):
    report = domination_report(m, dominate(m), 100)
    assert report.dominates_everywhere


@settings(max_examples=80, deadline=None)
@given(partition_measures(deficient=False), partition_measures())
def test_nothing_dominates_an_additive_measure(base, candidate):
    # strict gaps on every cell would push the candidate's total over 1
    report = domination_report(base, candidate, 50)
    assert not report.dominates_everywhere


@settings(max_examples=120, deadline=None)
@given(partition_measures())
def test_deficiency_within_unit_interval(m):
    assert 0 <= deficiency(m) <= 1
    assert deficiency(m) == 1 - total_mass(m)


class TestJson:
    def test_round_trip(self):
        m = make_partition_measure(["1/4", "0/1"], [("1/8", "3/4", 4)], "demo")
        data = measure_to_json(m)
        assert data["head"] == ["1/4", "0/1"]
        assert data["tails"] == [{"c": "1/8", "rho": "3/4", "start": 4}]
        assert measure_from_json(data) == m

    def test_unknown_keys_rejected(self):
        with pytest.raises(MeasureError):
            measure_from_json({"label": "x", "head": [], "tails": [], "extra": 1})
        with pytest.raises(MeasureError):
            measure_from_json({"tails": [{"c": "1/2", "rho": "1/2", "start": 1, "stop": 2}]})

    def test_decimal_strings_rejected(self):
        with pytest.raises(Exception):
            measure_from_json({"head": ["0.25"], "tails": []})
