"""Data model: validation, unitary prices, partitioning."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from artindex import (
    SaleObservation,
    ValidationError,
    normalize_price,
    partition_by_period,
    restrict_to_periods,
    validate_dataset,
    with_period_relabeled,
    with_price_increments,
    with_price_scaled,
)

from conftest import TABLE1


def obs(id="1", period="A", price=100.0, area=10.0, ratio=1.0, extras=None):
    return SaleObservation(
        id=id,
        period=period,
        price=price,
        area=area,
        aspect_ratio=ratio,
        extra_characteristics=extras or {},
    )


positive_floats = st.floats(
    min_value=1e-6, max_value=1e12, allow_nan=False, allow_infinity=False
)


class TestNormalizePrice:
    def test_printed_example_obs1(self):
        up = normalize_price(obs(price=105771.0, area=74.90))
        assert up.value == pytest.approx(1412.16, abs=0.005)

    def test_unit_ratio(self):
        assert normalize_price(obs(price=100.0, area=100.0)).value == 1.0

    def test_printed_example_obs14(self):
        up = normalize_price(obs(price=2295088.0, area=942.50))
        assert up.value == pytest.approx(2435.11, abs=0.005)

    @pytest.mark.parametrize(
        "bad",
        [
            dict(price=0.0),
            dict(price=-5.0),
            dict(price=float("nan")),
            dict(price=float("inf")),
            dict(area=0.0),
            dict(area=-1.0),
            dict(area=float("nan")),
        ],
    )
    def test_rejects_corrupt_records(self, bad):
        with pytest.raises(ValidationError):
            normalize_price(obs(**bad))

    @given(price=positive_floats, area=positive_floats)
    def test_product_recovers_price_to_rounding(self, price, area):
        value = normalize_price(obs(price=price, area=area)).value
        # one rounding in the divide, one in the multiply
        assert abs(value * area - price) <= 2 * math.ulp(price)

    def test_bundled_rows_recover_price_within_one_ulp(self):
        for id_, period, price, area, ratio, _ in TABLE1:
            value = normalize_price(obs(price=price, area=area)).value
            assert abs(value * area - price) <= math.ulp(price)


class TestValidateDataset:
    def test_bundled_shape(self, renoir):
        assert len(renoir) == 29
        assert renoir.periods == ("A", "B")
        parts = partition_by_period(renoir)
        assert len(parts["A"]) == 14
        assert len(parts["B"]) == 15

    def test_empty_input(self):
        with pytest.raises(ValidationError, match="empty dataset"):
            validate_dataset([])

    def test_duplicate_id_named(self):
        with pytest.raises(ValidationError, match="duplicate id '1'"):
            validate_dataset([obs(id="1"), obs(id="1", period="B")])

    def test_all_problems_reported_together(self):
        records = [
            obs(id="1", price=-3.0),
            obs(id="2", area=0.0),
            obs(id="2", ratio=float("nan")),
        ]
        with pytest.raises(ValidationError) as excinfo:
            validate_dataset(records)
        messages = excinfo.value.errors
        assert len(messages) == 4
        assert any("duplicate id '2'" in m for m in messages)
        assert any("price" in m for m in messages)
        assert any("area" in m for m in messages)
        assert any("aspect_ratio" in m for m in messages)

    def test_bad_extra_characteristic(self):
        with pytest.raises(ValidationError, match="characteristic 'condition'"):
            validate_dataset([obs(extras={"condition": float("nan")})])

    def test_idempotent(self, renoir):
        again = validate_dataset(renoir.observations)
        assert again == renoir

    def test_periods_in_first_appearance_order(self):
        ds = validate_dataset([obs(id="1", period="Z"), obs(id="2", period="A")])
        assert ds.periods == ("Z", "A")

    def test_explicit_period_order(self):
        ds = validate_dataset(
            [obs(id="1", period="Z"), obs(id="2", period="A")], period_order=["A", "Z"]
        )
        assert ds.periods == ("A", "Z")

    def test_period_order_must_cover_observed(self):
        with pytest.raises(ValidationError, match="missing from supplied period order"):
            validate_dataset(
                [obs(id="1", period="A"), obs(id="2", period="B")], period_order=["A"]
            )

    def test_period_order_must_not_add_empty_periods(self):
        with pytest.raises(ValidationError, match="has no observations"):
            validate_dataset([obs(id="1", period="A")], period_order=["A", "B"])


class TestPartition:
    def test_single_period(self):
        ds = validate_dataset([obs(id="1"), obs(id="2")])
        parts = partition_by_period(ds)
        assert set(parts) == {"A"}
        assert len(parts["A"]) == 2

    def test_every_observation_in_exactly_one_bin(self, renoir):
        parts = partition_by_period(renoir)
        ids = [o.id for group in parts.values() for o in group]
        assert sorted(ids, key=int) == sorted((o.id for o in renoir.observations), key=int)

    def test_dataset_c_partition(self, renoir_ac):
        parts = partition_by_period(renoir_ac)
        assert len(parts["A"]) == 14
        assert len(parts["C"]) == 15

    @given(data=st.data())
    def test_sizes_invariant_under_reordering(self, data):
        n = data.draw(st.integers(min_value=2, max_value=12))
        periods = data.draw(
            st.lists(st.sampled_from(["A", "B", "C"]), min_size=n, max_size=n)
        )
        records = [obs(id=str(i), period=p) for i, p in enumerate(periods)]
        permutation = data.draw(st.permutations(records))
        base = partition_by_period(validate_dataset(records))
        shuffled = partition_by_period(validate_dataset(permutation))
        assert {p: len(g) for p, g in base.items()} == {
            p: len(g) for p, g in shuffled.items()
        }


class TestTransforms:
    def test_price_scaling(self, renoir):
        scaled = with_price_scaled(renoir, "29", 1.5)
        assert scaled.by_id("29").price == pytest.approx(146841502.0 * 1.5)
        assert scaled.by_id("28").price == renoir.by_id("28").price
        assert scaled.by_id("29").area == renoir.by_id("29").area

    def test_increment_unknown_id(self, renoir):
        with pytest.raises(ValidationError, match="unknown observation id 'nope'"):
            with_price_increments(renoir, {"nope": 1.0})

    def test_negative_increment_rejected(self, renoir):
        with pytest.raises(ValidationError, match="non-negative"):
            with_price_increments(renoir, {"1": -0.5})

    def test_relabel(self, renoir):
        relabeled = with_period_relabeled(renoir, "B", "C")
        assert relabeled.periods == ("A", "C")
        assert relabeled.by_id("29").period == "C"

    def test_relabel_collision(self, renoir):
        with pytest.raises(ValidationError, match="already present"):
            with_period_relabeled(renoir, "B", "A")

    def test_restrict(self, renoir):
        only_b = restrict_to_periods(renoir, ["B"])
        assert only_b.periods == ("B",)
        assert len(only_b) == 15

    def test_restrict_unknown_period(self, renoir):
        with pytest.raises(ValidationError, match="'Q' not present"):
            restrict_to_periods(renoir, ["Q"])
