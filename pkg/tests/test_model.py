import numpy as np
import pytest
from hypothesis import given, strategies as st

from dkp.model import (NO_ITEM, DkpInstance, evaluate, from_mckp, selection_from_binary,
                       to_mckp, validate)

from conftest import instances


def single(c, a, b=100):
    return DkpInstance.from_groups([(c, a)], b)


def test_validate_accepts_well_formed_group():
    for b in (0, 5, 10, 1000):
        assert validate(single((10, 20, 30), (5, 8, 10), b)).ok


def test_validate_flags_profit_sum():
    report = validate(single((10, 20, 31), (5, 8, 10)))
    assert not report.ok
    assert report.groups("profit-sum") == [0]
    assert "c_{3i+2} ≠ c_{3i}+c_{3i+1}" in str(report.violations[0])


def test_strict_mode_single_group_unsatisfiable():
    inst = single((10, 20, 30), (5, 8, 10), b=10)
    assert validate(inst).ok
    strict = validate(inst, strict=True)
    codes = [v.code for v in strict.violations]
    assert codes == ["capacity-total"]
    assert "Σ a_{3i+2} > b fails" in str(strict.violations[0])
    # b below the third weight trips the other strict condition only
    assert [v.code for v in validate(single((10, 20, 30), (5, 8, 10), 9), strict=True).violations] \
        == ["capacity-item"]


@pytest.mark.parametrize("c, a, code", [
    ((10, 20, 30), (8, 5, 10), "weight-order"),
    ((10, 20, 30), (5, 8, 13), "weight-discount"),
    ((20, 10, 30), (5, 8, 10), "profit-order"),
    ((0, 20, 20), (5, 8, 10), "nonpositive"),
])
def test_validate_codes(c, a, code):
    assert code in [v.code for v in validate(single(c, a)).violations]


def test_instance_rejects_out_of_range_and_bad_shapes():
    with pytest.raises(ValueError):
        DkpInstance([1, 2, 3], [1, 2, -3], 5)
    with pytest.raises(ValueError):
        DkpInstance([1, 2], [1, 2], 5)
    with pytest.raises(ValueError):
        DkpInstance([1, 2, 3], [1, 2, 3], -1)
    with pytest.raises(ValueError):
        DkpInstance([2**32, 1, 1], [1, 2, 3], 1)


def test_instance_is_immutable(t2):
    with pytest.raises(ValueError):
        t2.profits[0] = 99
    assert t2.profits.dtype == np.uint32


def test_to_mckp_t2(t2):
    view = to_mckp(t2)
    assert view.group(0) == ((0, 10, 20, 30), (0, 5, 8, 10))
    assert view.group(1) == ((0, 7, 9, 16), (0, 4, 6, 9))


def test_to_mckp_empty():
    view = to_mckp(DkpInstance([], [], 0))
    assert view.m == 0


@given(instances())
def test_mckp_round_trip(inst):
    view = to_mckp(inst)
    assert from_mckp(view, inst.capacity) == inst
    assert np.all(np.diff(view.profits, axis=1) > 0)
    assert np.all(np.diff(view.weights, axis=1) > 0)


@pytest.mark.parametrize("selection, value, weight, feasible", [
    ((2, -1), 30, 10, True),
    ((1, 0), 27, 12, True),
    ((0, 2), 26, 14, False),
])
def test_evaluate_t2(t2, selection, value, weight, feasible):
    sol = evaluate(t2, selection)
    assert (sol.value, sol.weight, sol.feasible) == (value, weight, feasible)


def test_evaluate_rejects_bad_entries(t2):
    with pytest.raises(ValueError):
        evaluate(t2, (3, 0))
    with pytest.raises(ValueError):
        evaluate(t2, (0,))


@given(instances(min_groups=1), st.data())
def test_evaluate_is_additive(inst, data):
    sel = data.draw(st.lists(st.integers(-1, 2), min_size=inst.m, max_size=inst.m))
    mask = data.draw(st.lists(st.booleans(), min_size=inst.m, max_size=inst.m))
    left = [s if keep else NO_ITEM for s, keep in zip(sel, mask)]
    right = [NO_ITEM if keep else s for s, keep in zip(sel, mask)]
    whole, l, r = evaluate(inst, sel), evaluate(inst, left), evaluate(inst, right)
    assert whole.value == l.value + r.value
    assert whole.weight == l.weight + r.weight


def test_binary_round_trip(t2):
    sol = evaluate(t2, (2, 0))
    x = sol.to_binary()
    assert x == [0, 0, 1, 1, 0, 0]
    assert selection_from_binary(x) == (2, 0)
    with pytest.raises(ValueError):
        selection_from_binary([1, 1, 0])


def test_accumulation_is_64_bit():
    big = 2**31
    inst = DkpInstance.from_groups([((big - 2, big - 1, 2 * big - 3), (2, 3, 4))] * 3, 12)
    sol = evaluate(inst, (2, 2, 2))
    assert sol.value == 3 * (2 * big - 3)
