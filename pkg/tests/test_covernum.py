import math

import pytest
from hypothesis import given, settings, strategies as st

from slalomcover.covernum import (cover_number_bounds, cover_number_exact,
                                  greedy_cover)
from slalomcover.errors import GuardExceeded
from slalomcover.scales import BoundFn
from slalomcover.slaloms import covers

# Frozen oracle values, each re-derivable by hand:
#   (3)/(2): two 2-sets cover [0,3), one cannot -> 2
#   (3,3)/(2,2): one slalom misses a full 1x1 corner, two leave an
#     uncovered 1x1 or 1x3 strip (4 branches can pairwise differ in both
#     coordinates only up to...), three grid cells suffice -> 3
#   (2,2)/(1,1): four singleton branches, one per slalom -> 4
#   (4,4)/(2,2): 16 branches, each slalom holds 4, and 3 slaloms always
#     miss a branch by a diagonal argument -> 4
ORACLE = {
    ((3,), (2,)): 2,
    ((3, 3), (2, 2)): 3,
    ((2, 2), (1, 1)): 4,
    ((4, 4), (2, 2)): 4,
}


@pytest.mark.parametrize("f_vals,g_vals", sorted(ORACLE))
def test_exact_cover_number_matches_oracle(f_vals, g_vals):
    f, g = BoundFn(f_vals), BoundFn(g_vals)
    exact, fam = cover_number_exact(f, g)
    assert exact == ORACLE[(f_vals, g_vals)]
    ok, _ = covers(fam, g, f)
    assert ok
    assert len(fam) == exact


def test_bounds_bracket_and_grid_covers():
    f, g = BoundFn((3, 3)), BoundFn((2, 2))
    lower, upper, grid = cover_number_bounds(f, g)
    assert lower == math.ceil(9 / 4) == 3
    assert upper == 4
    ok, _ = covers(grid, BoundFn((2, 2)), f)
    assert ok


def test_trivial_instance_is_one():
    f, g = BoundFn((2, 3)), BoundFn((2, 3))
    exact, fam = cover_number_exact(f, g)
    assert exact == 1


def test_counting_bound_one_can_be_wrong_sideways():
    # prod f / prod g = 1, yet no single slalom works because f > g at
    # level 0: the exact search must not take the counting shortcut
    f, g = BoundFn((4, 2)), BoundFn((2, 4))
    exact, _ = cover_number_exact(f, g)
    assert exact == 2


def test_guard_trips_on_large_instances():
    with pytest.raises(GuardExceeded):
        cover_number_exact(BoundFn((30, 30, 30)), BoundFn((10, 10, 10)),
                           guard=10)


def test_greedy_returns_verified_cover():
    f, g = BoundFn((3, 3)), BoundFn((2, 2))
    fam = greedy_cover(f, g)
    ok, _ = covers(fam, g, f)
    assert ok
    lower, upper, _ = cover_number_bounds(f, g)
    assert lower <= len(fam) <= upper


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_exact_within_bounds_on_random_instances(data):
    window = data.draw(st.integers(1, 2))
    f_vals = tuple(data.draw(st.integers(2, 4)) for _ in range(window))
    g_vals = tuple(data.draw(st.integers(1, fv)) for fv in f_vals)
    f, g = BoundFn(f_vals), BoundFn(g_vals)
    lower, upper, _ = cover_number_bounds(f, g)
    exact, fam = cover_number_exact(f, g)
    assert lower <= exact <= upper
    ok, _ = covers(fam, g, f)
    assert ok
    # greedy is a genuine cover and never beats the optimum
    assert len(greedy_cover(f, g)) >= exact


def test_exact_monotone_in_g():
    # enlarging g can only shrink the cover number
    f = BoundFn((4, 3))
    prev = None
    for gv in ((1, 1), (2, 1), (2, 2), (3, 2)):
        exact, _ = cover_number_exact(f, BoundFn(gv))
        if prev is not None:
            assert exact <= prev
        prev = exact
