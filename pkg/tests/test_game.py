import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectrum_eq.game import (GameDefinition, GameError, InvalidProfileError,
                              UnsupportedGameError, closed_form_nash, demand, payoff,
                              validate_profile)


def ref_payoff(c, w, k):
    total = sum(c)
    price = w - total if total <= w else 0.0
    return [price * ci - k * ci for ci in c]


@pytest.mark.parametrize("total, w, expected", [(6, 10, 4), (10, 10, 0), (12, 10, 0), (0, 10, 10)])
def test_demand(total, w, expected):
    assert demand(total, w) == expected


def test_demand_rejects_negative_total():
    with pytest.raises(GameError):
        demand(-1, 10)


@pytest.mark.parametrize("profile, expected", [
    ((3, 3), (9, 9)),
    ((2, 2, 3), (4, 4, 6)),
    ((0, 4), (0, 20)),
    ((2.25, 2.25), (10.125, 10.125)),
    ((0, 4.5), (0, 20.25)),
])
def test_payoff_examples(profile, expected):
    game = GameDefinition(len(profile), 10, 1)
    np.testing.assert_array_equal(payoff(profile, game), expected)


def test_payoff_uses_clamped_demand(duo):
    # C = 14 > W: demand is 0, so only the access cost remains
    np.testing.assert_array_equal(payoff((7, 7), duo), (-7, -7))


def test_payoff_validates(duo):
    with pytest.raises(InvalidProfileError):
        payoff((-1, 2), duo)
    with pytest.raises(GameError):
        payoff((1, 2, 3), duo)


def test_payoff_vectorised_matches_rows(trio_grid):
    grid = np.array(list(itertools.product(range(11), repeat=3)), dtype=float)
    got = payoff(grid, trio_grid)
    for row, u in zip(grid[::37], got[::37]):
        assert list(u) == ref_payoff(row, 10, 1)


@pytest.mark.parametrize("n, expected", [(2, (3, 3)), (3, (2.25, 2.25, 2.25)), (1, (4.5,))])
def test_closed_form_nash(n, expected):
    np.testing.assert_array_equal(closed_form_nash(GameDefinition(n, 10, 1)), expected)


def test_closed_form_nash_zero_margin():
    np.testing.assert_array_equal(closed_form_nash(GameDefinition(3, 5, 5)), (0, 0, 0))


def test_closed_form_nash_rejects_discrete(duo_grid):
    with pytest.raises(UnsupportedGameError):
        closed_form_nash(duo_grid)


def test_validate_profile():
    cont = GameDefinition(2, 10, 1)
    grid = GameDefinition(2, 10, 1, "discrete")
    assert validate_profile((3, 3), cont) is None
    v = validate_profile((-1, 2), cont)
    assert (v.index, v.value) == (0, -1.0) and "lower" in v.constraint
    v = validate_profile((2.5, 2), grid)
    assert (v.index, v.value) == (0, 2.5) and "integer" in v.constraint
    v = validate_profile((1, 10.5), cont)
    assert v.index == 1 and "upper" in v.constraint
    assert validate_profile((1, 2, 3), cont).constraint == "length == 2"


@pytest.mark.parametrize("kwargs", [
    dict(n=0), dict(n=2, w=0), dict(n=2, w=10, k=11), dict(n=2, k=-1), dict(n=2, kind="mixed"),
])
def test_game_rejects_bad_parameters(kwargs):
    with pytest.raises(GameError):
        GameDefinition(**kwargs)


def test_discrete_action_set():
    assert list(GameDefinition(2, 10, 1, "discrete").actions()) == list(range(11))
    assert list(GameDefinition(2, 3.7, 1, "discrete").actions()) == [0, 1, 2, 3]
    with pytest.raises(UnsupportedGameError):
        GameDefinition(2).actions()


def test_free_access_allowed():
    game = GameDefinition(2, 10, 0)
    np.testing.assert_allclose(closed_form_nash(game), (10 / 3, 10 / 3))


profiles = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.floats(0, 10, allow_nan=False), min_size=n, max_size=n))


@given(profiles, st.floats(0, 10))
def test_payoff_matches_reference_and_zero_action(c, k):
    game = GameDefinition(len(c), 10, k)
    u = payoff(c, game)
    np.testing.assert_allclose(u, ref_payoff(c, 10, k), rtol=1e-12, atol=1e-12)
    for ci, ui in zip(c, u):
        if ci == 0:
            assert ui == 0


@given(profiles, st.randoms(use_true_random=False))
def test_payoff_permutation_symmetry(c, rnd):
    game = GameDefinition(len(c), 10, 1)
    perm = list(range(len(c)))
    rnd.shuffle(perm)
    u = payoff(c, game)
    # summing C in another order may move the last ulp
    np.testing.assert_allclose(payoff([c[p] for p in perm], game), u[perm], rtol=1e-12, atol=1e-12)


@given(profiles)
def test_clamped_equals_linear_form_below_capacity(c):
    game = GameDefinition(len(c), 10, 1)
    total = float(np.sum(c))
    if total <= 10:
        linear = (10 - np.sum(c)) * np.asarray(c) - 1 * np.asarray(c)
        np.testing.assert_array_equal(payoff(c, game), linear)
    assert demand(total, 10) >= 0


@pytest.mark.parametrize("n, w, k", [(1, 10, 1), (2, 10, 1), (3, 10, 1), (4, 7, 2), (2, 10, 0)])
def test_closed_form_is_best_response(n, w, k):
    game = GameDefinition(n, w, k)
    star = closed_form_nash(game)
    base = payoff(star, game)
    for i in range(n):
        for d in np.linspace(0, w, 1000):
            dev = star.copy()
            dev[i] = d
            assert base[i] >= payoff(dev, game)[i] - 1e-9
