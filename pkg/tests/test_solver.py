import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectrum_eq.game import GameDefinition, GameError, payoff, validate_profile
from spectrum_eq.oracle import exact_front
from spectrum_eq.relations import RationalityProfile, all_nash, all_pareto, np_dominates
from spectrum_eq.solver import (SolverParams, crowding_distance, evolve, make_offspring,
                                nondominated_sort)


def test_params_validation():
    SolverParams()
    for bad in (dict(population_size=5), dict(population_size=2), dict(max_generations=0),
                dict(crossover_rate=1.5), dict(mutation_rate=-0.1), dict(crossover_index=0),
                dict(seed=-1), dict(seed=2**64)):
        with pytest.raises(GameError):
            SolverParams(**bad)
    assert SolverParams().mutation_rate_for(GameDefinition(3)) == pytest.approx(1 / 3)


def test_sort_examples(duo):
    fronts = nondominated_sort([(3, 3), (2, 2)], duo, all_nash(2))
    assert [list(f) for f in fronts] == [[0], [1]]
    incomparable = [(0, 4.5), (2.25, 2.25), (4.5, 0)]
    assert [list(f) for f in nondominated_sort(incomparable, duo, all_pareto(2))] == [[0, 1, 2]]
    same = [(1, 2)] * 5
    assert [list(f) for f in nondominated_sort(same, duo, all_nash(2))] == [[0, 1, 2, 3, 4]]


def test_sort_handles_cycles(trio_grid):
    # 0 beats 2, 1 beats 0, 2 beats 1: nobody is undominated
    cycle = [(6, 10, 0), (5, 6, 6), (8, 4, 4)]
    r = all_nash(3)
    assert np_dominates(cycle[0], cycle[2], trio_grid, r)
    assert np_dominates(cycle[1], cycle[0], trio_grid, r)
    assert np_dominates(cycle[2], cycle[1], trio_grid, r)
    fronts = nondominated_sort(cycle + [(3, 3, 3)], trio_grid, r)
    assert sorted(itertools.chain.from_iterable(fronts)) == [0, 1, 2, 3]
    # (3, 3, 3) is undominated; the cycle members tie on dominator count
    assert [list(f) for f in fronts] == [[3], [0, 1, 2]]


def test_sort_first_front_is_undominated(trio_grid):
    rng = np.random.default_rng(8)
    pop = rng.integers(0, 11, size=(60, 3)).astype(float)
    r = RationalityProfile.parse("N,N,P")
    fronts = nondominated_sort(pop, trio_grid, r)
    for a in fronts[0]:
        assert not any(np_dominates(pop[b], pop[a], trio_grid, r) for b in range(60))
    for a in set(range(60)) - set(fronts[0]):
        assert any(np_dominates(pop[b], pop[a], trio_grid, r) for b in range(60))


def test_crowding_examples():
    assert np.all(np.isinf(crowding_distance([(1, 2), (3, 4)])))
    assert np.all(np.isinf(crowding_distance([(1, 2)])))
    d = crowding_distance([(0, 20), (10, 10), (20, 0)])
    assert np.isinf(d[0]) and np.isinf(d[2])
    assert d[1] == pytest.approx(2.0)


def test_crowding_zero_range_objective():
    d = crowding_distance([(0, 5), (1, 5), (3, 5)])
    # second objective is flat and contributes nothing
    assert d[1] == pytest.approx((3 - 0) / 3)


def test_offspring_identity_without_variation(duo, trio_grid):
    params = SolverParams(crossover_rate=0, mutation_rate=0)
    rng = np.random.default_rng(0)
    for game, a, b in ((duo, (1.5, 2.5), (4.0, 0.5)), (trio_grid, (2, 2, 2), (3, 3, 3))):
        c1, c2 = make_offspring(a, b, game, params, rng)
        np.testing.assert_array_equal(c1, a)
        np.testing.assert_array_equal(c2, b)


def test_sbx_of_identical_parents(duo):
    params = SolverParams(crossover_rate=1.0, mutation_rate=0)
    rng = np.random.default_rng(1)
    for _ in range(20):
        c1, c2 = make_offspring((0, 0), (0, 0), duo, params, rng)
        np.testing.assert_array_equal(c1, (0, 0))
        np.testing.assert_array_equal(c2, (0, 0))


def test_uniform_crossover_support(trio_grid):
    params = SolverParams(crossover_rate=1.0, mutation_rate=0)
    rng = np.random.default_rng(2)
    seen = set()
    for _ in range(50):
        for child in make_offspring((2, 2, 2), (3, 3, 3), trio_grid, params, rng):
            assert set(child) <= {2.0, 3.0}
            seen.add(tuple(child))
    assert len(seen) == 8


@given(st.integers(0, 2**32), st.sampled_from(["continuous", "discrete"]), st.integers(2, 3))
def test_offspring_always_valid(seed, kind, n):
    game = GameDefinition(n, 10, 1, kind)
    rng = np.random.default_rng(seed)
    upper = 11 if kind == "discrete" else None
    for _ in range(10):
        if upper:
            a, b = rng.integers(0, upper, size=(2, n)).astype(float)
        else:
            a, b = rng.uniform(0, 10, size=(2, n))
        params = SolverParams(crossover_rate=1.0, mutation_rate=1.0)
        for child in make_offspring(a, b, game, params, rng):
            assert validate_profile(child, game) is None


def test_every_generation_is_valid_and_history_complete(trio):
    seen = []

    def check(gen, pop, ranks):
        seen.append(gen)
        for row in pop:
            assert validate_profile(row, trio) is None
        assert ranks.min() == 0

    front, history = evolve(trio, RationalityProfile.parse("N,N,P"),
                            SolverParams(max_generations=15, seed=3), on_generation=check)
    assert seen == list(range(15))
    assert [r.generation for r in history.records] == seen
    assert len(history.final_population) == 100
    for ind in history.final_population:
        np.testing.assert_array_equal(ind.payoffs, payoff(ind.profile, trio))
    np.testing.assert_array_equal(front.payoffs, payoff(front.profiles, trio))


@pytest.mark.parametrize("kind", ["continuous", "discrete"])
def test_determinism(kind):
    game = GameDefinition(2, 10, 1, kind)
    r = RationalityProfile.parse("N,P")
    params = SolverParams(max_generations=20, seed=123)
    f1, h1 = evolve(game, r, params)
    f2, h2 = evolve(game, r, params)
    np.testing.assert_array_equal(f1.profiles, f2.profiles)
    assert h1.records == h2.records
    _, h3 = evolve(game, r, SolverParams(max_generations=20, seed=124))
    assert h1.records != h3.records


def test_front_is_deduplicated(duo_grid):
    front, _ = evolve(duo_grid, all_nash(2), SolverParams(max_generations=30, seed=9))
    rows = [tuple(p) for p in front.profiles]
    assert len(rows) == len(set(rows))
    assert rows == sorted(rows)


@pytest.mark.slow
@pytest.mark.parametrize("n, text", [(n, ",".join(t)) for n in (2, 3)
                                     for t in itertools.product("NP", repeat=n)])
def test_discrete_front_within_oracle(n, text):
    game = GameDefinition(n, 10, 1, "discrete")
    r = RationalityProfile.parse(text)
    front, _ = evolve(game, r, SolverParams(seed=0))
    assert front.as_tuples() <= exact_front(game, r).as_tuples()


@pytest.mark.slow
def test_continuous_pareto_payoffs_near_optimum(duo):
    front, _ = evolve(duo, all_pareto(2), SolverParams(seed=0))
    # total payoff (9 - C) C never exceeds the aggregate optimum 20.25
    assert front.payoffs.sum(axis=1).max() <= 20.25 + 1e-12
    assert front.payoffs.sum(axis=1).min() >= 19.5
