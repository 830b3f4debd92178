"""GTNSGA2: NSGA-II whose dominance test is a generative N-P relation.

Payoffs are the objectives. Fronts come from repeated removal of the
non-dominated set under :func:`~spectrum_eq.relations.np_dominates`, and
diversity is kept by crowding distance in payoff space. Every random draw
comes from one ``numpy.random.Generator`` consumed in a fixed order, so a
seed fully determines a run.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from .game import GameDefinition, GameError, payoff
from .oracle import EquilibriumSet
from .relations import PROFILE_TOL, RationalityProfile, dedupe, domination_matrix

EVOLVED_KIND = "evolved-front"


@dataclass(frozen=True)
class SolverParams:
    population_size: int = 100
    max_generations: int = 100
    crossover_rate: float = 0.9
    # None means 1/n, resolved per game
    mutation_rate: Optional[float] = None
    crossover_index: float = 15.0
    mutation_index: float = 20.0
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 4 or self.population_size % 2:
            raise GameError(f"population_size must be even and >= 4, got {self.population_size}")
        if self.max_generations < 1:
            raise GameError(f"max_generations must be >= 1, got {self.max_generations}")
        if not 0 <= self.crossover_rate <= 1:
            raise GameError(f"crossover_rate must lie in [0, 1], got {self.crossover_rate}")
        if self.mutation_rate is not None and not 0 <= self.mutation_rate <= 1:
            raise GameError(f"mutation_rate must lie in [0, 1], got {self.mutation_rate}")
        if self.crossover_index <= 0 or self.mutation_index <= 0:
            raise GameError("distribution indices must be positive")
        if not 0 <= self.seed < 2**64:
            raise GameError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def mutation_rate_for(self, game: GameDefinition) -> float:
        return 1.0 / game.n if self.mutation_rate is None else self.mutation_rate

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Individual:
    profile: np.ndarray
    payoffs: np.ndarray
    rank: int = 0
    crowding: float = 0.0


@dataclass
class GenerationRecord:
    generation: int
    front_size: int
    centroid: tuple
    spread: float


@dataclass
class RunHistory:
    records: List[GenerationRecord] = field(default_factory=list)
    final_population: List[Individual] = field(default_factory=list)

    def __len__(self):
        return len(self.records)


def nondominated_sort(population, game: GameDefinition, rationality: RationalityProfile,
                      tol: float = PROFILE_TOL) -> List[np.ndarray]:
    """Partition population indices into fronts F_0, F_1, ...

    The N-P relation need not be transitive. If the remaining members form a
    domination cycle with no undominated member, those with the fewest
    dominators among the remainder make up the next front.
    """
    P = np.atleast_2d(np.asarray(population, dtype=float))
    if not len(P):
        raise GameError("cannot sort an empty population")
    D = domination_matrix(P, game, rationality, tol)
    remaining = np.ones(len(P), dtype=bool)
    fronts = []
    while remaining.any():
        beaten_by = (D & remaining[:, None]).sum(axis=0)
        beaten_by[~remaining] = np.iinfo(beaten_by.dtype).max
        front = np.flatnonzero(beaten_by == beaten_by.min())
        fronts.append(front)
        remaining[front] = False
    return fronts


def crowding_distance(objectives) -> np.ndarray:
    """NSGA-II crowding distance of each member of one front."""
    F = np.atleast_2d(np.asarray(objectives, dtype=float))
    m = len(F)
    dist = np.zeros(m)
    if m <= 2:
        return np.full(m, np.inf)
    for j in range(F.shape[1]):
        order = np.argsort(F[:, j], kind="stable")
        col = F[order, j]
        span = col[-1] - col[0]
        if span <= 0:
            continue
        dist[order[0]] = dist[order[-1]] = np.inf
        dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def _sbx(a, b, upper, rate, eta, rng):
    """Bounded simulated binary crossover on [0, upper], one pair."""
    c1, c2 = a.copy(), b.copy()
    if rng.random() > rate:
        return c1, c2
    for j in range(len(a)):
        u, swap = rng.random(), rng.random()
        if abs(a[j] - b[j]) < 1e-14:
            continue
        y1, y2 = min(a[j], b[j]), max(a[j], b[j])
        span = y2 - y1
        children = []
        for beta in (1.0 + 2.0 * (y1 - 0.0) / span, 1.0 + 2.0 * (upper - y2) / span):
            alpha = 2.0 - beta ** -(eta + 1.0)
            if u <= 1.0 / alpha:
                betaq = (u * alpha) ** (1.0 / (eta + 1.0))
            else:
                betaq = (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta + 1.0))
            children.append(betaq)
        lo = 0.5 * ((y1 + y2) - children[0] * span)
        hi = 0.5 * ((y1 + y2) + children[1] * span)
        lo, hi = min(max(lo, 0.0), upper), min(max(hi, 0.0), upper)
        if swap < 0.5:
            lo, hi = hi, lo
        c1[j], c2[j] = lo, hi
    return c1, c2


def _polynomial_mutation(x, upper, rate, eta, rng):
    x = x.copy()
    for j in range(len(x)):
        if rng.random() >= rate:
            continue
        u = rng.random()
        d1, d2 = x[j] / upper, (upper - x[j]) / upper
        power = 1.0 / (eta + 1.0)
        if u < 0.5:
            val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
            delta = val ** power - 1.0
        else:
            val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
            delta = 1.0 - val ** power
        x[j] = min(max(x[j] + delta * upper, 0.0), upper)
    return x


def make_offspring(parent_a, parent_b, game: GameDefinition, params: SolverParams, rng):
    """Two children of two parents; always valid profiles for ``game``.

    Continuous games use SBX followed by polynomial mutation. Discrete games
    swap coordinates uniformly, then reset mutated coordinates to a random
    action.
    """
    a = np.asarray(parent_a, dtype=float)
    b = np.asarray(parent_b, dtype=float)
    rate = params.mutation_rate_for(game)
    upper = game.upper
    if not game.discrete:
        c1, c2 = _sbx(a, b, upper, params.crossover_rate, params.crossover_index, rng)
        return (_polynomial_mutation(c1, upper, rate, params.mutation_index, rng),
                _polynomial_mutation(c2, upper, rate, params.mutation_index, rng))

    c1, c2 = a.copy(), b.copy()
    if rng.random() < params.crossover_rate:
        swap = rng.random(game.n) < 0.5
        c1[swap], c2[swap] = b[swap], a[swap]
    top = int(upper) + 1
    for child in (c1, c2):
        hit = rng.random(game.n) < rate
        draws = rng.integers(0, top, size=game.n)
        child[hit] = draws[hit]
    return c1, c2


def _initial_population(game, size, rng):
    if game.discrete:
        return rng.integers(0, int(game.upper) + 1, size=(size, game.n)).astype(float)
    return rng.uniform(0.0, game.upper, size=(size, game.n))


def _rank_and_crowd(P, U, game, rationality):
    fronts = nondominated_sort(P, game, rationality)
    rank = np.empty(len(P), dtype=int)
    crowd = np.empty(len(P))
    for r, front in enumerate(fronts):
        rank[front] = r
        crowd[front] = crowding_distance(U[front])
    return fronts, rank, crowd


def _survivors(merged, merged_u, N, game, rationality):
    """Indices of the N members kept from parents + offspring.

    Exact duplicates go to the back of the queue: distinct profiles are
    ranked and truncated first, copies only fill leftover slots.
    """
    _, first = np.unique(merged, axis=0, return_index=True)
    unique = np.sort(first)
    copies = np.setdiff1d(np.arange(len(merged)), unique)
    chosen = []
    for front in nondominated_sort(merged[unique], game, rationality):
        front = unique[front]
        if len(chosen) + len(front) <= N:
            chosen.extend(front)
            continue
        dist = crowding_distance(merged_u[front])
        order = np.argsort(-dist, kind="stable")
        chosen.extend(front[order[: N - len(chosen)]])
        break
    chosen.extend(copies[: N - len(chosen)])
    return np.array(chosen)


def _better(a, b, rank, crowd):
    if rank[a] != rank[b]:
        return a if rank[a] < rank[b] else b
    if crowd[a] != crowd[b]:
        return a if crowd[a] > crowd[b] else b
    return min(a, b)


def _record(gen, P, rank):
    front = P[rank == 0]
    spread = float(np.max(front.max(axis=0) - front.min(axis=0)))
    return GenerationRecord(gen, int(len(front)), tuple(float(v) for v in front.mean(axis=0)), spread)


def evolve(game: GameDefinition, rationality: RationalityProfile, params: SolverParams = None,
           on_generation=None):
    """Run GTNSGA2 and return ``(front, history)``.

    ``front`` is the deduplicated rank-0 set of the final population as an
    :class:`EquilibriumSet`; ``history`` holds one record per generation.
    ``on_generation(gen, profiles, ranks)``, if given, sees every population
    after survival.
    """
    params = params or SolverParams()
    rationality.check(game)
    rng = np.random.default_rng(params.seed)
    N = params.population_size

    P = _initial_population(game, N, rng)
    U = payoff(P, game, validate=False)
    _, rank, crowd = _rank_and_crowd(P, U, game, rationality)
    history = RunHistory()

    for gen in range(params.max_generations):
        picks = rng.integers(0, N, size=(N, 2))
        parents = [_better(a, b, rank, crowd) for a, b in picks]
        children = []
        for k in range(0, N, 2):
            children.extend(make_offspring(P[parents[k]], P[parents[k + 1]], game, params, rng))
        Q = np.array(children)

        merged = np.vstack([P, Q])
        merged_u = np.vstack([U, payoff(Q, game, validate=False)])
        chosen = _survivors(merged, merged_u, N, game, rationality)
        P, U = merged[chosen], merged_u[chosen]
        _, rank, crowd = _rank_and_crowd(P, U, game, rationality)
        history.records.append(_record(gen, P, rank))
        if on_generation is not None:
            on_generation(gen, P.copy(), rank.copy())

    history.final_population = [
        Individual(P[a].copy(), U[a].copy(), int(rank[a]), float(crowd[a])) for a in range(N)
    ]
    front = EquilibriumSet.from_profiles(dedupe(P[rank == 0]), game, EVOLVED_KIND,
                                         rationality=str(rationality),
                                         generations=params.max_generations,
                                         seed=params.seed)
    return front, history
