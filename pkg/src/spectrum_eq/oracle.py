"""Exact equilibria of discrete games by enumerating the whole action grid."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .game import GameDefinition, UnsupportedGameError, deviation_payoff, payoff
from .relations import RationalityProfile, efficiency_matrix

DEFAULT_CAP = 10**8
NASH_KIND = "nash-best-response"
FRONT_KIND = "front-under-rationality"


class EnumerationCapError(RuntimeError):
    def __init__(self, count, cap):
        super().__init__(f"grid has {count} profiles, above the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass
class EquilibriumSet:
    profiles: np.ndarray
    payoffs: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.profiles)

    def as_tuples(self) -> set:
        return {tuple(float(v) for v in row) for row in self.profiles}

    @classmethod
    def from_profiles(cls, profiles, game, kind, **meta):
        P = np.asarray(profiles, dtype=float).reshape(-1, game.n)
        # lexicographic order so results never depend on evaluation order
        P = P[np.lexsort(P.T[::-1])] if len(P) else P
        return cls(P, payoff(P, game, validate=False), kind, dict(meta))


def grid_size(game: GameDefinition) -> int:
    return (int(game.upper) + 1) ** game.n


def _check_grid(game, cap):
    if not game.discrete:
        raise UnsupportedGameError("enumeration needs a discrete game")
    count = grid_size(game)
    if count > cap:
        raise EnumerationCapError(count, cap)


def enumerate_profiles(game: GameDefinition, cap: int = DEFAULT_CAP):
    """Yield every discrete profile once, lexicographically."""
    _check_grid(game, cap)
    return itertools.product(*(range(int(game.upper) + 1) for _ in range(game.n)))


def _chunks(game, cap, size=65536):
    it = enumerate_profiles(game, cap)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=float)


def exact_nash(game: GameDefinition, cap: int = DEFAULT_CAP) -> EquilibriumSet:
    """All pure profiles where no player has a strictly better unilateral deviation."""
    actions = game.actions()
    found = []
    for block in _chunks(game, cap):
        total = block.sum(axis=1)
        stable = np.ones(len(block), dtype=bool)
        for i in range(game.n):
            others = (total - block[:, i])[:, None]
            current = deviation_payoff(block[:, i][:, None], others, game)[:, 0]
            best = deviation_payoff(actions[None, :], others, game).max(axis=1)
            stable &= current >= best
        found.append(block[stable])
    return EquilibriumSet.from_profiles(np.concatenate(found), game, NASH_KIND)


def exact_front(game: GameDefinition, rationality: RationalityProfile,
                cap: int = DEFAULT_CAP, chunk: int = 512, weak: bool = False) -> EquilibriumSet:
    """Grid profiles not N-P-dominated by any other grid profile.

    Quadratic in the grid size; the pairwise scores are built ``chunk`` rows
    at a time so memory stays at ``O(chunk * m)``.
    """
    rationality.check(game)
    _check_grid(game, cap)
    grid = np.concatenate(list(_chunks(game, cap)))
    dominated = np.zeros(len(grid), dtype=bool)
    for start in range(0, len(grid), chunk):
        block = grid[start:start + chunk]
        forward = efficiency_matrix(block, grid, game, rationality, weak=weak)    # E(block, grid)
        backward = efficiency_matrix(grid, block, game, rationality, weak=weak).T  # E(grid, block)
        # block[a] dominates grid[b] when E(grid[b], block[a]) < E(block[a], grid[b])
        dominated |= (backward < forward).any(axis=0)
    return EquilibriumSet.from_profiles(grid[~dominated], game, FRONT_KIND,
                                        rationality=str(rationality))
