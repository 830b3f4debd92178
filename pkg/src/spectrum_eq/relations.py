"""Generative dominance relations for Nash, Pareto and joint Nash-Pareto equilibria.

Each player carries a bias, Nash or Pareto. For profiles x and y the relative
efficiency of x over y is

    E(x, y) = #{i Nash-biased : u_i(x_i, y_-i) > u_i(y), x_i != y_i}
              + #{Pareto-biased players} * [x Pareto-dominates y]

and x N-P-dominates y when E(y, x) < E(x, y). With every player Nash-biased
this is Nash ascendancy; with every player Pareto-biased it is plain Pareto
dominance. The non-dominated profiles approximate the equilibrium set.

The Nash count uses strict improvement by default. Counting weak improvers
(``weak=True``) lets a joint move of several indifferent players dominate a
weak equilibrium, e.g. (0, 3, 3) dominates (2, 2, 2) in the 3-radio discrete
game, so weak equilibria would drop out of the front.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .game import GameDefinition, GameError, deviation_payoff, payoff

# max-coordinate distance under which two profiles count as the same strategy
PROFILE_TOL = 1e-6


class Bias(str, enum.Enum):
    NASH = "N"
    PARETO = "P"


@dataclass(frozen=True)
class RationalityProfile:
    biases: tuple

    def __post_init__(self):
        object.__setattr__(self, "biases", tuple(Bias(b) for b in self.biases))
        if not self.biases:
            raise GameError("rationality profile is empty")

    @classmethod
    def parse(cls, text: str) -> "RationalityProfile":
        """Parse ``"N,N,P"`` style strings (case-insensitive)."""
        tokens = [t.strip().upper() for t in str(text).split(",")]
        bad = [t for t in tokens if t not in ("N", "P")]
        if bad:
            raise GameError(f"rationality tokens must be N or P, got {bad!r} in {text!r}")
        return cls(tuple(tokens))

    @classmethod
    def uniform(cls, bias, n: int) -> "RationalityProfile":
        return cls((Bias(bias),) * n)

    def __len__(self):
        return len(self.biases)

    def __str__(self):
        return ",".join(b.value for b in self.biases)

    @property
    def nash_players(self) -> list:
        return [i for i, b in enumerate(self.biases) if b is Bias.NASH]

    @property
    def pareto_players(self) -> list:
        return [i for i, b in enumerate(self.biases) if b is Bias.PARETO]

    def check(self, game: GameDefinition) -> None:
        if len(self) != game.n:
            raise GameError(
                f"rationality {str(self)!r} has {len(self)} entries but the game has {game.n} players"
            )


def all_nash(n: int) -> RationalityProfile:
    return RationalityProfile.uniform(Bias.NASH, n)


def all_pareto(n: int) -> RationalityProfile:
    return RationalityProfile.uniform(Bias.PARETO, n)


def _as_profiles(x, game):
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (game.n,):
        raise GameError(f"profile must have {game.n} entries, got shape {x.shape}")
    return x


def _pareto_matrix(ux: np.ndarray, uy: np.ndarray) -> np.ndarray:
    ge = np.all(ux[:, None, :] >= uy[None, :, :], axis=-1)
    gt = np.any(ux[:, None, :] > uy[None, :, :], axis=-1)
    return ge & gt


def pareto_dominates(x, y, game: GameDefinition) -> bool:
    """True iff x is weakly better for everyone and strictly better for someone."""
    x, y = _as_profiles(x, game), _as_profiles(y, game)
    if x.shape != y.shape:
        raise GameError("profiles have different lengths")
    ux, uy = payoff(x, game), payoff(y, game)
    return bool(np.all(ux >= uy) and np.any(ux > uy))


def efficiency_matrix(X, Y, game: GameDefinition, rationality: RationalityProfile,
                      tol: float = PROFILE_TOL, weak: bool = False) -> np.ndarray:
    """``E[a, b] = E(X[a], Y[b])`` for stacks of profiles X ``(m, n)``, Y ``(k, n)``."""
    rationality.check(game)
    X = np.atleast_2d(_as_profiles(X, game))
    Y = np.atleast_2d(_as_profiles(Y, game))
    score = np.zeros((len(X), len(Y)), dtype=np.int64)

    nash = rationality.nash_players
    if nash:
        total_y = Y.sum(axis=1)
        for i in nash:
            others = (total_y - Y[:, i])[None, :]
            u_dev = deviation_payoff(X[:, i][:, None], others, game)
            u_own = deviation_payoff(Y[:, i], total_y - Y[:, i], game)[None, :]
            moved = np.abs(X[:, i][:, None] - Y[:, i][None, :]) > tol
            better = u_dev >= u_own if weak else u_dev > u_own
            score += (moved & better).astype(np.int64)

    n_pareto = len(rationality.pareto_players)
    if n_pareto:
        dom = _pareto_matrix(payoff(X, game, validate=False), payoff(Y, game, validate=False))
        score += n_pareto * dom.astype(np.int64)
    return score


def relative_efficiency(x, y, game: GameDefinition, rationality: RationalityProfile,
                        tol: float = PROFILE_TOL, weak: bool = False) -> int:
    """Relative efficiency E(x, y), an integer in [0, n]."""
    x, y = _as_profiles(x, game), _as_profiles(y, game)
    if x.shape != (game.n,) or y.shape != (game.n,):
        raise GameError("relative_efficiency takes single profiles")
    return int(efficiency_matrix(x, y, game, rationality, tol, weak)[0, 0])


def np_dominates(x, y, game: GameDefinition, rationality: RationalityProfile,
                 tol: float = PROFILE_TOL, weak: bool = False) -> bool:
    return relative_efficiency(y, x, game, rationality, tol, weak) < relative_efficiency(
        x, y, game, rationality, tol, weak)


def domination_matrix(X, game: GameDefinition, rationality: RationalityProfile,
                      tol: float = PROFILE_TOL, weak: bool = False) -> np.ndarray:
    """``D[a, b]`` is True iff ``X[a]`` N-P-dominates ``X[b]``."""
    E = efficiency_matrix(X, X, game, rationality, tol, weak)
    return E.T < E


def dedupe(profiles, tol: float = PROFILE_TOL) -> np.ndarray:
    """Drop profiles within ``tol`` (max-coordinate) of an earlier one; order kept."""
    P = np.atleast_2d(np.asarray(profiles, dtype=float))
    keep = []
    for a, row in enumerate(P):
        if not any(np.max(np.abs(P[b] - row)) <= tol for b in keep):
            keep.append(a)
    return P[keep]


def nondominated_set(profiles: Sequence, game: GameDefinition,
                     rationality: RationalityProfile, tol: float = PROFILE_TOL,
                     weak: bool = False) -> np.ndarray:
    """Members not N-P-dominated by any other member, duplicates collapsed."""
    P = np.asarray(profiles, dtype=float)
    if P.size == 0:
        raise GameError("nondominated_set needs at least one profile")
    P = dedupe(P, tol)
    D = domination_matrix(P, game, rationality, tol, weak)
    return P[~D.any(axis=0)]
