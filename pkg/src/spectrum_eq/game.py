"""Cournot reformulation of simultaneous open spectrum access.

Each radio i picks the number of channels ``c_i`` to occupy. The number of
non-interfered symbols per channel falls linearly with total occupancy ``C``
and a radio pays ``K`` per accessed channel, so

    u_i(c) = P(C) * c_i - K * c_i,   P(C) = max(W - C, 0).

Profiles are plain numpy arrays (or anything ``np.asarray`` accepts); every
function here is vectorised over leading axes so populations and whole
enumeration grids go through the same arithmetic as single profiles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

CONTINUOUS = "continuous"
DISCRETE = "discrete"


class GameError(ValueError):
    """Invalid game parameters or profile."""


class UnsupportedGameError(GameError):
    """Operation not defined for this kind of game (continuous vs discrete)."""


@dataclass(frozen=True)
class ProfileViolation:
    index: int
    value: float
    constraint: str

    def __str__(self):
        return f"c_{self.index + 1}={self.value!r} violates {self.constraint}"


class InvalidProfileError(GameError):
    def __init__(self, violation: ProfileViolation):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class GameDefinition:
    """n radios sharing ``w`` channels at per-channel cost ``k``.

    ``kind`` is ``"continuous"`` (actions in [0, w]) or ``"discrete"``
    (actions in {0, 1, ..., floor(w)}).
    """

    n: int
    w: float = 10.0
    k: float = 1.0
    kind: str = CONTINUOUS

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise GameError(f"player count must be an integer >= 1, got {self.n!r}")
        if not self.w > 0:
            raise GameError(f"channel count W must be > 0, got {self.w!r}")
        if not 0 <= self.k <= self.w:
            raise GameError(f"access cost K must lie in [0, W={self.w}], got {self.k!r}")
        if self.kind not in (CONTINUOUS, DISCRETE):
            raise GameError(f"kind must be 'continuous' or 'discrete', got {self.kind!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def discrete(self) -> bool:
        return self.kind == DISCRETE

    @property
    def upper(self) -> float:
        return float(math.floor(self.w)) if self.discrete else float(self.w)

    def actions(self) -> np.ndarray:
        """Action set of one player; discrete games only."""
        if not self.discrete:
            raise UnsupportedGameError("continuous games have no finite action set")
        return np.arange(int(self.upper) + 1, dtype=float)


def demand(total, w):
    """Non-interfered symbols per channel for total occupancy ``total``."""
    total = np.asarray(total, dtype=float)
    if np.any(total < 0):
        raise GameError("total accessed channels must be non-negative")
    out = np.maximum(w - total, 0.0)
    return out if out.ndim else float(out)


def _payoff_array(c: np.ndarray, game: GameDefinition) -> np.ndarray:
    # shared by every payoff path so that ties compare bit-for-bit
    price = np.maximum(game.w - c.sum(axis=-1, keepdims=True), 0.0)
    return price * c - game.k * c


def deviation_payoff(own, others_total, game: GameDefinition):
    """Payoff of playing ``own`` when the other players occupy ``others_total``.

    Matches :func:`payoff` exactly on integer-valued profiles; on real-valued
    ones the two may differ in the last ulp because the total is summed in a
    different order.
    """
    own = np.asarray(own, dtype=float)
    price = np.maximum(game.w - (others_total + own), 0.0)
    return price * own - game.k * own


def payoff(profile, game: GameDefinition, validate: bool = True) -> np.ndarray:
    """Payoff vector(s) for one profile or an ``(m, n)`` stack of profiles."""
    c = np.asarray(profile, dtype=float)
    if c.shape[-1:] != (game.n,):
        raise GameError(f"profile must have {game.n} entries, got shape {c.shape}")
    if validate:
        for row in c.reshape(-1, game.n):
            check_profile(row, game)
    return _payoff_array(c, game)


def validate_profile(profile, game: GameDefinition) -> Optional[ProfileViolation]:
    """Return ``None`` for a valid profile, else the first violation found."""
    c = np.asarray(profile, dtype=float).ravel()
    if c.size != game.n:
        return ProfileViolation(-1, float(c.size), f"length == {game.n}")
    for i, v in enumerate(c):
        if not np.isfinite(v):
            return ProfileViolation(i, float(v), "finite value")
        if v < 0:
            return ProfileViolation(i, float(v), "lower bound 0")
        if v > game.upper:
            return ProfileViolation(i, float(v), f"upper bound {game.upper:g}")
        if game.discrete and v != round(v):
            return ProfileViolation(i, float(v), "integer action")
    return None


def check_profile(profile, game: GameDefinition) -> None:
    violation = validate_profile(profile, game)
    if violation is not None:
        raise InvalidProfileError(violation)


def closed_form_nash(game: GameDefinition) -> np.ndarray:
    """Symmetric interior equilibrium (W - K) / (n + 1) of the continuous game."""
    if game.discrete:
        raise UnsupportedGameError(
            "closed form applies to continuous games; use the enumeration oracle"
        )
    return np.full(game.n, (game.w - game.k) / (game.n + 1))
