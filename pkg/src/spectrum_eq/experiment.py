"""Scenario configs, equilibrium reports and the runner tying oracle and solver together."""
from __future__ import annotations

import copy
import csv
import json
import time
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import List, Optional

import numpy as np

from .game import CONTINUOUS, DISCRETE, GameDefinition, GameError, payoff
from .oracle import DEFAULT_CAP, exact_front
from .relations import RationalityProfile
from .solver import SolverParams, evolve

MODES = ("evolve", "oracle", "both")
SPACES = ("strategy", "payoff")
SOURCES = ("oracle", "evolved")


class ConfigError(ValueError):
    """Malformed or inconsistent scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    game: GameDefinition
    rationality: RationalityProfile
    solver: SolverParams = field(default_factory=SolverParams)
    mode: str = "evolve"
    output: str = "results"
    plot: tuple = SPACES
    cap: int = DEFAULT_CAP

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "game": {"n": self.game.n, "w": self.game.w, "k": self.game.k, "kind": self.game.kind},
            "rationality": str(self.rationality),
            "solver": self.solver.to_dict(),
            "mode": self.mode,
            "output": self.output,
            "plot": list(self.plot),
            "cap": self.cap,
        }


_GAME_KEYS = {"n", "w", "k", "kind"}
_SOLVER_KEYS = set(SolverParams.__dataclass_fields__)
_TOP_KEYS = {"name", "game", "rationality", "solver", "mode", "output", "plot", "cap"}


def _unknown(section, data, allowed):
    extra = sorted(set(data) - allowed)
    if extra:
        where = f"{section}." if section else ""
        raise ConfigError(f"unknown field(s): {', '.join(where + k for k in extra)}")


def config_from_dict(data: dict) -> ScenarioConfig:
    """Validate a raw config mapping; errors name the offending field."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    _unknown("", data, _TOP_KEYS)
    g = data.get("game")
    if not isinstance(g, dict):
        raise ConfigError("field 'game' is required and must be an object")
    _unknown("game", g, _GAME_KEYS)
    if "n" not in g:
        raise ConfigError("field 'game.n' is required")
    try:
        game = GameDefinition(n=g["n"], w=float(g.get("w", 10.0)), k=float(g.get("k", 1.0)),
                              kind=g.get("kind", CONTINUOUS))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'game': {exc}") from None

    try:
        rationality = RationalityProfile.parse(data.get("rationality", ",".join("N" * game.n)))
        rationality.check(game)
    except GameError as exc:
        raise ConfigError(f"field 'rationality': {exc}") from None

    s = data.get("solver") or {}
    if not isinstance(s, dict):
        raise ConfigError("field 'solver' must be an object")
    _unknown("solver", s, _SOLVER_KEYS)
    try:
        solver = SolverParams(**s)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'solver': {exc}") from None

    mode = data.get("mode", "evolve")
    if mode not in MODES:
        raise ConfigError(f"field 'mode': must be one of {MODES}, got {mode!r}")
    if mode in ("oracle", "both") and not game.discrete:
        raise ConfigError(f"field 'mode': {mode!r} needs a discrete game (game.kind = {DISCRETE!r})")

    plot = data.get("plot", True)
    if plot is True:
        plot = SPACES
    elif plot is False or plot is None:
        plot = ()
    elif isinstance(plot, str):
        plot = (plot,)
    plot = tuple(plot)
    if any(p not in SPACES for p in plot):
        raise ConfigError(f"field 'plot': spaces must be among {SPACES}, got {list(plot)}")

    name = str(data.get("name", "scenario"))
    return ScenarioConfig(
        name=name,
        game=game,
        rationality=rationality,
        solver=solver,
        mode=mode,
        output=str(data.get("output", f"results/{name}")),
        plot=plot,
        cap=int(data.get("cap", DEFAULT_CAP)),
    )


def parse_override_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(data: dict, overrides: dict) -> dict:
    """Set dotted keys (``game.w``, ``solver.seed``) on a copy of ``data``."""
    data = copy.deepcopy(data)
    for dotted, value in overrides.items():
        parts = dotted.lower().split(".")
        node = data
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override {dotted!r}: '{part}' is not an object")
        node[parts[-1]] = value
    return data


def bundled_scenarios() -> List[str]:
    root = resources.files("spectrum_eq") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_config_text(path) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    if str(path) in bundled_scenarios():
        return (resources.files("spectrum_eq") / "scenarios" / f"{path}.json").read_text()
    raise ConfigError(f"config file not found: {path}")


def load_config(path, overrides: Optional[dict] = None) -> ScenarioConfig:
    """Load a JSON config (file path or bundled scenario name) with dotted overrides."""
    text = read_config_text(path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return config_from_dict(apply_overrides(raw, overrides or {}))


@dataclass(frozen=True)
class ReportRow:
    source: str
    rank: int
    profile: tuple
    payoffs: tuple


@dataclass
class EquilibriumReport:
    scenario: dict
    rows: List[ReportRow]
    metadata: dict = field(default_factory=dict)

    @property
    def game(self) -> GameDefinition:
        g = self.scenario["game"]
        return GameDefinition(n=g["n"], w=g["w"], k=g["k"], kind=g["kind"])

    def profiles(self, source: Optional[str] = None) -> np.ndarray:
        rows = [r.profile for r in self.rows if source is None or r.source == source]
        return np.array(rows, dtype=float).reshape(-1, self.game.n)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "rows": [
                {"source": r.source, "rank": r.rank, "profile": list(r.profile), "payoffs": list(r.payoffs)}
                for r in self.rows
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EquilibriumReport":
        rows = [ReportRow(r["source"], int(r["rank"]), tuple(map(float, r["profile"])),
                          tuple(map(float, r["payoffs"]))) for r in data["rows"]]
        return cls(data["scenario"], rows, data.get("metadata", {}))

    @classmethod
    def load(cls, path) -> "EquilibriumReport":
        try:
            return cls.from_json(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read report {path}: {exc}") from None


def _num(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(report: EquilibriumReport, path) -> None:
    n = report.game.n
    header = ["source", "rank"] + [f"c_{i + 1}" for i in range(n)] + [f"u_{i + 1}" for i in range(n)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in report.rows:
            w.writerow([r.source, r.rank] + [_num(v) for v in r.profile] + [_num(v) for v in r.payoffs])


def read_csv_rows(path) -> List[ReportRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        n = (len(header) - 2) // 2
        return [ReportRow(rec[0], int(rec[1]), tuple(float(v) for v in rec[2:2 + n]),
                          tuple(float(v) for v in rec[2 + n:])) for rec in reader]


def _rows(eq_set, source) -> List[ReportRow]:
    return [ReportRow(source, 0, tuple(float(v) for v in p), tuple(float(v) for v in u))
            for p, u in zip(eq_set.profiles, eq_set.payoffs)]


@dataclass
class FrontComparison:
    matched: list
    false_positives: list
    missed: list
    tolerance: float

    def to_json(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "matched": [[list(a), list(b)] for a, b in self.matched],
            "false_positives": [list(p) for p in self.false_positives],
            "missed": [list(p) for p in self.missed],
        }


def default_tolerance(game: GameDefinition) -> float:
    return 0.0 if game.discrete else 0.05


def compare_fronts(evolved: EquilibriumReport, oracle: EquilibriumReport,
                   tolerance: Optional[float] = None) -> FrontComparison:
    """Match two fronts under max-coordinate distance <= ``tolerance``.

    Each evolved point is paired with its nearest oracle point in range;
    evolved points with no partner are false positives and oracle points no
    evolved point reaches are missed equilibria.
    """
    game = evolved.game
    if game != oracle.game:
        raise GameError(f"reports describe different games: {game} vs {oracle.game}")
    tol = default_tolerance(game) if tolerance is None else float(tolerance)
    A, B = evolved.profiles(), oracle.profiles()
    if len(A) and len(B):
        dist = np.abs(A[:, None, :] - B[None, :, :]).max(axis=-1)
    else:
        dist = np.full((len(A), len(B)), np.inf)
    close = dist <= tol
    matched = []
    false_positives = []
    for a in range(len(A)):
        if close[a].any():
            b = int(np.argmin(np.where(close[a], dist[a], np.inf)))
            matched.append((tuple(A[a]), tuple(B[b])))
        else:
            false_positives.append(tuple(A[a]))
    missed = [tuple(B[b]) for b in range(len(B)) if not close[:, b].any()]
    return FrontComparison(matched, false_positives, missed, tol)


def _sorted_rows(rows):
    return sorted(rows, key=lambda r: (SOURCES.index(r.source), r.profile))


def run_scenario(config: ScenarioConfig, write: bool = True) -> EquilibriumReport:
    """Run the configured mode(s) and (optionally) write report files and plots."""
    start = time.perf_counter()
    rows = []
    meta = {"seed": None, "generations": 0}
    oracle_rows = evolved_rows = None
    if config.mode in ("oracle", "both"):
        oracle_rows = _rows(exact_front(config.game, config.rationality, cap=config.cap), "oracle")
        rows += oracle_rows
    if config.mode in ("evolve", "both"):
        front, history = evolve(config.game, config.rationality, config.solver)
        evolved_rows = _rows(front, "evolved")
        rows += evolved_rows
        meta.update(seed=config.solver.seed, generations=len(history))
    meta["wall_time"] = time.perf_counter() - start
    report = EquilibriumReport(config.to_dict(), _sorted_rows(rows), meta)

    if write:
        out = Path(config.output)
        out.mkdir(parents=True, exist_ok=True)
        write_csv(report, out / "report.csv")
        (out / "report.json").write_text(json.dumps(report.to_json(), indent=2) + "\n")
        if oracle_rows is not None and evolved_rows is not None:
            diff = compare_fronts(EquilibriumReport(report.scenario, evolved_rows),
                                  EquilibriumReport(report.scenario, oracle_rows))
            (out / "diff.json").write_text(json.dumps(diff.to_json(), indent=2) + "\n")
        if config.plot:
            from .plotting import emit_plot

            for space in config.plot:
                emit_plot(report, space, out / f"{space}.svg")
    return report


def with_seed(config: ScenarioConfig, seed: int, output: str) -> ScenarioConfig:
    return replace(config, solver=replace(config.solver, seed=seed), output=output)


def check_report_payoffs(report: EquilibriumReport) -> bool:
    """True iff every row's payoffs recompute exactly from its profile."""
    game = report.game
    return all(tuple(payoff(r.profile, game)) == r.payoffs for r in report.rows)
