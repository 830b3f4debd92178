"""Nash, Pareto and joint Nash-Pareto equilibria of Cournot spectrum-access games."""
from .game import GameDefinition, closed_form_nash, demand, payoff, validate_profile
from .oracle import EquilibriumSet, enumerate_profiles, exact_front, exact_nash
from .relations import (RationalityProfile, all_nash, all_pareto, np_dominates,
                        nondominated_set, pareto_dominates, relative_efficiency)
from .solver import SolverParams, evolve

__all__ = [
    "GameDefinition", "closed_form_nash", "demand", "payoff", "validate_profile",
    "EquilibriumSet", "enumerate_profiles", "exact_front", "exact_nash",
    "RationalityProfile", "all_nash", "all_pareto", "np_dominates", "nondominated_set",
    "pareto_dominates", "relative_efficiency", "SolverParams", "evolve",
]
