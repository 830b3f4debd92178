"""Distance of the continuous 2-player Pareto front from C = 4.5 as the population grows.

    python3 scripts/pareto_scaling.py --pops 100 200 400 --seeds 5
"""
import argparse

import numpy as np

from spectrum_eq import GameDefinition, SolverParams, all_pareto, evolve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pops", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--generations", type=int, default=100)
    args = ap.parse_args()

    game = GameDefinition(2, 10, 1)
    print("pop   worst|C-4.5|  mean|C-4.5|  min payoff sum  share within 0.05")
    for pop in args.pops:
        gaps, sums = [], []
        for seed in range(args.seeds):
            params = SolverParams(population_size=pop, max_generations=args.generations, seed=seed)
            front, _ = evolve(game, all_pareto(2), params)
            gaps.append(np.abs(front.profiles.sum(axis=1) - 4.5))
            sums.append(front.payoffs.sum(axis=1))
        g, s = np.concatenate(gaps), np.concatenate(sums)
        print(f"{pop:<5d} {g.max():12.3f} {g.mean():12.3f} {s.min():15.3f} {np.mean(g <= 0.05):18.2f}")


if __name__ == "__main__":
    main()
