"""Time the solver and report its certified gap across support sizes.

Usage: python3 scripts/solver_benchmark.py [--sizes 4 16 64] [--reps 5] [--seed 0]
"""

import argparse
import time

import numpy as np

from riskopt.contracts import ContractClass
from riskopt.fixtures import dyadic_probs
from riskopt.dist import DiscreteDistribution
from riskopt.measures import ES, Mean, Mixture
from riskopt.pareto import ParetoProblem, solve

MEASURES = [Mean(), ES(0.5), ES(0.9), Mixture(0.5, 0.5), Mixture(0.75, 1.5)]
FAMILIES = [ContractClass("I0"), ContractClass("I1"), ContractClass("I2"), ContractClass("I1d", 1.0)]


def random_support(rng: np.random.Generator, n: int) -> DiscreteDistribution:
    values = np.sort(rng.choice(np.arange(4 * n + 1) * 0.25, size=n, replace=False))
    return DiscreteDistribution.from_atoms(zip(values, dyadic_probs(rng, n, total=16 * n) / n))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 16, 64])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'family':<8} {'mean s':>8} {'max s':>8} {'max gap':>9} {'iters':>6}")
    for n in args.sizes:
        for fam in FAMILIES:
            times, gaps, iters = [], [], []
            for _ in range(args.reps):
                X = random_support(rng, n)
                rho, psi = (MEASURES[i] for i in rng.integers(len(MEASURES), size=2))
                t0 = time.perf_counter()
                res = solve(ParetoProblem(X, rho, psi, fam), seed=args.seed)
                times.append(time.perf_counter() - t0)
                gaps.append(res.certified_gap)
                iters.append(res.iterations)
            print(f"{n:>3} {str(fam):<8} {np.mean(times):8.3f} {max(times):8.3f} {max(gaps):9.1e} {max(iters):>6}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
