"""Random fixtures on exact grids.

Loss values live on a 0.25 grid in [0, 5] and probabilities are multiples of
1/16, so tail masses and levels are exactly representable in binary floating
point.  Contracts have knots on the same value grid.
"""

from __future__ import annotations

import numpy as np

from .contracts import CededLossFunction, ContractClass
from .dist import DiscreteDistribution
from .measures import ES, Mean, Mixture, RiskMeasure

STEP = 0.25
X_MAX = 5.0
DENOM = 16
GRID = np.arange(int(X_MAX / STEP) + 1) * STEP


def dyadic_probs(rng: np.random.Generator, n: int, total: int = DENOM) -> np.ndarray:
    """``n`` positive probabilities in multiples of 1/16 summing to ``total/16``."""
    counts = 1 + rng.multinomial(total - n, np.full(n, 1.0 / n))
    return counts / DENOM


def random_distribution(rng: np.random.Generator, n_min: int = 2, n_max: int = 8,
                        lo: float = 0.0, hi: float = X_MAX) -> DiscreteDistribution:
    n = int(rng.integers(n_min, n_max + 1))
    pool = GRID[(GRID >= lo) & (GRID <= hi)]
    values = np.sort(rng.choice(pool, size=n, replace=False))
    return DiscreteDistribution.from_atoms(zip(values, dyadic_probs(rng, n)))


def random_level_distribution(rng: np.random.Generator, d: float, p: float, n_max: int = 8) -> DiscreteDistribution:
    """A nonnegative ``X`` with ``P(X <= d) = p`` (``p`` a multiple of 1/16)."""
    k = round(p * DENOM)
    if abs(k - p * DENOM) > 1e-12:
        raise ValueError(f"level {p} is not a multiple of 1/{DENOM}")
    below, above = GRID[GRID <= d], GRID[GRID > d]
    atoms = []
    if k > 0:
        n_b = int(rng.integers(1, min(k, len(below), n_max // 2) + 1))
        atoms += zip(rng.choice(below, n_b, replace=False), dyadic_probs(rng, n_b, k))
    if k < DENOM:
        n_a = int(rng.integers(1, min(DENOM - k, len(above), n_max // 2) + 1))
        atoms += zip(rng.choice(above, n_a, replace=False), dyadic_probs(rng, n_a, DENOM - k))
    return DiscreteDistribution.from_atoms(atoms)


def _knot_xs(rng: np.random.Generator, n_knots: int, extra: tuple[float, ...] = ()) -> np.ndarray:
    inner = rng.choice(GRID[1:], size=n_knots, replace=False)
    return np.unique(np.concatenate([[0.0], inner, list(extra)]))


def _on_grid(rng: np.random.Generator, lo: float, hi: float) -> float:
    k_lo, k_hi = int(np.ceil(lo / STEP - 1e-9)), int(np.floor(hi / STEP + 1e-9))
    return float(rng.integers(k_lo, k_hi + 1)) * STEP if k_hi >= k_lo else lo


def random_contract(rng: np.random.Generator, family: ContractClass, n_knots: int = 4) -> CededLossFunction:
    """A contract of the given class with knots on the value grid."""
    tag, d = family.tag, family.d
    xs = _knot_xs(rng, n_knots, (d,) if tag == "I1d" else ())
    ys = [0.0]
    for x0, x1 in zip(xs, xs[1:]):
        y0 = ys[-1]
        if tag == "I0":
            ys.append(_on_grid(rng, 0.0, x1))
        elif tag == "I1":
            ys.append(_on_grid(rng, y0, x1))
        elif tag == "I2":
            ys.append(_on_grid(rng, y0, y0 + (x1 - x0)))
        else:
            ys.append(_on_grid(rng, y0, max(x1 - d, 0.0)) if x1 > d else 0.0)
    slope = 0.0 if tag == "I0" else float(rng.choice([0.0, 0.5, 1.0]))
    return CededLossFunction(tuple(zip(map(float, xs), ys)), slope)


def random_i2_violation(rng: np.random.Generator) -> tuple[CededLossFunction, float, float]:
    """An I1 contract with one segment of slope above one, and that segment's ends."""
    a = float(rng.choice(GRID[2:16]))
    w = float(rng.choice([0.25, 0.5, 1.0]))
    steep = float(rng.choice([1.5, 2.0, 3.0]))
    rise = min(steep * w, a + w)
    knots = ((0.0, 0.0), (a, 0.0), (a + w, rise))
    return CededLossFunction(knots, 0.0), a, a + w


# -- solver problems ------------------------------------------------------


def ordered_measures(rng: np.random.Generator) -> list[RiskMeasure]:
    """Coherent measures in increasing order: Mean <= mixture <= ES_p <= ES_q."""
    p = float(rng.choice([0.25, 0.5, 0.75]))
    q = float(rng.choice([x for x in (0.5, 0.75, 0.9) if x >= p]))
    lam = float(rng.choice([0.25, 0.5, 0.75]))
    return [Mean(), Mixture(p, lam), ES(p), ES(q)]


def random_problem(rng: np.random.Generator, n_max: int = 4):
    """A small solver problem whose continuous optimum lies on the oracle grid.

    ``rho`` and ``psi`` are drawn from one increasing chain of coherent
    distortion measures, so full or zero cession is optimal.  I1d appears only
    when the insured's measure is the smaller one, where zero cession wins.
    """
    from .pareto import ParetoProblem

    X = random_distribution(rng, 1, n_max)
    chain = ordered_measures(rng)
    i, j = sorted(rng.choice(len(chain), size=2))
    rho, psi = (chain[i], chain[j]) if rng.random() < 0.5 else (chain[j], chain[i])
    tags = ["I0", "I1", "I2"] + (["I1d"] if chain.index(rho) <= chain.index(psi) else [])
    tag = str(rng.choice(tags))
    family = ContractClass(tag, float(rng.choice([0.5, 1.0, 2.0])) if tag == "I1d" else 0.0)
    return ParetoProblem(X, rho, psi, family)
