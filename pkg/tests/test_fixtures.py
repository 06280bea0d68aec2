import numpy as np
import pytest

from riskopt.contracts import ContractClass, member_of
from riskopt.fixtures import (
    DENOM,
    GRID,
    dyadic_probs,
    ordered_measures,
    random_distribution,
    random_i2_violation,
    random_level_distribution,
    random_problem,
)


def test_dyadic_probs(rng):
    for n in range(1, 9):
        p = dyadic_probs(rng, n)
        assert p.sum() == 1.0 and np.all(p > 0)
        assert np.all(p * DENOM == np.round(p * DENOM))


def test_random_distribution_on_grid(rng):
    for _ in range(100):
        X = random_distribution(rng)
        assert 2 <= X.size <= 8 and X.is_nonnegative()
        assert set(X.values) <= set(GRID.tolist())


@pytest.mark.parametrize("d, p", [(1.0, 0.5), (0.0, 0.25), (2.5, 0.9375), (4.75, 0.0625)])
def test_level_distribution(rng, d, p):
    for _ in range(50):
        X = random_level_distribution(rng, d, p)
        assert sum(q for v, q in X.atoms if v <= d) == p


def test_level_must_be_dyadic(rng):
    with pytest.raises(ValueError):
        random_level_distribution(rng, 1.0, 0.3)


def test_i2_violation(rng):
    for _ in range(50):
        f, a, b = random_i2_violation(rng)
        assert member_of(f, ContractClass("I1"), x_max=b)
        assert f(b) - f(a) > b - a


def test_ordered_chain(rng):
    for _ in range(50):
        X = random_distribution(rng)
        vals = [m.evaluate(X) for m in ordered_measures(rng)]
        assert all(u <= v + 1e-12 for u, v in zip(vals, vals[1:]))


def test_random_problem(rng):
    for _ in range(50):
        prob = random_problem(rng)
        assert 1 <= prob.X.size <= 4
        assert prob.rho.convex and prob.psi.convex
        if prob.family.tag == "I1d":
            assert prob.rho.evaluate(prob.X) <= prob.psi.evaluate(prob.X) + 1e-12
