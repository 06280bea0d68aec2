import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize

from riskopt import dist as D
from riskopt.contracts import (
    CededLossFunction,
    ContractClass,
    deductible_coinsurance,
    deductible_limit,
    direct_deductible,
    identity,
    member_of,
    zero,
)
from riskopt.dist import DiscreteDistribution
from riskopt.errors import EmptyMenu, NonConvexMeasure, NotNonnegativeLoss, PrecedenceNotVerified, TooLarge
from riskopt.fixtures import random_contract, random_distribution, random_level_distribution
from riskopt.measures import ES, Distortion, DistortionFunction, LeftES, Mean, Mixture, VaR
from riskopt.pareto import (
    ExpectedValue,
    ParetoProblem,
    PsiBased,
    SolveResult,
    argmin_set,
    brute_force_oracle,
    check_prop1_equivalence,
    check_prop3_inclusion,
    contract_grid,
    feasible_mask,
    is_pareto_optimal,
    layer_allocation,
    lp_lower_bound,
    menu,
    objective,
    objective_values,
    objective_with_premium,
    parties,
    premium_from_dict,
    project,
    solve,
)

from conftest import distributions

I0, I1, I2 = ContractClass("I0"), ContractClass("I1"), ContractClass("I2")
I1_1 = ContractClass("I1d", 1.0)
COHERENT = [Mean(), ES(0.25), ES(0.5), ES(0.9), Mixture(0.5, 0.3), Mixture(0.8, 0.9),
            Distortion(DistortionFunction(((0.0, 0.0), (0.2, 0.5), (0.6, 0.9), (1.0, 1.0))))]
CONVEX = COHERENT + [Mixture(0.5, 1.5), Mixture(0.3, 2.0)]


def _random_pair(rng, pool=CONVEX):
    return pool[int(rng.integers(len(pool)))], pool[int(rng.integers(len(pool)))]


# -- objective ------------------------------------------------------------


def test_objective_examples(fixture_x):
    es = ES(0.5)
    assert objective(ParetoProblem(fixture_x, es, es), identity()) == pytest.approx(2.5, abs=1e-12)
    assert objective(ParetoProblem(fixture_x, es, es, I1_1), deductible_limit(1, 1)) == pytest.approx(2.5, abs=1e-12)


@given(distributions(nonnegative=True), st.integers(0, 2**32 - 1))
def test_mean_objective_constant(X, seed):
    f = random_contract(np.random.default_rng(seed), I0)
    assert objective(ParetoProblem(X, Mean(), Mean()), f) == pytest.approx(D.mean(X), abs=1e-12)


def test_objective_values_match_scalar(rng):
    for _ in range(30):
        X = random_distribution(rng)
        rho, psi = _random_pair(rng, CONVEX + [VaR(0.5), LeftES(0.3)])
        f = random_contract(rng, I0)
        prob = ParetoProblem(X, rho, psi)
        g = f(np.array(X.values))
        assert objective_values(prob, g)[0] == pytest.approx(objective(prob, f), abs=1e-12)


def test_problem_rejects_negative_loss():
    with pytest.raises(NotNonnegativeLoss):
        ParetoProblem(DiscreteDistribution.from_atoms([(-1, 0.5), (1, 0.5)]), Mean(), Mean())


def test_premiums():
    assert premium_from_dict(None) == ExpectedValue(0.0)
    assert premium_from_dict({"kind": "psi"}) == PsiBased()
    assert premium_from_dict({"kind": "expected_value", "loading": 0.2}) == ExpectedValue(0.2)
    with pytest.raises(ValueError):
        ExpectedValue(-0.1)
    with pytest.raises(ValueError):
        premium_from_dict({"kind": "other"})


def test_psi_premium_reduces_to_objective(rng):
    for _ in range(20):
        X = random_distribution(rng)
        rho, psi = _random_pair(rng)
        f = random_contract(rng, I1)
        prob = ParetoProblem(X, rho, psi)
        insured, insurer = parties(prob, f, PsiBased())
        assert insurer == pytest.approx(0.0, abs=1e-12)
        assert insured == pytest.approx(objective(prob, f), abs=1e-12)
        for pr in (ExpectedValue(0.0), ExpectedValue(0.3)):
            assert objective_with_premium(prob, f, pr) == pytest.approx(objective(prob, f), abs=1e-12)


# -- characterization invariants -----------------------------------------


def test_comonotonic_additivity_of_i2_splits(rng):
    for _ in range(100):
        X = random_distribution(rng)
        rho = COHERENT[int(rng.integers(len(COHERENT)))]
        f = random_contract(rng, I2)
        assert abs(objective(ParetoProblem(X, rho, rho), f) - rho.evaluate(X)) <= 1e-10


def test_es_additivity_on_level_class(rng):
    for _ in range(100):
        p = float(rng.integers(1, 16)) / 16
        X = random_level_distribution(rng, 1.0, p)
        f = random_contract(rng, I1_1)
        assert abs(objective(ParetoProblem(X, ES(p), ES(p), I1_1), f) - D.es(X, p)) <= 1e-10


def test_subadditivity_floor(rng):
    for _ in range(100):
        X = random_distribution(rng)
        rho = COHERENT[int(rng.integers(len(COHERENT)))]
        f = random_contract(rng, I0)
        assert objective(ParetoProblem(X, rho, rho), f) >= rho.evaluate(X) - 1e-10


# -- projections ----------------------------------------------------------


def _reference_projection(y, upper, monotone):
    cons = [{"type": "ineq", "fun": lambda g: np.diff(g)}] if monotone else []
    res = minimize(lambda g: 0.5 * np.sum((g - y) ** 2), np.clip(y, 0, upper), jac=lambda g: g - y,
                   bounds=list(zip(np.zeros_like(upper), upper)), constraints=cons, method="SLSQP",
                   options={"ftol": 1e-14, "maxiter": 500})
    return res.x


@pytest.mark.parametrize("family", [I0, I1, I1_1])
def test_projection_matches_qp(family, rng):
    for _ in range(25):
        X = random_distribution(rng, 2, 8)
        prob = ParetoProblem(X, Mean(), Mean(), family)
        y = rng.normal(scale=3.0, size=X.size) + np.array(X.values) / 2
        g = project(prob, y)
        assert feasible_mask(prob, g)[0]
        ref = _reference_projection(y, prob.upper(), family.tag != "I0")
        assert np.sum((g - y) ** 2) <= np.sum((ref - y) ** 2) + 1e-9
        assert np.allclose(g, ref, atol=1e-5)


# -- solver ---------------------------------------------------------------


def test_solve_examples(fixture_x):
    es = ES(0.5)
    prob = ParetoProblem(fixture_x, es, es, I1_1)
    res = solve(prob)
    assert res.optimal_value == pytest.approx(2.5, abs=1e-12)
    assert objective(prob, zero()) == pytest.approx(2.5, abs=1e-12)
    assert objective(prob, direct_deductible(1.0)) == pytest.approx(2.5, abs=1e-12)

    X = DiscreteDistribution.from_atoms([(0, 0.5), (10, 0.5)])
    res = solve(ParetoProblem(X, ES(0.9), Mean(), I2))
    assert res.optimal_value == pytest.approx(5.0, abs=1e-12)
    assert res.minimizer == pytest.approx((0.0, 10.0), abs=1e-9)


@given(distributions(nonnegative=True, max_size=5))
def test_solve_mean_mean(X):
    res = solve(ParetoProblem(X, Mean(), Mean()), iterations=200)
    assert res.optimal_value == pytest.approx(D.mean(X), abs=1e-12)


@pytest.mark.parametrize("m", [VaR(0.5), LeftES(0.5), Mixture(0.5, -0.1),
                               Distortion(DistortionFunction(((0.0, 0.0), (0.5, 0.2), (1.0, 1.0))))])
def test_solve_refuses_nonconvex(m, fixture_x):
    for rho, psi in ((m, Mean()), (Mean(), m)):
        with pytest.raises(NonConvexMeasure):
            solve(ParetoProblem(fixture_x, rho, psi))
    # still evaluable in the objective
    assert math.isfinite(objective(ParetoProblem(fixture_x, m, m), identity()))


def test_solve_refuses_large_support():
    X = DiscreteDistribution.from_atoms((k, 1 / 65) for k in range(65))
    with pytest.raises(TooLarge):
        solve(ParetoProblem(X, Mean(), Mean()))


@pytest.mark.parametrize("family", [I0, I1, I2])
def test_solve_matches_layer_allocation(family, rng):
    for k in range(12):
        X = random_distribution(rng, 1, 12)
        rho, psi = _random_pair(rng)
        prob = ParetoProblem(X, rho, psi, family)
        layer = objective_values(prob, layer_allocation(prob))[0]
        res = solve(prob, layer_start=False, seed=k)
        assert abs(res.optimal_value - layer) <= 1e-9
        assert res.certified_gap <= 1e-9
        assert feasible_mask(prob, res.minimizer, 1e-9)[0]


def test_solve_deductible_family_certified(rng):
    for k in range(12):
        d = float(rng.choice([0.5, 1.0, 2.0]))
        X = random_distribution(rng, 1, 12)
        rho, psi = _random_pair(rng)
        prob = ParetoProblem(X, rho, psi, ContractClass("I1d", d))
        res = solve(prob, layer_start=False, seed=k)
        assert res.certified_gap <= 1e-9
        assert feasible_mask(prob, res.minimizer, 1e-9)[0]


def test_lp_bound_below_every_feasible_point(rng):
    for _ in range(10):
        X = random_distribution(rng, 1, 4)
        rho, psi = _random_pair(rng)
        tag = str(rng.choice(["I0", "I1", "I2", "I1d"]))
        prob = ParetoProblem(X, rho, psi, ContractClass(tag, 1.0 if tag == "I1d" else 0.0))
        bound = lp_lower_bound(prob)
        assert bound <= brute_force_oracle(prob, 8).optimal_value + 1e-9
        G = rng.uniform(size=(200, X.size)) * prob.upper()
        G = G[feasible_mask(prob, G)]
        if len(G):
            assert np.all(objective_values(prob, G) >= bound - 1e-9)


def test_solve_against_oracle_on_random_pairs(rng):
    # off-grid optima: the solver may only beat the grid
    for _ in range(15):
        X = random_distribution(rng, 1, 4)
        rho, psi = _random_pair(rng)
        tag = str(rng.choice(["I0", "I1", "I2", "I1d"]))
        prob = ParetoProblem(X, rho, psi, ContractClass(tag, 1.0 if tag == "I1d" else 0.0))
        res, oracle = solve(prob), brute_force_oracle(prob, 11)
        assert res.optimal_value <= oracle.optimal_value + 1e-9


def test_solve_deterministic(fixture_x):
    prob = ParetoProblem(fixture_x, ES(0.75), Mixture(0.5, 0.5), I1)
    assert solve(prob, seed=3) == solve(prob, seed=3)


def test_solve_result_roundtrip(fixture_x):
    prob = ParetoProblem(fixture_x, ES(0.9), ES(0.5), I1_1)
    res = solve(prob, oracle_steps=6)
    assert res.oracle_value is not None and res.lower_bound is not None
    assert SolveResult.from_dict(res.to_dict()) == res
    f = res.to_contract()
    assert member_of(f, I1_1, x_max=4)
    assert np.allclose(f(np.array(fixture_x.values)), res.minimizer, atol=1e-12)
    assert objective(prob, f) == pytest.approx(res.optimal_value, abs=1e-12)


# -- oracle ---------------------------------------------------------------


def test_oracle_limits(fixture_x):
    prob = ParetoProblem(fixture_x, Mean(), Mean())
    with pytest.raises(TooLarge):
        brute_force_oracle(prob, 22)
    X = DiscreteDistribution.from_atoms((k, 1 / 6) for k in range(6))
    with pytest.raises(TooLarge):
        brute_force_oracle(ParetoProblem(X, Mean(), Mean()), 3)


def test_oracle_ties_break_lexicographically(fixture_x):
    res = brute_force_oracle(ParetoProblem(fixture_x, Mean(), Mean()), 4)
    assert res.optimal_value == pytest.approx(D.mean(fixture_x), abs=1e-12)
    assert res.minimizer == (0.0, 0.0, 0.0)
    res = brute_force_oracle(ParetoProblem(fixture_x, ES(0.5), ES(0.5), I1_1), 11)
    assert res.optimal_value == pytest.approx(2.5, abs=1e-12)
    assert res.minimizer == (0.0, 0.0, 0.0)


def test_oracle_single_atom_scan():
    X = DiscreteDistribution.point(3.0)
    prob = ParetoProblem(X, ES(0.5), Mixture(0.5, 0.5))
    res = brute_force_oracle(prob, 12)
    scan = min(ES(0.5).evaluate(DiscreteDistribution.point(3 - 3 * k / 12))
               + Mixture(0.5, 0.5).evaluate(DiscreteDistribution.point(3 * k / 12)) for k in range(13))
    assert res.optimal_value == pytest.approx(scan, abs=1e-12)


def test_oracle_respects_family(rng):
    for tag in ("I1", "I2", "I1d"):
        fam = ContractClass(tag, 1.0 if tag == "I1d" else 0.0)
        for _ in range(5):
            X = random_distribution(rng, 2, 4)
            prob = ParetoProblem(X, ES(0.9), Mean(), fam)
            assert feasible_mask(prob, brute_force_oracle(prob, 6).minimizer)[0]


# -- Pareto optimality ----------------------------------------------------


def _i1d_grid(X):
    return [f for f in contract_grid(I1_1, X.values, 0.5)]


def test_pareto_examples(fixture_x):
    es = ES(0.5)
    prob = ParetoProblem(fixture_x, es, es, I1_1)
    grid = _i1d_grid(fixture_x)
    assert is_pareto_optimal(prob, direct_deductible(1.0), grid)
    steep = CededLossFunction(((0.0, 0.0), (2.0, 0.0), (3.0, 3.0)), 0.0)
    assert objective(prob, steep) > 2.5 + 1e-9
    for premium in (None, PsiBased(), ExpectedValue(0.2)):
        res = is_pareto_optimal(prob, steep, grid, premium)
        assert not res and res.dominator is not None
        a, b = parties(prob, steep, premium)
        a2, b2 = parties(prob, res.dominator, premium)
        assert a2 <= a + 1e-9 and b2 <= b + 1e-9 and (a2 < a - 1e-9 or b2 < b - 1e-9)
    assert is_pareto_optimal(prob, steep, [steep])


def test_prop1_examples(fixture_x):
    es = ES(0.5)
    prob = ParetoProblem(fixture_x, es, es, I1_1)
    grid = _i1d_grid(fixture_x)
    premiums = [ExpectedValue(0.0), ExpectedValue(0.2), PsiBased()]
    res = check_prop1_equivalence(prob, direct_deductible(1.0), grid, premiums)
    assert res and res.minimizer and res.pareto_psi_premium and res.pareto_all_premiums
    steep = CededLossFunction(((0.0, 0.0), (2.0, 0.0), (3.0, 3.0)), 0.0)
    res = check_prop1_equivalence(prob, steep, grid, premiums)
    assert res and not res.minimizer and not res.pareto_psi_premium and not res.pareto_all_premiums
    assert check_prop1_equivalence(prob, steep, [steep], premiums)


def test_premium_independence(rng):
    for _ in range(8):
        X = random_distribution(rng, 2, 3)
        rho, psi = _random_pair(rng, COHERENT)
        prob = ParetoProblem(X, rho, psi, I1)
        grid = contract_grid(I1, X.values, 0.5)
        base = argmin_set(prob, grid)
        for pr in (ExpectedValue(0.0), ExpectedValue(0.2), PsiBased()):
            assert argmin_set(prob, grid, with_premium=True, premium=pr) == base


# -- grids and menus ------------------------------------------------------


def test_contract_grid_members():
    for fam in (I0, I1, I2, I1_1):
        grid = contract_grid(fam, [1.0, 2.0, 3.0], 0.5)
        assert all(member_of(f, fam, 4.0) for f in grid)
        assert len(set(grid)) == len(grid)
    assert identity() in contract_grid(I2, [1.0], 1.0)
    assert identity() not in contract_grid(I1_1, [1.0], 1.0)
    # I1 on knots {1, 2} with unit steps: nondecreasing y1 <= 1, y2 <= 2, plus the identity
    assert len(contract_grid(I1, [1.0, 2.0], 1.0)) == 5 + 1


def test_menu_examples(rng):
    grid = _i1d_grid(DiscreteDistribution.from_atoms([(0.5, 0.5), (2, 0.25), (3, 0.25)]))
    Xs = [random_level_distribution(rng, 1.0, 0.5) for _ in range(4)]
    pool = [f for f in grid if member_of(f, I1_1, max(X.values[-1] for X in Xs) + 1)]
    assert menu(Xs, ES(0.5), I1_1, grid) == pool

    grid0 = contract_grid(I0, [1.0, 2.0], 0.5)
    assert menu([random_distribution(rng) for _ in range(3)], Mean(), I0, grid0) == grid0

    off = DiscreteDistribution.from_atoms([(0.5, 0.25), (2, 0.5), (3, 0.25)])
    assert len(menu(Xs + [off], ES(0.5), I1_1, grid)) < len(pool)


def test_empty_menu():
    X1 = DiscreteDistribution.from_atoms([(1, 0.5), (2, 0.5)])
    X2 = DiscreteDistribution.from_atoms([(2, 0.5), (3, 0.5)])
    hump = CededLossFunction(((0.0, 0.0), (1.0, 1.0), (2.0, 0.0)), 0.0)
    bent = CededLossFunction(((0.0, 0.0), (2.0, 1.0), (3.0, 0.0)), 0.0)
    assert menu([X1], ES(0.5), I0, [hump, bent]) == [bent]
    assert menu([X2], ES(0.5), I0, [hump, bent]) == [hump]
    with pytest.raises(EmptyMenu):
        menu([X1, X2], ES(0.5), I0, [hump, bent])


def test_prop3(rng):
    for _ in range(5):
        X = random_distribution(rng, 2, 3)
        grid = contract_grid(I1, X.values, 0.5)
        assert check_prop3_inclusion(X, ES(0.9), ES(0.5), grid)
        assert check_prop3_inclusion(X, ES(0.5), ES(0.5), grid)
    with pytest.raises(PrecedenceNotVerified):
        check_prop3_inclusion(DiscreteDistribution.from_atoms([(0, 0.5), (1, 0.5)]), Mean(), ES(0.5),
                              [deductible_coinsurance(0.0, 0.5)])
