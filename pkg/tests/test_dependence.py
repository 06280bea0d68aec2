import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riskopt.contracts import ContractClass, deductible_limit, split_joint
from riskopt.dependence import find_common_p_tail, is_comonotonic, is_p_concentrated, product_embed
from riskopt.dist import DiscreteDistribution, JointSample
from riskopt.errors import InfeasibleMass, InvalidLevel
from riskopt.fixtures import random_contract, random_distribution, random_level_distribution

from conftest import distributions, joint_samples

ANTI = JointSample(((0.0, 1.0, 0.5), (1.0, 0.0, 0.5)))


def test_antithetic_pair():
    rep = is_comonotonic(ANTI)
    assert not rep and rep.witness == (0, 1)
    assert not find_common_p_tail(ANTI, 0.5).exists


def test_constant_second_coordinate():
    J = JointSample(((0.0, 1.0, 0.25), (2.0, 1.0, 0.25), (1.0, 1.0, 0.5)))
    assert is_comonotonic(J)


def test_tail_event_example(fixture_x):
    J = split_joint(deductible_limit(1, 1), fixture_x)
    rep = find_common_p_tail(J, 0.5)
    assert rep.exists and rep.level == 0.5
    assert {J.atoms[i][0] + J.atoms[i][1] for i in rep.event} == {2.0, 3.0}


def test_tail_event_inside_tie_group():
    # the tail has to take one of two identical states
    J = JointSample(((1.0, 1.0, 0.25), (1.0, 1.0, 0.25), (0.0, 0.0, 0.5)))
    rep = find_common_p_tail(J, 0.75)
    assert rep.exists and len(rep.event) == 1


def test_infeasible_mass():
    J = JointSample(((0.0, 0.0, 0.5), (1.0, 1.0, 0.5)))
    with pytest.raises(InfeasibleMass):
        find_common_p_tail(J, 0.3)
    with pytest.raises(InvalidLevel):
        find_common_p_tail(J, 1.0)


@given(joint_samples())
def test_comonotonic_symmetric(J):
    assert bool(is_comonotonic(J)) == bool(is_comonotonic(J.swap()))


@given(distributions(), st.integers(1, 15))
def test_comonotonic_prefix(X, k):
    J = JointSample(tuple((v, 2 * v + 1, p) for v, p in X.atoms))
    assert is_comonotonic(J)
    cum = np.cumsum(X.probs)
    # every mass reachable by a prefix of the sorted states
    for c in cum[:-1]:
        assert is_p_concentrated(J, float(c))


@given(joint_samples(), st.integers(1, 15))
def test_reported_event_is_a_tail(J, k):
    p = k / 16
    try:
        rep = find_common_p_tail(J, p)
    except InfeasibleMass:
        return
    if rep.exists:
        inside = set(rep.event)
        assert abs(sum(J.atoms[i][2] for i in inside) - (1 - p)) <= 1e-12
        out = [a for i, a in enumerate(J.atoms) if i not in inside]
        for c in (0, 1):
            assert min(J.atoms[i][c] for i in inside) >= max(a[c] for a in out)


def test_prop2_randomized(rng):
    for _ in range(200):
        X = random_distribution(rng)
        f = random_contract(rng, ContractClass("I2"))
        assert is_comonotonic(split_joint(f, X))
    for _ in range(200):
        d = float(rng.integers(1, 17)) * 0.25
        p = float(rng.integers(1, 16)) / 16
        X = random_level_distribution(rng, d, p)
        f = random_contract(rng, ContractClass("I1d", d))
        assert find_common_p_tail(split_joint(f, X), p).exists


def test_product_embed():
    J = product_embed(DiscreteDistribution.point(1.0), 0.5)
    assert J.atoms == ((1.0, 1.0, 0.5), (0.0, 0.0, 0.5))
    X = DiscreteDistribution.from_atoms([(0, 0.5), (2, 0.5)])
    J = product_embed(X, 0.5)
    assert len(J) == 4
    assert J.first().atoms == [(0.0, 0.75), (2.0, 0.25)]
    with pytest.raises(InvalidLevel):
        product_embed(X, 1.0)


@given(distributions(), st.integers(1, 15))
def test_product_embed_mean(X, k):
    q = k / 16
    J = product_embed(X, q)
    first = J.first()
    assert abs(sum(v * p for v, p in first.atoms) - q * sum(v * p for v, p in X.atoms)) <= 1e-12
