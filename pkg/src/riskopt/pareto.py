"""Efficient contracts: objective, solver, brute-force oracle and Pareto checks.

For translation-invariant measures the efficient contracts for a loss ``X``
are the minimizers of ``rho(X - g(X)) + psi(g(X))`` whatever the premium.
The objective only sees ``g`` through its values at the support points of
``X``, so the solver works on the vector ``g = (g(x_1), ..., g(x_n))`` under
the linear constraints of the contract family:

    I0   0 <= g_i <= x_i
    I1   I0 and g nondecreasing
    I2   I1 and g_{i+1} - g_i <= x_{i+1} - x_i
    I1d  I1 and g_i <= (x_i - d)_+
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import dist as D
from .contracts import CededLossFunction, ContractClass, ceded, member_of, retained
from .dist import DiscreteDistribution
from .errors import (
    EmptyMenu,
    NonConvexMeasure,
    NotNonnegativeLoss,
    PrecedenceNotVerified,
    TooLarge,
    UnsupportedFamily,
)
from .measures import RiskMeasure

ARGMIN_TOL = 1e-9
FEAS_TOL = 1e-12
MAX_SUPPORT = 64


# -- premiums and problems ------------------------------------------------


@dataclass(frozen=True)
class ExpectedValue:
    """Expected-value premium ``(1 + loading) * E[f(X)]``."""

    loading: float = 0.0

    def __post_init__(self):
        if self.loading < 0:
            raise ValueError(f"loading {self.loading} < 0")

    def price(self, psi: RiskMeasure, ceded_loss: DiscreteDistribution) -> float:
        return (1.0 + self.loading) * D.mean(ceded_loss)

    def to_dict(self) -> dict:
        return {"kind": "expected_value", "loading": self.loading}


@dataclass(frozen=True)
class PsiBased:
    """Premium equal to the insurer's own risk value ``psi(f(X))``."""

    def price(self, psi: RiskMeasure, ceded_loss: DiscreteDistribution) -> float:
        return psi.evaluate(ceded_loss)

    def to_dict(self) -> dict:
        return {"kind": "psi"}


PremiumFunctional = ExpectedValue | PsiBased


def premium_from_dict(data: dict | None) -> PremiumFunctional:
    if not data:
        return ExpectedValue()
    kind = data.get("kind", "expected_value")
    if kind == "psi":
        return PsiBased()
    if kind == "expected_value":
        return ExpectedValue(float(data.get("loading", 0.0)))
    raise ValueError(f"unknown premium kind {kind!r}")


@dataclass(frozen=True)
class ParetoProblem:
    X: DiscreteDistribution
    rho: RiskMeasure
    psi: RiskMeasure
    family: ContractClass = field(default_factory=lambda: ContractClass("I0"))
    premium: PremiumFunctional = field(default_factory=ExpectedValue)

    def __post_init__(self):
        if not self.X.is_nonnegative():
            raise NotNonnegativeLoss("insurable losses must be nonnegative")

    @property
    def support(self) -> np.ndarray:
        return np.array(self.X.values)

    @property
    def probs(self) -> np.ndarray:
        return np.array(self.X.probs)

    def upper(self) -> np.ndarray:
        x = self.support
        if self.family.tag == "I1d":
            return np.maximum(x - self.family.d, 0.0)
        return x


# -- objective ------------------------------------------------------------


def objective(prob: ParetoProblem, f: CededLossFunction) -> float:
    """``rho(X - f(X)) + psi(f(X))``, premium-free form."""
    return prob.rho.evaluate(retained(f, prob.X)) + prob.psi.evaluate(ceded(f, prob.X))


def parties(prob: ParetoProblem, f: CededLossFunction, premium: PremiumFunctional | None = None) -> tuple[float, float]:
    """Risk values of insured and insurer, premium included."""
    premium = prob.premium if premium is None else premium
    c = ceded(f, prob.X)
    price = premium.price(prob.psi, c)
    insured = prob.rho.evaluate(D.shift(retained(f, prob.X), price))
    insurer = prob.psi.evaluate(D.shift(c, -price))
    return insured, insurer


def objective_with_premium(prob: ParetoProblem, f: CededLossFunction,
                           premium: PremiumFunctional | None = None) -> float:
    return sum(parties(prob, f, premium))


def objective_values(prob: ParetoProblem, G) -> np.ndarray:
    """Objective for each row of ``G`` (ceded amounts at the support points)."""
    G = np.atleast_2d(np.asarray(G, dtype=float))
    x, p = prob.support, prob.probs
    return prob.rho.evaluate_batch(x - G, p) + prob.psi.evaluate_batch(G, p)


def _subgradient(prob: ParetoProblem, g: np.ndarray) -> tuple[float, np.ndarray]:
    x, p = prob.support, prob.probs
    vr, wr = prob.rho.weights_batch(x - g, p)
    vp, wp = prob.psi.weights_batch(g, p)
    return float(vr[0] + vp[0]), wp[0] - wr[0]


# -- feasible sets --------------------------------------------------------


def feasible_mask(prob: ParetoProblem, G, tol: float = FEAS_TOL) -> np.ndarray:
    G = np.atleast_2d(np.asarray(G, dtype=float))
    x = prob.support
    ok = np.all(G >= -tol, axis=1) & np.all(G <= prob.upper() + tol, axis=1)
    tag = prob.family.tag
    if tag in ("I1", "I2", "I1d"):
        ok &= np.all(np.diff(G, axis=1) >= -tol, axis=1)
    if tag == "I2":
        ok &= np.all(np.diff(G, axis=1) <= np.diff(x) + tol, axis=1)
    return ok


def _bounded_isotonic(y: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Nondecreasing least-squares fit with ``0 <= g_i <= upper_i``.

    Pool-adjacent-violators with the per-block minimizer clipped to the
    block's tightest bound; exact for separable convex losses on a chain.
    """
    sums, counts, caps, vals = [], [], [], []
    for yi, ui in zip(y.tolist(), upper.tolist()):
        sums.append(yi)
        counts.append(1)
        caps.append(ui)
        vals.append(min(max(yi, 0.0), ui))
        while len(vals) > 1 and vals[-2] > vals[-1]:
            s, c, u = sums.pop(), counts.pop(), caps.pop()
            vals.pop()
            sums[-1] += s
            counts[-1] += c
            caps[-1] = min(caps[-1], u)
            vals[-1] = min(max(sums[-1] / counts[-1], 0.0), caps[-1])
    return np.repeat(vals, counts)


def project(prob: ParetoProblem, y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the family's polytope (I0, I1, I1d)."""
    upper = prob.upper()
    if prob.family.tag == "I0":
        return np.clip(y, 0.0, upper)
    if prob.family.tag in ("I1", "I1d"):
        return _bounded_isotonic(np.asarray(y, dtype=float), upper)
    raise UnsupportedFamily(f"no direct projection for {prob.family}")


class _Coordinates:
    """Optimization variables: ``g`` itself, or increments of ``g`` for I2.

    I2 is a box in increment space (``0 <= delta_i <= x_i - x_{i-1}``), so
    projected steps there are plain clipping.
    """

    def __init__(self, prob: ParetoProblem):
        self.prob = prob
        self.increments = prob.family.tag == "I2"
        self.width = np.diff(np.concatenate([[0.0], prob.support]))

    def to_g(self, theta):
        return np.cumsum(theta) if self.increments else theta

    def from_g(self, g):
        return np.diff(np.concatenate([[0.0], g])) if self.increments else g

    def grad(self, s):
        return np.cumsum(s[::-1])[::-1] if self.increments else s

    def project(self, theta):
        if self.increments:
            return np.clip(theta, 0.0, self.width)
        return project(self.prob, theta)


def _es_terms(h) -> tuple[float, list[tuple[float, float]]]:
    """Split a concave piecewise-linear ``h`` into ``a t + sum_j mu_j min(t, s_j)``.

    Returns ``a`` and the pairs ``(mu_j, s_j)`` with ``mu_j > 0``; each
    ``min(t, s_j)`` term is ``s_j`` times an ES distortion at level ``1 - s_j``.
    """
    ts, slopes = h.ts, h.slopes()
    terms = []
    for j in range(1, len(ts) - 1):
        mu = slopes[j - 1] - slopes[j]
        if mu > 0:
            terms.append((mu, float(ts[j])))
    return slopes[-1], terms


def lp_lower_bound(prob: ParetoProblem) -> float:
    """Exact continuous minimum over the family, from a linear program.

    Every ES term is written in its minimization form
    ``s ES_{1-s}(v) = min_t s t + E[(v - t)_+]``, which turns the objective
    into an LP over ``g``, one threshold per term and one excess per atom.
    Used only to certify the subgradient solution.
    """
    check_solvable(prob)
    x, p, upper = prob.support, prob.probs, prob.upper()
    n = x.size
    a_rho, rho_terms = _es_terms(prob.rho.distortion())
    a_psi, psi_terms = _es_terms(prob.psi.distortion())
    terms = [(-1.0, mu, s) for mu, s in rho_terms] + [(1.0, mu, s) for mu, s in psi_terms]
    n_var = n + len(terms) * (n + 1)
    c = np.zeros(n_var)
    c[:n] = (a_psi - a_rho) * p
    const = a_rho * float(p @ x)
    rows, b = [], []
    for k, (sign, mu, s) in enumerate(terms):
        t_idx = n + k * (n + 1)
        c[t_idx] = mu * s
        c[t_idx + 1:t_idx + 1 + n] = mu * p
        for i in range(n):
            # u_i >= v_i - t with v = x - g (insured) or v = g (insurer)
            row = np.zeros(n_var)
            row[i] = sign
            row[t_idx] = -1.0
            row[t_idx + 1 + i] = -1.0
            rows.append(row)
            b.append(-x[i] if sign < 0 else 0.0)
    tag = prob.family.tag
    for i in range(n - 1):
        if tag in ("I1", "I2", "I1d"):
            row = np.zeros(n_var)
            row[i], row[i + 1] = 1.0, -1.0
            rows.append(row)
            b.append(0.0)
        if tag == "I2":
            row = np.zeros(n_var)
            row[i], row[i + 1] = -1.0, 1.0
            rows.append(row)
            b.append(x[i + 1] - x[i])
    bounds = list(zip(np.zeros(n), upper))
    for _ in terms:
        bounds += [(None, None)] + [(0.0, None)] * n
    res = linprog(c, A_ub=np.array(rows) if rows else None, b_ub=np.array(b) if rows else None,
                  bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"certificate LP failed: {res.message}")
    return float(res.fun) + const


# -- solver ---------------------------------------------------------------


@dataclass
class SolveResult:
    optimal_value: float
    minimizer: tuple[float, ...]
    support: tuple[float, ...]
    method: str
    certified_gap: float
    family: str = "I0"
    d: float = 0.0
    iterations: int = 0
    lower_bound: float | None = None
    oracle_value: float | None = None

    def to_contract(self) -> CededLossFunction:
        """Piecewise-linear contract through the minimizer (flat afterwards)."""
        pts = {0.0: 0.0}
        if self.family.startswith("I1d") and self.d > 0:
            pts[self.d] = 0.0
        for x, g in zip(self.support, self.minimizer):
            pts[x] = max(g, 0.0) if x > 0 else 0.0
        return CededLossFunction(tuple(sorted(pts.items())), 0.0)

    def to_dict(self) -> dict:
        return {
            "optimal_value": self.optimal_value,
            "minimizer": list(self.minimizer),
            "support": list(self.support),
            "method": self.method,
            "certified_gap": self.certified_gap,
            "family": self.family,
            "d": self.d,
            "iterations": self.iterations,
            "lower_bound": self.lower_bound,
            "oracle_value": self.oracle_value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SolveResult":
        return cls(
            optimal_value=float(data["optimal_value"]),
            minimizer=tuple(float(v) for v in data["minimizer"]),
            support=tuple(float(v) for v in data["support"]),
            method=data["method"],
            certified_gap=float(data["certified_gap"]),
            family=data.get("family", "I0"),
            d=float(data.get("d", 0.0)),
            iterations=int(data.get("iterations", 0)),
            lower_bound=data.get("lower_bound"),
            oracle_value=data.get("oracle_value"),
        )


def check_solvable(prob: ParetoProblem) -> None:
    for name, m in (("rho", prob.rho), ("psi", prob.psi)):
        if not m.convex or m.distortion() is None:
            raise NonConvexMeasure(f"{name} = {m.syntax} is not convex; the solver needs convex measures")
    if prob.family.tag not in ("I0", "I1", "I2", "I1d"):
        raise UnsupportedFamily(str(prob.family))
    if prob.X.size > MAX_SUPPORT:
        raise TooLarge(f"support of size {prob.X.size} exceeds {MAX_SUPPORT}")


def layer_allocation(prob: ParetoProblem) -> np.ndarray:
    """Cede each layer of ``X`` to the party with the smaller distorted survival.

    Layers below the deductible stay with the insured.  Optimal for pairs of
    concave distortions over I0, I1 and I2; used as a warm start.
    """
    x, p = prob.support, prob.probs
    h_rho, h_psi = prob.rho.distortion(), prob.psi.distortion()
    lo = np.concatenate([[0.0], x[:-1]])
    survival = 1.0 - np.concatenate([[0.0], np.cumsum(p)[:-1]])
    d = prob.family.d if prob.family.tag == "I1d" else 0.0
    width = np.maximum(x - np.maximum(lo, d), 0.0)
    take = h_psi(survival) < h_rho(survival)
    return np.cumsum(np.where(take, width, 0.0))


def _line_candidates(prob: ParetoProblem, g: np.ndarray, i: int, j: int) -> np.ndarray:
    """Shifts ``t`` for ``g[i:j+1] += t`` where the objective or the feasible set can kink."""
    x, upper, tag = prob.support, prob.upper(), prob.family.tag
    blk = np.arange(i, j + 1)
    out_mask = np.ones(len(x), dtype=bool)
    out_mask[blk] = False
    r = x - g
    cands = [-g[blk], upper[blk] - g[blk]]
    if out_mask.any():
        cands.append((r[blk][:, None] - r[out_mask][None, :]).ravel())
        cands.append((g[out_mask][None, :] - g[blk][:, None]).ravel())
    if tag in ("I1", "I1d", "I2"):
        if i > 0:
            cands.append(np.array([g[i - 1] - g[i]]))
        if j < len(x) - 1:
            cands.append(np.array([g[j + 1] - g[j]]))
    if tag == "I2":
        if i > 0:
            cands.append(np.array([g[i - 1] + x[i] - x[i - 1] - g[i]]))
        if j < len(x) - 1:
            cands.append(np.array([g[j + 1] - (x[j + 1] - x[j]) - g[j]]))
    t = np.unique(np.concatenate(cands))
    return t[t != 0.0]


def polish(prob: ParetoProblem, g: np.ndarray, max_sweeps: int = 50) -> tuple[np.ndarray, float]:
    """Exact line searches along contiguous-block shifts until no move improves.

    Along a block shift the objective is piecewise linear with kinks only
    where two retained or two ceded amounts tie, so the breakpoint list from
    ``_line_candidates`` contains a minimizer of every line search.
    """
    n = len(g)
    g = g.copy()
    best = float(objective_values(prob, g)[0])
    for _ in range(max_sweeps):
        improved = False
        for size in range(1, n + 1):
            for i in range(0, n - size + 1):
                j = i + size - 1
                t = _line_candidates(prob, g, i, j)
                if t.size == 0:
                    continue
                G = np.repeat(g[None, :], t.size, axis=0)
                G[:, i:j + 1] += t[:, None]
                G = G[feasible_mask(prob, G)]
                if not len(G):
                    continue
                vals = objective_values(prob, G)
                k = int(np.argmin(vals))
                if vals[k] < best - 1e-13:
                    best, g = float(vals[k]), _snap(prob, G[k])
                    improved = True
        if not improved:
            break
    return g, best


def _snap(prob: ParetoProblem, g: np.ndarray) -> np.ndarray:
    return np.clip(g, 0.0, prob.upper())


def solve(prob: ParetoProblem, iterations: int = 10_000, step: float = 0.5, restarts: int = 2,
          seed: int = 0, patience: int = 1_000, oracle_steps: int | None = None,
          layer_start: bool = True) -> SolveResult:
    """Minimize the objective over the family by projected subgradient descent.

    Starts from the best of a few feasible points (no cession, maximal
    cession, the layer allocation unless ``layer_start`` is off, and
    ``restarts`` random points), takes up
    to ``iterations`` normalized steps of length ``step * max(x) / sqrt(k)``
    (stopping after ``patience`` steps without improvement), then polishes
    with exact block line searches.

    ``certified_gap`` is the excess over the LP lower bound, so the returned
    value is within it of the continuous optimum.  With ``oracle_steps`` and
    at most five support points the grid oracle is also run and its value
    recorded.
    """
    check_solvable(prob)
    x = prob.support
    coords = _Coordinates(prob)
    rng = np.random.default_rng(seed)
    starts = [np.zeros_like(x), prob.upper()]
    if layer_start:
        starts.append(layer_allocation(prob))
    for _ in range(restarts):
        starts.append(np.sort(rng.uniform(0.0, 1.0, x.size)) * prob.upper())
    starts = [coords.to_g(coords.project(coords.from_g(s))) for s in starts]
    vals = objective_values(prob, np.array(starts))
    g = starts[int(np.argmin(vals))]
    best_g, best_v = g.copy(), float(np.min(vals))

    theta = coords.from_g(g)
    radius = max(float(x.max()), 1e-12)
    k_done, last_gain = 0, 0
    for k in range(1, iterations + 1):
        k_done = k
        g = coords.to_g(theta)
        v, s = _subgradient(prob, g)
        if v < best_v - 1e-15:
            best_v, best_g, last_gain = v, g.copy(), k
        elif k - last_gain >= patience:
            break
        s_theta = coords.grad(s)
        norm = float(np.linalg.norm(s_theta))
        if norm == 0.0:
            break
        theta = coords.project(theta - step * radius / math.sqrt(k) * s_theta / norm)

    g, value = polish(prob, best_g)
    bound = lp_lower_bound(prob)
    oracle_value = None
    if oracle_steps is not None and x.size <= 5:
        oracle_value = brute_force_oracle(prob, oracle_steps).optimal_value
    return SolveResult(value, tuple(float(v) for v in g), tuple(float(v) for v in x), "subgradient",
                       max(value - bound, 0.0), str(prob.family), prob.family.d, k_done,
                       bound, oracle_value)


# -- brute-force oracle ---------------------------------------------------


def brute_force_oracle(prob: ParetoProblem, steps_per_coord: int = 10) -> SolveResult:
    """Exhaustive minimum over the grid ``{0, x_i/m, ..., x_i}`` per coordinate.

    Ties within 1e-12 go to the lexicographically smallest vector.
    """
    x = prob.support
    m = int(steps_per_coord)
    if x.size > 5 or m > 21 or m < 1:
        raise TooLarge(f"oracle limited to n <= 5 and m <= 21 (got n={x.size}, m={m})")
    axes = [x_i * np.arange(m + 1) / m for x_i in x]
    head, tail = axes[:1], axes[1:]
    tail_grid = np.array(list(itertools.product(*tail))) if tail else np.zeros((1, 0))
    best_val, best_g = math.inf, None
    for g0 in head[0]:
        G = np.hstack([np.full((len(tail_grid), 1), g0), tail_grid])
        G = G[feasible_mask(prob, G)]
        if not len(G):
            continue
        vals = objective_values(prob, G)
        k = int(np.argmin(vals))
        if vals[k] < best_val - 1e-12:
            # first row reaching the chunk minimum is lexicographically smallest
            hit = int(np.flatnonzero(vals <= vals[k] + 1e-12)[0])
            best_val, best_g = float(vals[hit]), G[hit]
    return SolveResult(best_val, tuple(float(v) for v in best_g), tuple(float(v) for v in x),
                       "grid-oracle", 0.0, str(prob.family), prob.family.d, 0)


# -- Pareto optimality ----------------------------------------------------


@dataclass(frozen=True)
class ParetoCheck:
    optimal: bool
    dominator: CededLossFunction | None = None

    def __bool__(self) -> bool:
        return self.optimal


def is_pareto_optimal(prob: ParetoProblem, f: CededLossFunction, candidates: Sequence[CededLossFunction],
                      premium: PremiumFunctional | None = None, tol: float = ARGMIN_TOL) -> ParetoCheck:
    """No candidate weakly improves both parties with one strict improvement."""
    a_f, b_f = parties(prob, f, premium)
    for g in candidates:
        a_g, b_g = parties(prob, g, premium)
        if a_g <= a_f + tol and b_g <= b_f + tol and (a_g < a_f - tol or b_g < b_f - tol):
            return ParetoCheck(False, g)
    return ParetoCheck(True)


def argmin_set(prob: ParetoProblem, candidates: Sequence[CededLossFunction], with_premium: bool = False,
               premium: PremiumFunctional | None = None, tol: float = ARGMIN_TOL) -> set[int]:
    if with_premium:
        vals = [objective_with_premium(prob, g, premium) for g in candidates]
    else:
        vals = [objective(prob, g) for g in candidates]
    lo = min(vals)
    return {i for i, v in enumerate(vals) if v <= lo + tol}


@dataclass(frozen=True)
class Prop1Result:
    minimizer: bool
    pareto_psi_premium: bool
    pareto_all_premiums: bool

    @property
    def consistent(self) -> bool:
        return self.minimizer == self.pareto_psi_premium == self.pareto_all_premiums

    def __bool__(self) -> bool:
        return self.consistent


def check_prop1_equivalence(prob: ParetoProblem, f: CededLossFunction, candidates: Sequence[CededLossFunction],
                            premiums: Sequence[PremiumFunctional]) -> Prop1Result:
    """Minimizer of the sum  <=>  efficient under the psi premium  <=>  efficient under every listed premium."""
    pool = list(candidates) if any(g == f for g in candidates) else [f, *candidates]
    vals = [objective(prob, g) for g in pool]
    is_min = objective(prob, f) <= min(vals) + ARGMIN_TOL
    psi_ok = is_pareto_optimal(prob, f, pool, PsiBased()).optimal
    all_ok = all(is_pareto_optimal(prob, f, pool, pr).optimal for pr in [*premiums, PsiBased()])
    return Prop1Result(is_min, psi_ok, all_ok)


# -- menus ----------------------------------------------------------------


def contract_grid(family: ContractClass, knots_x: Sequence[float], y_step: float) -> list[CededLossFunction]:
    """All contracts of ``family`` with knots at ``knots_x`` and values on a ``y_step`` grid.

    Beyond the last knot the contracts are flat.  The identity is appended
    when the family admits it.
    """
    xs = sorted({0.0, *map(float, knots_x)} | ({family.d} if family.tag == "I1d" else set()))
    out: list[CededLossFunction] = []

    def cap(x):
        return max(x - family.d, 0.0) if family.tag == "I1d" else x

    def rec(i, ys):
        if i == len(xs):
            out.append(CededLossFunction(tuple(zip(xs, ys)), 0.0))
            return
        k_max = int(math.floor(cap(xs[i]) / y_step + 1e-9))
        for k in range(k_max + 1):
            y = k * y_step
            if i > 0 and family.tag != "I0":
                if y < ys[-1]:
                    continue
                if family.tag == "I2" and y - ys[-1] > xs[i] - xs[i - 1] + 1e-12:
                    continue
            rec(i + 1, ys + [y])

    rec(1, [0.0])
    if family.tag in ("I0", "I1", "I2") or (family.tag == "I1d" and family.d == 0):
        from .contracts import identity

        out.append(identity())
    return out


def menu(X_list: Sequence[DiscreteDistribution], psi: RiskMeasure, family: ContractClass,
         grid: Sequence[CededLossFunction], tol: float = ARGMIN_TOL) -> list[CededLossFunction]:
    """Contracts of the grid that minimize the (psi, psi) objective for every ``X`` in the list.

    A finite list of losses only approximates the intersection over all
    losses from outside: the result can be larger than the true menu.
    """
    x_max = max(X.values[-1] for X in X_list) + 1.0
    pool = [g for g in grid if member_of(g, family, x_max)]
    keep = set(range(len(pool)))
    for X in X_list:
        prob = ParetoProblem(X, psi, psi, family)
        keep &= argmin_set(prob, pool, tol=tol)
        if not keep:
            raise EmptyMenu("no contract of the grid is efficient for every loss")
    return [pool[i] for i in sorted(keep)]


def check_prop3_inclusion(X: DiscreteDistribution, rho: RiskMeasure, psi: RiskMeasure,
                          candidates: Sequence[CededLossFunction], family: ContractClass | None = None) -> bool:
    """Every (rho, psi)-minimizer over ``candidates`` is also a (psi, psi)-minimizer.

    Needs ``rho >= psi``; checked on ``X`` and on every ceded and retained
    law the candidates induce.  The identity contract is added to the pool
    when missing, since full cession anchors the (psi, psi) minimum.
    """
    from .contracts import identity

    pool = list(candidates)
    if identity() not in pool:
        pool.append(identity())
    laws = [X]
    for g in pool:
        laws += [ceded(g, X), retained(g, X)]
    for Z in laws:
        if rho.evaluate(Z) < psi.evaluate(Z) - 1e-12:
            raise PrecedenceNotVerified(f"{rho.syntax} < {psi.syntax} on {Z!r}")
    fam = family or ContractClass("I0")
    A = argmin_set(ParetoProblem(X, rho, psi, fam), pool)
    B = argmin_set(ParetoProblem(X, psi, psi, fam), pool)
    return A <= B
