"""Runnable checks of the characterization results.

Each suite returns a ``Report`` made of ``Check`` entries.  A check is one of

* ``exact``: an identity tested to a fixed tolerance on every trial,
* ``certificate``: a search that must find (or found) an explicit witness,
* ``evidence``: a search that must come up empty; passing it only means
  "no violation in N trials", never a proof.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import dist as D
from .contracts import (
    CededLossFunction,
    ContractClass,
    ceded,
    retained,
    split_joint,
)
from .dependence import find_common_p_tail, is_comonotonic
from .dist import DiscreteDistribution
from .errors import NotAViolation, NotConcave
from .fixtures import (
    random_contract,
    random_distribution,
    random_level_distribution,
)
from .measures import (
    ES,
    VIOLATION,
    Distortion,
    DistortionFunction,
    Mean,
    Mixture,
    RiskMeasure,
    axiom_probe,
    classify_distortion,
    mixture_distortion,
    mixture_lambda_ranges,
)
from .pareto import (
    ExpectedValue,
    ParetoProblem,
    PsiBased,
    check_prop3_inclusion,
    contract_grid,
    objective,
    parties,
)

EXACT_TOL = 1e-10
IDENTITY_TOL = 1e-12
STRICT_TOL = 1e-9


def _no_violation(trials: int) -> str:
    return f"no violation in {trials} trials"


@dataclass
class Check:
    name: str
    passed: bool
    kind: str
    status: str
    metrics: dict = field(default_factory=dict)
    witness: dict | None = None


@dataclass
class Report:
    suite: str
    paper_ref: str
    trials: int
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "paper_ref": self.paper_ref,
            "passed": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "checks": [asdict(c) for c in self.checks],
        }


def _exact(name: str, errors: Sequence[float], tol: float, witnesses: Sequence[dict | None] = ()) -> Check:
    worst = max(errors, default=0.0)
    bad = next((i for i, e in enumerate(errors) if not e <= tol), None)
    witness = None
    if bad is not None and bad < len(witnesses):
        witness = witnesses[bad]
    status = f"holds within {tol:g}" if bad is None else f"fails by {worst:.3g}"
    return Check(name, bad is None, "exact", status, {"max_error": worst, "tolerance": tol, "cases": len(errors)}, witness)


def _law(X: DiscreteDistribution) -> list[list[float]]:
    return [[v, p] for v, p in X.atoms]


# -- full-cession additivity for comonotonic splits -----------------------


def check_theorem1_if(h: DistortionFunction, trials: int = 200, seed: int = 0) -> Report:
    """For a concave distortion, ceding any I2 contract leaves the total risk unchanged.

    Also checks the floor ``objective(f) >= rho(X)`` on random I0 contracts.
    """
    cls = classify_distortion(h)
    if not (cls.increasing and cls.concave and cls.valid_distortion):
        raise NotConcave(f"distortion {h.knots} is not an increasing concave distortion")
    rho = Distortion(h)
    rng = np.random.default_rng(seed)
    add_err, floor_err, wit_add, wit_floor = [], [], [], []
    for _ in range(trials):
        X = random_distribution(rng)
        f = random_contract(rng, ContractClass("I2"))
        total = rho.evaluate(retained(f, X)) + rho.evaluate(ceded(f, X))
        add_err.append(abs(total - rho.evaluate(X)))
        wit_add.append({"X": _law(X), "f": f.to_dict(), "sum": total, "rho_X": rho.evaluate(X)})
        g = random_contract(rng, ContractClass("I0"))
        val = objective(ParetoProblem(X, rho, rho), g)
        floor_err.append(max(rho.evaluate(X) - val, 0.0))
        wit_floor.append({"X": _law(X), "f": g.to_dict(), "objective": val, "rho_X": rho.evaluate(X)})
    report = Report("thm1-if", "concave distortions are comonotonic additive over I2 splits "
                    "and ceding never lowers the total risk", trials, seed)
    report.checks.append(_exact("additivity", add_err, EXACT_TOL, wit_add))
    report.checks.append(_exact("subadditivity_floor", floor_err, EXACT_TOL, wit_floor))
    return report


def two_point_es(x: float, y: float, t: float) -> float:
    """ES at level ``t`` of ``x 1_A + y 1_{A^c}`` with ``P(A) = 1/2`` and ``x <= y``, ``t < 1/2``."""
    return ((1 - 2 * t) * x + y) / (2 - 2 * t)


def check_theorem1_onlyif_gap(f: CededLossFunction, rho: RiskMeasure | DistortionFunction,
                              x: float, y: float) -> Report:
    """Strict excess of the total risk for a contract that leaves I2 between ``x`` and ``y``.

    ``f`` must either decrease or rise faster than the loss on ``[x, y]``.

    Builds ``X`` equal to ``x`` or ``y`` with probability one half each and
    reports ``rho(X - f(X)) + rho(f(X)) - rho(X)`` as ``gap``.
    """
    if isinstance(rho, DistortionFunction):
        rho = Distortion(rho)
    if not 0.0 <= x < y:
        raise NotAViolation(f"need 0 <= x < y, got x={x}, y={y}")
    fx, fy = f(x), f(y)
    if fx <= fy <= fx + (y - x):
        raise NotAViolation(f"f is nondecreasing and 1-Lipschitz on [{x}, {y}]")
    X = DiscreteDistribution.from_atoms([(x, 0.5), (y, 0.5)])
    gap = rho.evaluate(retained(f, X)) + rho.evaluate(ceded(f, X)) - rho.evaluate(X)
    report = Report("thm1-gap", "a contract outside I2 strictly raises the total risk "
                    "on a two-point loss", 1, 0)
    report.checks.append(Check("strict_gap", gap > STRICT_TOL, "certificate",
                               VIOLATION if gap > STRICT_TOL else "no gap",
                               {"gap": gap, "x": x, "y": y, "f_x": fx, "f_y": fy},
                               {"X": _law(X), "f": f.to_dict()}))
    errs, rows = [], []
    for t in (0.1, 0.25, 0.4):
        lo, hi = sorted((x, y))
        closed, direct = two_point_es(lo, hi, t), D.es(X, t)
        errs.append(abs(closed - direct))
        rows.append({"t": t, "closed_form": closed, "es": direct})
    report.checks.append(_exact("two_point_es", errs, IDENTITY_TOL, rows))
    return report


# -- tail-additivity of ES and mixtures -----------------------------------


def check_theorem2_forward(p: float = 0.5, d: float = 1.0, trials: int = 200, seed: int = 0,
                           lambdas: Sequence[float] = (0.0, 0.5, 1.0, 2.0)) -> Report:
    """ES_p splits additively over I1d contracts for losses with ``P(X <= d) = p``.

    The same holds for every mixture ``lam ES_p + (1 - lam) E``, and the
    split admits a common p-tail event.
    """
    rng = np.random.default_rng(seed)
    es_p = ES(p)
    family = ContractClass("I1d", d)
    mixes = [Mixture(p, lam) for lam in lambdas] if 0.0 < p < 1.0 else []
    es_err, es_wit, tail_fail = [], [], None
    mix_err: dict[float, list[float]] = {m.lam: [] for m in mixes}
    for _ in range(trials):
        X = random_level_distribution(rng, d, p)
        f = random_contract(rng, family)
        es_err.append(abs(objective(ParetoProblem(X, es_p, es_p, family), f) - es_p.evaluate(X)))
        es_wit.append({"X": _law(X), "f": f.to_dict()})
        for m in mixes:
            mix_err[m.lam].append(abs(objective(ParetoProblem(X, m, m, family), f) - m.evaluate(X)))
        if 0.0 < p < 1.0 and tail_fail is None:
            if not find_common_p_tail(split_joint(f, X), p).exists:
                tail_fail = {"X": _law(X), "f": f.to_dict()}
    report = Report("thm2-forward", "ES_p and its mixtures with the mean split additively over "
                    "contracts with deductible d when P(X <= d) = p", trials, seed)
    report.checks.append(_exact("es_additivity", es_err, EXACT_TOL, es_wit))
    for lam, errs in mix_err.items():
        report.checks.append(_exact(f"mixture_additivity[lam={lam:g}]", errs, EXACT_TOL))
    if 0.0 < p < 1.0:
        report.checks.append(Check("common_p_tail", tail_fail is None, "exact",
                                   "found on every split" if tail_fail is None else "missing",
                                   {"cases": trials}, tail_fail))
    return report


def _i1d_candidates(d: float, top: float) -> list[CededLossFunction]:
    from .contracts import deductible_coinsurance, deductible_limit

    out = [deductible_coinsurance(d, a) for a in (0.25, 0.5, 1.0)]
    out += [deductible_limit(d, u) for u in np.arange(1, int(4 * max(top - d, 0.0)) + 1) * 0.25]
    return out


def check_theorem2_converse_probe(rho: RiskMeasure, p: float = 0.5, d: float = 1.0, trials: int = 500,
                                  seed: int = 0) -> Report:
    """Search for a loss in the level class and an I1d contract with strict excess.

    A witness certifies that ``rho`` is not an ES/mean mixture at level ``p``;
    finding none is only evidence.
    """
    rng = np.random.default_rng(seed)
    family = ContractClass("I1d", d)
    witness, excess_max = None, -math.inf
    used = 0
    for k in range(trials):
        used = k + 1
        X = random_level_distribution(rng, d, p, n_max=6)
        pool = [random_contract(rng, family)] + _i1d_candidates(d, X.values[-1])
        prob = ParetoProblem(X, rho, rho, family)
        base = rho.evaluate(X)
        for f in pool:
            excess = objective(prob, f) - base
            excess_max = max(excess_max, excess)
            if excess > STRICT_TOL:
                witness = {"X": _law(X), "f": f.to_dict(), "objective": base + excess, "rho_X": base,
                           "excess": excess}
                break
        if witness is not None:
            break
    report = Report("thm2-probe", f"strict excess over I1d splits at level {p:g} rules out "
                    f"ES/mean mixtures at that level", trials, seed)
    status = VIOLATION if witness else _no_violation(trials)
    report.checks.append(Check("excess_search", True, "certificate" if witness else "evidence", status,
                               {"trials_used": used, "max_excess": excess_max,
                                "consistent_with_mixture": witness is None}, witness))
    return report


def probe_consistent_with_mixture(report: Report) -> bool:
    return report.check("excess_search").metrics["consistent_with_mixture"]


# -- mixture axioms -------------------------------------------------------


def lemma5_witnesses(p: float, lam: float) -> dict | None:
    """Explicit monotonicity counterexample for a mixture outside the monotone range.

    ``lam > 1``: ``X = 2 1_A`` and ``Y = X + 1_{A^c}``; ``lam < 1 - 1/p``:
    ``X = 0`` and ``Y = 1_A``; in both cases ``P(A) = 1 - p``.
    """
    m = Mixture(p, lam)
    if lam > 1.0:
        X = DiscreteDistribution.from_atoms([(2.0, 1 - p), (0.0, p)])
        Y = DiscreteDistribution.from_atoms([(2.0, 1 - p), (1.0, p)])
        joint = [[2.0, 2.0, 1 - p], [0.0, 1.0, p]]
    elif lam < 1.0 - 1.0 / p:
        X = DiscreteDistribution.point(0.0)
        Y = DiscreteDistribution.from_atoms([(1.0, 1 - p), (0.0, p)])
        joint = [[0.0, 1.0, 1 - p], [0.0, 0.0, p]]
    else:
        return None
    return {"joint": joint, "rho_X": m.evaluate(X), "rho_Y": m.evaluate(Y)}


def check_lemma5(p: float = 0.5, lambdas: Sequence[float] | None = None, trials: int = 10_000,
                 seed: int = 0) -> Report:
    """Axiom probes of ``lam ES_p + (1 - lam) E`` against the closed-form ranges.

    Lower semicontinuity is reported from the closed form only: on a finite
    space almost sure convergence is trivial and cannot be probed.
    """
    ranges = mixture_lambda_ranges(p)
    if lambdas is None:
        lambdas = (-2.0, -0.5, 0.0, 0.3, 1.0 - 1.0 / p, 1.0, 1.2, 2.0)
    report = Report("lemma5", "an ES/mean mixture is convex iff lam >= 0, monotone iff "
                    "lam in [1 - 1/p, 1], lower semicontinuous iff lam >= 1", trials, seed)
    for lam in lambdas:
        tag = f"[lam={lam:g}]"
        cls = classify_distortion(mixture_distortion(p, lam))
        cls_ok = cls.concave == ranges.convex(lam) and cls.increasing == ranges.monotone(lam)
        report.checks.append(Check("classification" + tag, cls_ok, "exact",
                                   "matches closed form" if cls_ok else "mismatch",
                                   {"concave": cls.concave, "increasing": cls.increasing,
                                    **ranges.to_dict(), "lam": lam}))
        probe = axiom_probe(Mixture(p, lam), trials, seed)
        for axiom, expect in (("convexity", ranges.convex(lam)), ("monotonicity", ranges.monotone(lam))):
            res = probe.results[axiom]
            found = res.violated
            ok = found != expect
            kind = "certificate" if found else "evidence"
            report.checks.append(Check(f"{axiom}_probe" + tag, ok, kind, res.status,
                                       {"expected_property": expect}, res.witness))
        explicit = lemma5_witnesses(p, lam)
        if explicit is not None:
            ok = explicit["rho_X"] > explicit["rho_Y"] + STRICT_TOL
            report.checks.append(Check("monotonicity_witness" + tag, ok, "certificate",
                                       VIOLATION if ok else "witness failed", {}, explicit))
        report.checks.append(Check("lower_semicontinuity" + tag, True, "closed-form",
                                   "lsc" if ranges.lower_semicontinuous(lam) else "not lsc",
                                   {"lsc": ranges.lower_semicontinuous(lam)}))
    return report


# -- mean split identity --------------------------------------------------


def check_identity_mean_split(trials: int = 500, seed: int = 0) -> Report:
    """``(1-p) ES_p + p ES_p^- = E`` and the ``gamma = 1 - (1-lam)/p`` reparameterization."""
    rng = np.random.default_rng(seed)
    id_err, re_err, wit = [], [], []
    for k in range(trials):
        X = random_distribution(rng)
        p = float(rng.integers(1, 16)) / 16 if k % 2 == 0 else float(rng.uniform(0.01, 0.99))
        lam = float(rng.uniform(-2.0, 2.0))
        e, le, mu = D.es(X, p), D.left_es(X, p), D.mean(X)
        id_err.append(abs((1 - p) * e + p * le - mu))
        gamma = 1.0 - (1.0 - lam) / p
        re_err.append(abs(lam * e + (1 - lam) * le - (gamma * e + (1 - gamma) * mu)))
        wit.append({"X": _law(X), "p": p, "lam": lam})
    report = Report("identity", "(1-p) ES_p + p left-ES_p equals the mean", trials, seed)
    report.checks.append(_exact("mean_split", id_err, IDENTITY_TOL, wit))
    report.checks.append(_exact("gamma_reparameterization", re_err, EXACT_TOL, wit))
    return report


# -- efficient contracts --------------------------------------------------

PROP_MEASURES: tuple[Callable[[], RiskMeasure], ...] = (
    Mean, lambda: ES(0.5), lambda: ES(0.9), lambda: Mixture(0.5, 0.5), lambda: Mixture(0.75, 0.25),
)
PREMIUMS = (ExpectedValue(0.0), ExpectedValue(0.2), PsiBased())


def _small_problem(rng: np.random.Generator) -> tuple[ParetoProblem, list[CededLossFunction]]:
    X = random_distribution(rng, 2, 3)
    rho = PROP_MEASURES[int(rng.integers(len(PROP_MEASURES)))]()
    psi = PROP_MEASURES[int(rng.integers(len(PROP_MEASURES)))]()
    family = ContractClass("I1")
    grid = contract_grid(family, X.values, 0.5)
    return ParetoProblem(X, rho, psi, family), grid


def _front(A: np.ndarray, B: np.ndarray, tol: float = STRICT_TOL) -> np.ndarray:
    """Mask of points no other point weakly dominates with one strict improvement."""
    weak = (A[None, :] <= A[:, None] + tol) & (B[None, :] <= B[:, None] + tol)
    strict = (A[None, :] < A[:, None] - tol) | (B[None, :] < B[:, None] - tol)
    return ~np.any(weak & strict, axis=1)


def prop1_table(prob: ParetoProblem, candidates: Sequence[CededLossFunction], premiums=PREMIUMS) -> dict:
    """Per-candidate flags: minimizer, efficient under the psi premium, efficient under all premiums."""
    sums = np.array([objective(prob, g) for g in candidates])
    minimizer = sums <= sums.min() + STRICT_TOL
    fronts, argmins = {}, {}
    for pr in (*premiums, PsiBased()):
        table = np.array([parties(prob, g, pr) for g in candidates])
        fronts[pr] = _front(table[:, 0], table[:, 1])
        total = table.sum(axis=1)
        argmins[pr] = total <= total.min() + STRICT_TOL
    psi_front = fronts[PsiBased()]
    all_front = np.logical_and.reduce([fronts[pr] for pr in fronts])
    return {"minimizer": minimizer, "psi_front": psi_front, "all_front": all_front, "argmins": argmins}


def check_prop1(trials: int = 20, seed: int = 0) -> Report:
    """Minimizing the sum, efficiency under the psi premium and under every premium coincide.

    Also checks that the argmin set of the premium-loaded objective does not
    depend on the premium.
    """
    rng = np.random.default_rng(seed)
    equiv_fail, indep_fail = None, None
    for _ in range(trials):
        prob, grid = _small_problem(rng)
        t = prop1_table(prob, grid)
        agree = (t["minimizer"] == t["psi_front"]) & (t["psi_front"] == t["all_front"])
        if equiv_fail is None and not agree.all():
            i = int(np.flatnonzero(~agree)[0])
            equiv_fail = {"X": _law(prob.X), "rho": prob.rho.syntax, "psi": prob.psi.syntax,
                          "f": grid[i].to_dict()}
        for pr, mask in t["argmins"].items():
            if indep_fail is None and not np.array_equal(mask, t["minimizer"]):
                indep_fail = {"X": _law(prob.X), "rho": prob.rho.syntax, "psi": prob.psi.syntax,
                              "premium": pr.to_dict()}
    report = Report("prop1", "for translation-invariant measures, efficient contracts are the "
                    "minimizers of rho(X - f(X)) + psi(f(X)) for every premium", trials, seed)
    report.checks.append(Check("equivalence", equiv_fail is None, "exact",
                               "three conditions agree on every candidate" if equiv_fail is None else "disagree",
                               {"problems": trials}, equiv_fail))
    report.checks.append(Check("premium_independence", indep_fail is None, "exact",
                               "argmin sets identical" if indep_fail is None else "argmin sets differ",
                               {"problems": trials, "premiums": [p.to_dict() for p in PREMIUMS]}, indep_fail))
    return report


def check_prop2(trials: int = 200, seed: int = 0) -> Report:
    """I2 splits are comonotonic; I1d splits of level-class losses share a p-tail event."""
    rng = np.random.default_rng(seed)
    como_fail, tail_fail = None, None
    for _ in range(trials):
        X = random_distribution(rng)
        f = random_contract(rng, ContractClass("I2"))
        if como_fail is None and not is_comonotonic(split_joint(f, X)):
            como_fail = {"X": _law(X), "f": f.to_dict()}
        d = float(rng.integers(1, 17)) * 0.25
        p = float(rng.integers(1, 16)) / 16
        X = random_level_distribution(rng, d, p)
        f = random_contract(rng, ContractClass("I1d", d))
        if tail_fail is None and not find_common_p_tail(split_joint(f, X), p).exists:
            tail_fail = {"X": _law(X), "f": f.to_dict(), "d": d, "p": p}
    report = Report("prop2", "I2 splits are comonotonic and I1d splits of losses with "
                    "P(X <= d) = p are p-concentrated", trials, seed)
    report.checks.append(Check("comonotonic", como_fail is None, "exact",
                               "every split comonotonic" if como_fail is None else "counterexample",
                               {"cases": trials}, como_fail))
    report.checks.append(Check("common_p_tail", tail_fail is None, "exact",
                               "every split p-concentrated" if tail_fail is None else "counterexample",
                               {"cases": trials}, tail_fail))
    return report


def check_prop3(trials: int = 20, seed: int = 0, rho: RiskMeasure | None = None,
                psi: RiskMeasure | None = None) -> Report:
    """If ``rho >= psi`` then every (rho, psi)-minimizer is a (psi, psi)-minimizer."""
    rho = rho or ES(0.9)
    psi = psi or ES(0.5)
    rng = np.random.default_rng(seed)
    fail = None
    for _ in range(trials):
        X = random_distribution(rng, 2, 3)
        grid = contract_grid(ContractClass("I1"), X.values, 0.5)
        if fail is None and not check_prop3_inclusion(X, rho, psi, grid, ContractClass("I1")):
            fail = {"X": _law(X)}
    report = Report("prop3", "when rho dominates psi, contracts efficient for (rho, psi) are "
                    "efficient for (psi, psi)", trials, seed)
    report.checks.append(Check("inclusion", fail is None, "exact",
                               "inclusion holds" if fail is None else "inclusion fails",
                               {"problems": trials, "rho": rho.syntax, "psi": psi.syntax}, fail))
    return report


# -- registry -------------------------------------------------------------

GAP_FIXTURE = CededLossFunction(((0.0, 0.0), (1.9, 0.0), (2.0, 2.0)), 0.0)


def _thm1_if_suite(trials: int, seed: int) -> Report:
    hs = [ES(0.5).distortion(), Mean().distortion(),
          DistortionFunction(((0.0, 0.0), (0.5, 0.75), (1.0, 1.0)))]
    merged = Report("thm1-if", "", trials, seed)
    for k, h in enumerate(hs):
        sub = check_theorem1_if(h, trials, seed + k)
        merged.paper_ref = sub.paper_ref
        for c in sub.checks:
            c.name = f"{c.name}[h={k}]"
            merged.checks.append(c)
    return merged


def _thm1_gap_suite(trials: int, seed: int) -> Report:
    rep = check_theorem1_onlyif_gap(GAP_FIXTURE, ES(0.5), 1.9, 2.0)
    dec = CededLossFunction(((0.0, 0.0), (1.0, 1.0), (2.0, 0.5)), 0.0)
    rep2 = check_theorem1_onlyif_gap(dec, ES(0.5), 1.0, 2.0)
    for c in rep2.checks:
        c.name += "[decreasing]"
        rep.checks.append(c)
    rep.trials, rep.seed = trials, seed
    return rep


def _thm2_probe_suite(trials: int, seed: int) -> Report:
    report = Report("thm2-probe", "strict excess over I1d splits rules out ES/mean mixtures "
                    "at the level; mixtures at the level show none", trials, seed)
    for rho, expect_mixture in ((ES(0.5), True), (Mean(), True), (Mixture(0.5, 0.5), True), (ES(0.9), False)):
        sub = check_theorem2_converse_probe(rho, 0.5, 1.0, trials, seed)
        c = sub.checks[0]
        c.passed = probe_consistent_with_mixture(sub) == expect_mixture
        c.name = f"excess_search[{rho.syntax}]"
        report.checks.append(c)
    return report


SUITES: dict[str, tuple[Callable[[int, int], Report], int]] = {
    "thm1-if": (_thm1_if_suite, 200),
    "thm1-gap": (_thm1_gap_suite, 1),
    "thm2-forward": (lambda t, s: check_theorem2_forward(0.5, 1.0, t, s), 200),
    "thm2-probe": (_thm2_probe_suite, 500),
    "lemma5": (lambda t, s: _lemma5_suite(t, s), 10_000),
    "identity": (check_identity_mean_split, 500),
    "prop1": (check_prop1, 20),
    "prop2": (check_prop2, 200),
    "prop3": (check_prop3, 20),
}


def _lemma5_suite(trials: int, seed: int) -> Report:
    merged = Report("lemma5", "", trials, seed)
    for p in (0.1, 0.5, 0.9):
        sub = check_lemma5(p, None, trials, seed)
        merged.paper_ref = sub.paper_ref
        for c in sub.checks:
            c.name = f"{c.name}[p={p:g}]"
            merged.checks.append(c)
    return merged


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default_trials = SUITES[name]
    return fn(default_trials if trials is None else trials, seed)
