"""Risk measures on finite distributions.

Every measure here except VaR is a (possibly signed) Choquet integral with a
piecewise-linear distortion ``h``.  On a sorted support ``x_1 < ... < x_n``
with survival masses ``S_i = P(X > x_i)`` and ``S_0 = 1`` the integral
collapses to the telescoping sum ``sum_i x_i * (h(S_{i-1}) - h(S_i))``.

``evaluate`` is the exact scalar path.  ``evaluate_batch`` evaluates one
measure on many finite random variables at once (rows of a value matrix);
it is what the probes, the solver and the brute-force oracle use.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from . import dist as D
from .dist import DiscreteDistribution, JointSample
from .errors import DataInvariantError, InvalidDistortion, InvalidLevel, ParseError

SLOPE_TOL = 1e-12
PROBE_TOL = 1e-9


# -- distortion functions -------------------------------------------------


@dataclass(frozen=True)
class DistortionFunction:
    """Piecewise-linear ``h`` on [0, 1] given by its knots ``(t, h(t))``."""

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ts = [t for t, _ in self.knots]
        if len(ts) < 2 or ts[0] != 0.0 or ts[-1] != 1.0:
            raise InvalidDistortion("knots must start at t=0 and end at t=1")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidDistortion("knot abscissae must be strictly increasing")
        if not all(math.isfinite(h) for _, h in self.knots):
            raise InvalidDistortion("non-finite distortion value")

    @classmethod
    def from_points(cls, points: Iterable[tuple[float, float]]) -> "DistortionFunction":
        return cls(tuple((float(t), float(h)) for t, h in points))

    @property
    def ts(self) -> np.ndarray:
        return np.array([t for t, _ in self.knots])

    @property
    def hs(self) -> np.ndarray:
        return np.array([h for _, h in self.knots])

    def __call__(self, t):
        return np.interp(t, self.ts, self.hs)

    def slopes(self) -> list[float]:
        return [(h1 - h0) / (t1 - t0) for (t0, h0), (t1, h1) in zip(self.knots, self.knots[1:])]


@dataclass(frozen=True)
class DistortionClass:
    increasing: bool
    concave: bool
    valid_distortion: bool


def classify_distortion(h: DistortionFunction) -> DistortionClass:
    slopes = h.slopes()
    increasing = all(s >= -SLOPE_TOL for s in slopes)
    concave = all(b <= a + SLOPE_TOL for a, b in zip(slopes, slopes[1:]))
    valid = increasing and h.knots[0][1] == 0.0 and h.knots[-1][1] == 1.0
    return DistortionClass(increasing, concave, valid)


def mixture_distortion(p: float, lam: float) -> DistortionFunction:
    """Distortion of ``lam * ES_p + (1 - lam) * E``.

    ``h(t) = lam * min(t / (1 - p), 1) + (1 - lam) * t``, one kink at ``t = 1 - p``.
    """
    if not 0.0 < p < 1.0:
        raise InvalidLevel(f"mixture level {p} outside (0, 1)")
    t = 1.0 - p
    return DistortionFunction(((0.0, 0.0), (t, lam + (1.0 - lam) * t), (1.0, 1.0)))


@dataclass(frozen=True)
class LambdaRanges:
    """Closed-form lambda ranges for the ES/mean mixture at level ``p``."""

    p: float
    convex_min: float = 0.0
    lsc_min: float = 1.0
    monotone_max: float = 1.0

    @property
    def monotone_min(self) -> float:
        return 1.0 - 1.0 / self.p

    def convex(self, lam: float) -> bool:
        return lam >= self.convex_min

    def monotone(self, lam: float) -> bool:
        return self.monotone_min <= lam <= self.monotone_max

    def lower_semicontinuous(self, lam: float) -> bool:
        return lam >= self.lsc_min

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "convex_iff": f"lambda >= {self.convex_min!r}",
            "monotone_iff": f"lambda in [{self.monotone_min!r}, {self.monotone_max!r}]",
            "lsc_iff": f"lambda >= {self.lsc_min!r}",
        }


def mixture_lambda_ranges(p: float) -> LambdaRanges:
    if not 0.0 < p < 1.0:
        raise InvalidLevel(f"mixture level {p} outside (0, 1)")
    return LambdaRanges(p)


# -- risk measures --------------------------------------------------------


def _sorted_rows(values: np.ndarray, probs: np.ndarray):
    values = np.atleast_2d(np.asarray(values, dtype=float))
    probs = np.broadcast_to(np.asarray(probs, dtype=float), values.shape)
    order = np.argsort(values, axis=1, kind="stable")
    v = np.take_along_axis(values, order, axis=1)
    p = np.take_along_axis(probs, order, axis=1)
    F = np.cumsum(p, axis=1)
    return order, v, p, F


class RiskMeasure:
    """Base class; subclasses are frozen dataclasses."""

    #: admissible for the convex solver
    convex: bool = True

    def evaluate(self, X: DiscreteDistribution) -> float:
        raise NotImplementedError

    def distortion(self) -> DistortionFunction | None:
        return None

    def __call__(self, X: DiscreteDistribution) -> float:
        return self.evaluate(X)

    @property
    def syntax(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.syntax

    def evaluate_batch(self, values, probs) -> np.ndarray:
        return self.weights_batch(values, probs)[0]

    def weights_batch(self, values, probs) -> tuple[np.ndarray, np.ndarray]:
        """Row values and per-atom Choquet weights (in the input atom order).

        For a concave distortion the weight vector is a subgradient of the
        measure with respect to the atom values.
        """
        h = self.distortion()
        order, v, p, F = _sorted_rows(values, probs)
        S = 1.0 - F
        S_prev = S + p
        w_sorted = h(S_prev) - h(S)
        w = np.empty_like(w_sorted)
        np.put_along_axis(w, order, w_sorted, axis=1)
        return np.sum(v * w_sorted, axis=1), w


@dataclass(frozen=True)
class Mean(RiskMeasure):
    def evaluate(self, X):
        return D.mean(X)

    def distortion(self):
        return DistortionFunction(((0.0, 0.0), (1.0, 1.0)))

    @property
    def syntax(self):
        return "mean"


@dataclass(frozen=True)
class VaR(RiskMeasure):
    p: float
    convex = False

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise InvalidLevel(f"VaR level {self.p} outside (0, 1)")

    def evaluate(self, X):
        return D.var(X, self.p)

    def evaluate_batch(self, values, probs):
        _, v, _, F = _sorted_rows(values, probs)
        idx = np.argmax(F >= self.p - D.LEVEL_TOL, axis=1)
        return v[np.arange(v.shape[0]), idx]

    def weights_batch(self, values, probs):
        raise NotImplementedError("VaR has no Choquet weights with a continuous distortion")

    @property
    def syntax(self):
        return f"var@{self.p!r}"


@dataclass(frozen=True)
class ES(RiskMeasure):
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p < 1.0:
            raise InvalidLevel(f"ES level {self.p} outside [0, 1)")

    def evaluate(self, X):
        return D.es(X, self.p)

    def distortion(self):
        if self.p == 0.0:
            return Mean().distortion()
        return DistortionFunction(((0.0, 0.0), (1.0 - self.p, 1.0), (1.0, 1.0)))

    @property
    def syntax(self):
        return f"es@{self.p!r}"


@dataclass(frozen=True)
class LeftES(RiskMeasure):
    p: float
    convex = False

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise InvalidLevel(f"left-ES level {self.p} outside (0, 1]")

    def evaluate(self, X):
        return D.left_es(X, self.p)

    def distortion(self):
        if self.p == 1.0:
            return Mean().distortion()
        return DistortionFunction(((0.0, 0.0), (1.0 - self.p, 0.0), (1.0, 1.0)))

    @property
    def syntax(self):
        return f"les@{self.p!r}"


@dataclass(frozen=True)
class Distortion(RiskMeasure):
    """Signed Choquet integral; ``h`` need not be monotone or concave."""

    h: DistortionFunction
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.h.knots[0][1] != 0.0 or self.h.knots[-1][1] != 1.0:
            # otherwise one of the two half-line integrals diverges
            raise InvalidDistortion("distortion must satisfy h(0)=0 and h(1)=1")

    @property
    def convex(self) -> bool:  # type: ignore[override]
        return classify_distortion(self.h).concave

    def evaluate(self, X):
        S_prev = 1.0
        terms = []
        for x, p in zip(X.values, X.probs):
            S = max(S_prev - p, 0.0)
            terms.append(x * (float(self.h(S_prev)) - float(self.h(S))))
            S_prev = S
        return math.fsum(terms)

    def distortion(self):
        return self.h

    @property
    def syntax(self):
        if self.source:
            return f"dist@{self.source}"
        return "dist@" + json.dumps({"knots": [list(k) for k in self.h.knots]}, separators=(",", ":"))


@dataclass(frozen=True)
class Mixture(RiskMeasure):
    """``lam * ES_p + (1 - lam) * E``; ``lam`` may be any real number."""

    p: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise InvalidLevel(f"mixture level {self.p} outside (0, 1)")

    @property
    def convex(self) -> bool:  # type: ignore[override]
        return self.lam >= 0.0

    def evaluate(self, X):
        return self.lam * D.es(X, self.p) + (1.0 - self.lam) * D.mean(X)

    def distortion(self):
        return mixture_distortion(self.p, self.lam)

    @property
    def syntax(self):
        return f"mix@{self.p!r}:{self.lam!r}"


def evaluate(m: RiskMeasure, X: DiscreteDistribution) -> float:
    return m.evaluate(X)


def is_translation_invariant(m: RiskMeasure) -> bool:
    # every kind implemented here is; kept as a hook for the solver contract
    return True


# -- textual syntax -------------------------------------------------------


def _level(text: str, spec: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ParseError(f"bad level in measure {spec!r}") from exc


def load_distortion(path: str | Path) -> DistortionFunction:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return DistortionFunction.from_points(data["knots"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read distortion file {path}: {exc}") from exc


def parse_measure(spec: str, base_dir: str | Path | None = None) -> RiskMeasure:
    """Parse ``mean``, ``var@p``, ``es@p``, ``les@p``, ``mix@p:lam`` or ``dist@file.json``.

    Out-of-range parameters are reported as ``ParseError`` too.
    """
    try:
        return _parse_measure(spec.strip(), base_dir)
    except DataInvariantError as exc:
        raise ParseError(f"invalid measure {spec!r}: {exc}") from exc


def _parse_measure(spec: str, base_dir) -> RiskMeasure:
    if spec == "mean":
        return Mean()
    kind, sep, arg = spec.partition("@")
    if not sep or not arg:
        raise ParseError(f"unknown measure {spec!r}")
    if kind == "var":
        return VaR(_level(arg, spec))
    if kind == "es":
        return ES(_level(arg, spec))
    if kind == "les":
        return LeftES(_level(arg, spec))
    if kind == "mix":
        p, colon, lam = arg.partition(":")
        if not colon:
            raise ParseError(f"mixture needs 'mix@p:lambda', got {spec!r}")
        return Mixture(_level(p, spec), _level(lam, spec))
    if kind == "dist":
        if arg.lstrip().startswith("{"):
            try:
                h = DistortionFunction.from_points(json.loads(arg)["knots"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad inline distortion {arg!r}") from exc
            return Distortion(h)
        path = Path(arg)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return Distortion(load_distortion(path), source=arg)
    raise ParseError(f"unknown measure kind {kind!r}")


# -- axiom probes ---------------------------------------------------------

AXIOMS = ("monotonicity", "translation_invariance", "convexity", "positive_homogeneity")
VIOLATION = "violation found"


def _no_violation(trials: int) -> str:
    return f"no violation in {trials} trials"


@dataclass
class AxiomResult:
    axiom: str
    status: str
    witness: dict | None = None

    @property
    def violated(self) -> bool:
        return self.status == VIOLATION


@dataclass
class AxiomReport:
    """Outcome of a randomized axiom search.

    A found witness certifies a violation; absence of a witness is only
    evidence, hence the status wording.
    """

    measure: str
    trials: int
    seed: int
    results: dict[str, AxiomResult]

    def violated(self, axiom: str) -> bool:
        return self.results[axiom].violated

    def witness(self, axiom: str) -> dict | None:
        return self.results[axiom].witness

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "trials": self.trials,
            "seed": self.seed,
            "axioms": {a: {"status": r.status, "witness": r.witness} for a, r in self.results.items()},
        }


def _rho(m: RiskMeasure, values, probs) -> np.ndarray:
    return m.evaluate_batch(values, probs)


def _joint_witness(x_row, y_row, p_row) -> list[list[float]]:
    return [[float(x), float(y), float(p)] for x, y, p in zip(x_row, y_row, p_row) if p > 0]


def _indicator_pairs(levels: Iterable[float]):
    """Two-state spaces: event A (first state) and its complement."""
    for q in levels:
        for a in (2.0, 1.0, 3.0):
            for b in (1.0, 2.0):
                # X = a 1_A, Y = X + b 1_{A^c}
                yield q, np.array([a, 0.0]), np.array([a, b])
                # X = 0, Y = b 1_A
                yield q, np.array([0.0, 0.0]), np.array([b, 0.0])


def _probe_levels() -> list[float]:
    qs = [k / 16 for k in range(1, 16)]
    return sorted(qs, key=lambda q: (abs(q - 0.5), q))


def _random_spaces(rng: np.random.Generator, trials: int, n_atoms: int = 6):
    counts = rng.multinomial(16, np.full(n_atoms, 1.0 / n_atoms), size=trials)
    probs = counts / 16.0
    X = rng.integers(-3, 4, size=(trials, n_atoms)).astype(float)
    Y = rng.integers(-3, 4, size=(trials, n_atoms)).astype(float)
    return X, Y, probs


def axiom_probe(m: RiskMeasure, trials: int = 1000, seed: int = 0, tol: float = PROBE_TOL) -> AxiomReport:
    """Search for violations of the four axioms on small joint spaces.

    Structured two-state candidates (indicator pairs) are tried first, then
    ``trials`` random joint laws with at most six atoms, integer values in
    [-3, 3] and probabilities in multiples of 1/16.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    results: dict[str, AxiomResult] = {}

    # monotonicity: structured indicator pairs, then Y = max(X, Y')
    witness = None
    for q, x, y in _indicator_pairs(_probe_levels()):
        pr = np.array([q, 1.0 - q])
        rx, ry = _rho(m, x, pr)[0], _rho(m, y, pr)[0]
        if rx > ry + tol:
            witness = {"joint": _joint_witness(x, y, pr), "rho_X": float(rx), "rho_Y": float(ry),
                       "relation": "Y >= X but rho(X) > rho(Y)"}
            break
    X, Y, P = _random_spaces(rng, trials)
    if witness is None:
        Yup = np.maximum(X, Y)
        rx, ry = _rho(m, X, P), _rho(m, Yup, P)
        bad = np.flatnonzero(rx > ry + tol)
        if bad.size:
            i = bad[0]
            witness = {"joint": _joint_witness(X[i], Yup[i], P[i]), "rho_X": float(rx[i]),
                       "rho_Y": float(ry[i]), "relation": "Y >= X but rho(X) > rho(Y)"}
    results["monotonicity"] = _result("monotonicity", witness, trials)

    # translation invariance
    c = rng.choice(np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]), size=trials)
    r0, r1 = _rho(m, X, P), _rho(m, X + c[:, None], P)
    bad = np.flatnonzero(np.abs(r1 - r0 - c) > tol)
    witness = None
    if bad.size:
        i = bad[0]
        witness = {"X": _joint_witness(X[i], X[i] + c[i], P[i]), "shift": float(c[i]),
                   "rho_X": float(r0[i]), "rho_X_plus_c": float(r1[i]),
                   "relation": "rho(X + c) != rho(X) + c"}
    results["translation_invariance"] = _result("translation_invariance", witness, trials)

    # convexity on a shared space (arbitrary dependence)
    mu = rng.choice(np.array([0.25, 0.5, 0.75]), size=trials)
    mix = mu[:, None] * X + (1.0 - mu[:, None]) * Y
    rm, rx, ry = _rho(m, mix, P), _rho(m, X, P), _rho(m, Y, P)
    rhs = mu * rx + (1.0 - mu) * ry
    bad = np.flatnonzero(rm > rhs + tol)
    witness = None
    if bad.size:
        i = bad[0]
        witness = {"joint": _joint_witness(X[i], Y[i], P[i]), "weight": float(mu[i]),
                   "rho_mix": float(rm[i]), "convex_bound": float(rhs[i]),
                   "relation": "rho(wX + (1-w)Y) > w rho(X) + (1-w) rho(Y)"}
    results["convexity"] = _result("convexity", witness, trials)

    # positive homogeneity
    a = rng.choice(np.array([0.5, 2.0, 3.0]), size=trials)
    ra, r0 = _rho(m, X * a[:, None], P), _rho(m, X, P)
    bad = np.flatnonzero(np.abs(ra - a * r0) > tol)
    witness = None
    if bad.size:
        i = bad[0]
        witness = {"joint": _joint_witness(X[i], X[i] * a[i], P[i]), "factor": float(a[i]),
                   "rho_X": float(r0[i]), "rho_aX": float(ra[i]), "relation": "rho(aX) != a rho(X)"}
    results["positive_homogeneity"] = _result("positive_homogeneity", witness, trials)

    return AxiomReport(m.syntax, trials, seed, results)


def _result(axiom: str, witness: dict | None, trials: int) -> AxiomResult:
    if witness is None:
        return AxiomResult(axiom, _no_violation(trials))
    return AxiomResult(axiom, VIOLATION, witness)


def evaluate_joint(m: RiskMeasure, J: JointSample, fn) -> float:
    """Evaluate ``m`` on ``fn(x, y)`` over the states of ``J``."""
    return m.evaluate(J.push(fn))
