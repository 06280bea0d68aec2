"""Ceded loss functions and the contract classes I0, I1, I2 and I1^d.

A ceded loss function is stored as knots ``(x, y)`` starting at ``x = 0``
and interpolated linearly; beyond the last knot it continues with
``tail_slope`` (by default the slope of the final segment, or 0 for a single
knot).  All class predicates reduce to finitely many knot and slope checks,
so membership is decided exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dist import DiscreteDistribution, JointSample, canonicalize
from .errors import InvalidContract, NegativeArgument, NotNonnegativeLoss, ParameterOutOfRange, ParseError

FAMILIES = ("I0", "I1", "I2", "I1d")


@dataclass(frozen=True)
class CededLossFunction:
    knots: tuple[tuple[float, float], ...]
    tail_slope: float | None = None

    def __post_init__(self):
        if not self.knots or self.knots[0][0] != 0.0:
            raise InvalidContract("first knot must sit at x = 0")
        xs = [x for x, _ in self.knots]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InvalidContract("knot abscissae must be strictly increasing")
        if any(y < 0 or not math.isfinite(y) for _, y in self.knots):
            raise InvalidContract("ceded amounts must be finite and nonnegative")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], tail_slope: float | None = None) -> "CededLossFunction":
        knots = tuple((float(x), float(y)) for x, y in points)
        return cls(knots, None if tail_slope is None else float(tail_slope))

    @property
    def slope_after(self) -> float:
        if self.tail_slope is not None:
            return self.tail_slope
        if len(self.knots) == 1:
            return 0.0
        (x0, y0), (x1, y1) = self.knots[-2], self.knots[-1]
        return (y1 - y0) / (x1 - x0)

    def __call__(self, x):
        xs = np.array([k[0] for k in self.knots])
        ys = np.array([k[1] for k in self.knots])
        x_arr = np.asarray(x, dtype=float)
        out = np.interp(x_arr, xs, ys)
        out = np.where(x_arr > xs[-1], ys[-1] + self.slope_after * (x_arr - xs[-1]), out)
        return float(out) if out.ndim == 0 else out

    def breakpoints(self, x_max: float, extra: Sequence[float] = ()) -> list[tuple[float, float]]:
        """Knots restricted to [0, x_max], with x_max and ``extra`` inserted."""
        xs = {x for x, _ in self.knots if x <= x_max}
        xs.add(float(x_max))
        xs.update(float(e) for e in extra if 0.0 <= e <= x_max)
        return [(x, eval_contract(self, x)) for x in sorted(xs)]

    def to_dict(self) -> dict:
        out: dict = {"knots": [list(k) for k in self.knots]}
        if self.tail_slope is not None:
            out["tail_slope"] = self.tail_slope
        return out


@dataclass(frozen=True)
class ContractClass:
    tag: str
    d: float = 0.0

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ParameterOutOfRange(f"unknown contract class {self.tag!r}")
        if self.d < 0:
            raise ParameterOutOfRange(f"deductible {self.d} < 0")
        object.__setattr__(self, "d", float(self.d))

    def __str__(self) -> str:
        return f"I1d:{self.d!r}" if self.tag == "I1d" else self.tag


def parse_family(text: str) -> ContractClass:
    tag, _, d = text.strip().partition(":")
    try:
        if tag == "I1d":
            return ContractClass("I1d", float(d) if d else 0.0)
        if d:
            raise ParseError(f"family {tag} takes no parameter")
        return ContractClass(tag)
    except (ValueError, ParameterOutOfRange) as exc:
        raise ParseError(f"bad contract family {text!r}: {exc}") from exc


# -- evaluation -----------------------------------------------------------


def eval_contract(f: CededLossFunction, x: float) -> float:
    if x < 0:
        raise NegativeArgument(f"loss {x} < 0")
    return f(float(x))


# -- named forms ----------------------------------------------------------


def zero() -> CededLossFunction:
    return CededLossFunction(((0.0, 0.0),), 0.0)


def identity() -> CededLossFunction:
    return CededLossFunction(((0.0, 0.0),), 1.0)


def deductible_coinsurance(d: float, alpha: float) -> CededLossFunction:
    """``alpha * (x - d)_+``."""
    if d < 0 or not 0.0 <= alpha <= 1.0:
        raise ParameterOutOfRange(f"need d >= 0 and alpha in [0, 1], got d={d}, alpha={alpha}")
    knots = ((0.0, 0.0),) if d == 0 else ((0.0, 0.0), (float(d), 0.0))
    return CededLossFunction(knots, float(alpha))


def deductible_limit(d: float, u: float) -> CededLossFunction:
    """``min((x - d)_+, u)``: deductible ``d``, policy limit ``u``."""
    if d < 0 or u < 0:
        raise ParameterOutOfRange(f"need d >= 0 and u >= 0, got d={d}, u={u}")
    pts = [(0.0, 0.0), (float(d), 0.0), (float(d + u), float(u))]
    knots = []
    for x, y in pts:
        if not knots or x > knots[-1][0]:
            knots.append((x, y))
    return CededLossFunction(tuple(knots), 0.0)


def direct_deductible(d: float) -> CededLossFunction:
    return deductible_coinsurance(d, 1.0)


# -- class membership -----------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: float | None = None
    segment: tuple[float, float] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member


def _fail(reason: str, x: float, segment=None) -> MembershipResult:
    return MembershipResult(False, x, segment, reason)


def member_of(f: CededLossFunction, c: ContractClass, x_max: float | None = None) -> MembershipResult:
    """Exact membership of ``f`` in class ``c`` on [0, x_max].

    ``x_max`` defaults to the last knot plus one.
    """
    if x_max is None:
        x_max = f.knots[-1][0] + 1.0
    extra = (c.d,) if c.tag == "I1d" else ()
    pts = f.breakpoints(x_max, extra)
    # I0: f(x) <= x is linear on every segment, so endpoints decide
    for x, y in pts:
        if y > x:
            return _fail("f(x) > x", x)
    if c.tag == "I0":
        return MembershipResult(True)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y1 < y0:
            return _fail("decreasing segment", x1, (x0, x1))
    if c.tag == "I2":
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if y1 - y0 > x1 - x0:
                return _fail("slope above 1", x1, (x0, x1))
    if c.tag == "I1d":
        for x, y in pts:
            if y > max(x - c.d, 0.0):
                return _fail("f(x) > (x - d)_+", x)
    return MembershipResult(True)


# -- pushforwards ---------------------------------------------------------


def _require_nonnegative(X: DiscreteDistribution) -> None:
    if not X.is_nonnegative():
        raise NotNonnegativeLoss(f"loss distribution has negative support {X.values[0]}")


def ceded(f: CededLossFunction, X: DiscreteDistribution) -> DiscreteDistribution:
    _require_nonnegative(X)
    return canonicalize((f(v), p) for v, p in X.atoms)


def retained(f: CededLossFunction, X: DiscreteDistribution) -> DiscreteDistribution:
    _require_nonnegative(X)
    return canonicalize((v - f(v), p) for v, p in X.atoms)


def split_joint(f: CededLossFunction, X: DiscreteDistribution) -> JointSample:
    """Coupled pair ``(f(X), X - f(X))``, one state per atom of ``X``."""
    _require_nonnegative(X)
    return JointSample(tuple((f(v), v - f(v), p) for v, p in X.atoms))


# -- parsing --------------------------------------------------------------


def contract_from_dict(data: dict) -> CededLossFunction:
    try:
        return CededLossFunction.from_points(data["knots"], data.get("tail_slope"))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad contract object: {exc}") from exc


def parse_contract(spec: str, base_dir: str | Path | None = None) -> CededLossFunction:
    """Parse ``zero``, ``id``, ``ded:d*alpha``, ``dedlim:d^u`` or a JSON file path."""
    spec = spec.strip()
    try:
        if spec == "zero":
            return zero()
        if spec == "id":
            return identity()
        if spec.startswith("ded:"):
            d, star, alpha = spec[4:].partition("*")
            return deductible_coinsurance(float(d), float(alpha) if star else 1.0)
        if spec.startswith("dedlim:"):
            d, caret, u = spec[7:].partition("^")
            if not caret:
                raise ParseError(f"policy limit missing in {spec!r}")
            return deductible_limit(float(d), float(u))
    except (ValueError, ParameterOutOfRange) as exc:
        raise ParseError(f"bad contract {spec!r}: {exc}") from exc
    path = Path(spec)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    if path.suffix.lower() != ".json":
        raise ParseError(f"unknown contract {spec!r}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read contract {spec}: {exc}") from exc
    try:
        return contract_from_dict(data)
    except InvalidContract as exc:
        raise ParseError(str(exc)) from exc
