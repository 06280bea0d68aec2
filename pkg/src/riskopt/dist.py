"""Finite discrete loss distributions and their quantile functionals.

A ``DiscreteDistribution`` is an immutable, canonical list of atoms: values
strictly increasing, probabilities positive and summing to one.  Every risk
functional in the package is computed exactly from these atoms, never by
sampling.

Quantiles follow the left-continuous convention ``inf{x : P(X <= x) >= p}``;
at a level that coincides with a cumulative mass the lower atom is returned.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import (
    InvalidLevel,
    NegativeProbability,
    NegativeScale,
    NonFiniteValue,
    ParseError,
    ProbabilityMassMismatch,
)

MASS_TOL = 1e-9
MERGE_TOL = 1e-12
# absorbs float accumulation when a level sits exactly on a cumulative mass
LEVEL_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.probs) or not self.values:
            raise ProbabilityMassMismatch("values and probs must be non-empty and of equal length")

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[float, float]]) -> "DiscreteDistribution":
        return canonicalize(atoms)

    @classmethod
    def point(cls, c: float) -> "DiscreteDistribution":
        return cls((float(c),), (1.0,))

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.values, self.probs))

    @property
    def size(self) -> int:
        return len(self.values)

    def cdf(self) -> tuple[float, ...]:
        """Cumulative masses ``P(X <= x_i)``, last entry pinned to 1."""
        cum = list(accumulate(self.probs))
        cum[-1] = 1.0
        return tuple(cum)

    def prob_le(self, x: float) -> float:
        return math.fsum(p for v, p in zip(self.values, self.probs) if v <= x)

    def is_nonnegative(self) -> bool:
        return self.values[0] >= 0.0

    def __repr__(self) -> str:
        body = ", ".join(f"{v:g}:{p:g}" for v, p in self.atoms)
        return f"DiscreteDistribution({{{body}}})"


def canonicalize(atoms: Iterable[tuple[float, float]]) -> DiscreteDistribution:
    """Merge duplicate values, drop null atoms, sort and renormalize.

    Values closer than ``MERGE_TOL`` (absolute) are merged into the smaller
    one.  The total mass must be within ``MASS_TOL`` of one.
    """
    pairs = [(float(v), float(p)) for v, p in atoms]
    for v, p in pairs:
        if not math.isfinite(v) or not math.isfinite(p):
            raise NonFiniteValue(f"non-finite atom ({v}, {p})")
        if p < 0:
            raise NegativeProbability(f"negative probability {p} at value {v}")
    total = math.fsum(p for _, p in pairs)
    if abs(total - 1.0) > MASS_TOL:
        raise ProbabilityMassMismatch(f"probabilities sum to {total!r}, expected 1")
    pairs = sorted((v, p) for v, p in pairs if p > 0)
    values: list[float] = []
    probs: list[list[float]] = []
    for v, p in pairs:
        if values and v - values[-1] <= MERGE_TOL:
            probs[-1].append(p)
        else:
            values.append(v)
            probs.append([p])
    merged = [math.fsum(group) for group in probs]
    total = math.fsum(merged)
    return DiscreteDistribution(tuple(values), tuple(p / total for p in merged))


def _check_open(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise InvalidLevel(f"level {p} outside (0, 1)")


def var(X: DiscreteDistribution, p: float) -> float:
    """Left quantile ``inf{x : P(X <= x) >= p}`` for ``p`` in (0, 1)."""
    _check_open(p)
    for v, F in zip(X.values, X.cdf()):
        if F >= p - LEVEL_TOL:
            return v
    return X.values[-1]


def _upper_tail_sum(X: DiscreteDistribution, p: float) -> float:
    # integral of the quantile function over (p, 1]
    total = []
    prev = 0.0
    for v, F in zip(X.values, X.cdf()):
        w = F - max(prev, p)
        if w > 0:
            total.append(v * w)
        prev = F
    return math.fsum(total)


def _lower_tail_sum(X: DiscreteDistribution, p: float) -> float:
    total = []
    prev = 0.0
    for v, F in zip(X.values, X.cdf()):
        w = min(F, p) - prev
        if w > 0:
            total.append(v * w)
        prev = F
    return math.fsum(total)


def es(X: DiscreteDistribution, p: float) -> float:
    """Expected Shortfall: mean of the quantile function over (p, 1)."""
    if not 0.0 <= p < 1.0:
        raise InvalidLevel(f"ES level {p} outside [0, 1)")
    return _upper_tail_sum(X, p) / (1.0 - p)


def left_es(X: DiscreteDistribution, p: float) -> float:
    """Left Expected Shortfall: mean of the quantile function over (0, p)."""
    if not 0.0 < p <= 1.0:
        raise InvalidLevel(f"left-ES level {p} outside (0, 1]")
    return _lower_tail_sum(X, p) / p


def mean(X: DiscreteDistribution) -> float:
    return math.fsum(v * p for v, p in zip(X.values, X.probs))


def transform(X: DiscreteDistribution, g: Callable[[float], float]) -> DiscreteDistribution:
    return canonicalize((g(v), p) for v, p in zip(X.values, X.probs))


def shift(X: DiscreteDistribution, c: float) -> DiscreteDistribution:
    return canonicalize((v + c, p) for v, p in zip(X.values, X.probs))


def scale(X: DiscreteDistribution, lam: float) -> DiscreteDistribution:
    if lam < 0:
        raise NegativeScale(f"scale factor {lam} < 0")
    return canonicalize((lam * v, p) for v, p in zip(X.values, X.probs))


@dataclass(frozen=True)
class Membership:
    """Where ``X`` sits relative to a deductible ``d``.

    ``level`` is ``P(X <= d)``.  Every X belongs to the level class of its own
    ``level``; the deductible class additionally needs a nonnegative X.
    """

    nonnegative: bool
    level: float
    d: float

    @property
    def in_deductible_class(self) -> bool:
        return self.nonnegative

    @property
    def nondegenerate(self) -> bool:
        return self.level < 1.0


def membership_class(X: DiscreteDistribution, d: float) -> Membership:
    return Membership(X.is_nonnegative(), X.prob_le(d), float(d))


@dataclass(frozen=True)
class JointSample:
    """Finite joint law of a pair, one atom per state of a shared space.

    Atoms are not merged: two states with equal coordinates stay distinct,
    which matters when searching for events of a given mass.
    """

    atoms: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ProbabilityMassMismatch("empty joint sample")
        for x, y, p in self.atoms:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise NonFiniteValue(f"non-finite atom ({x}, {y})")
            if p <= 0:
                raise NegativeProbability(f"joint atom probability {p} must be > 0")
        total = math.fsum(a[2] for a in self.atoms)
        if abs(total - 1.0) > MASS_TOL:
            raise ProbabilityMassMismatch(f"joint probabilities sum to {total!r}")

    @classmethod
    def from_atoms(cls, atoms: Iterable[Sequence[float]]) -> "JointSample":
        kept = [(float(x), float(y), float(p)) for x, y, p in atoms if p > 0]
        total = math.fsum(a[2] for a in kept)
        if abs(total - 1.0) > MASS_TOL:
            raise ProbabilityMassMismatch(f"joint probabilities sum to {total!r}")
        return cls(tuple((x, y, p / total) for x, y, p in kept))

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(a[2] for a in self.atoms)

    def push(self, fn: Callable[[float, float], float]) -> DiscreteDistribution:
        return canonicalize((fn(x, y), p) for x, y, p in self.atoms)

    def first(self) -> DiscreteDistribution:
        return self.push(lambda x, y: x)

    def second(self) -> DiscreteDistribution:
        return self.push(lambda x, y: y)

    def total(self) -> DiscreteDistribution:
        return self.push(lambda x, y: x + y)

    def swap(self) -> "JointSample":
        return JointSample(tuple((y, x, p) for x, y, p in self.atoms))

    def to_list(self) -> list[list[float]]:
        return [list(a) for a in self.atoms]


# -- file formats ---------------------------------------------------------


def distribution_to_dict(X: DiscreteDistribution) -> dict:
    return {"atoms": [[v, p] for v, p in X.atoms]}


def distribution_from_dict(data: dict) -> DiscreteDistribution:
    try:
        atoms = [(float(v), float(p)) for v, p in data["atoms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad distribution object: {exc}") from exc
    return canonicalize(atoms)


def distribution_digest(X: DiscreteDistribution) -> str:
    payload = json.dumps(distribution_to_dict(X), separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def parse_csv(text: str) -> DiscreteDistribution:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["value", "probability"]:
        raise ParseError("CSV header must be 'value,probability'")
    atoms = []
    for lineno, row in enumerate(reader, start=2):
        try:
            atoms.append((float(row["value"]), float(row["probability"])))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if not atoms:
        raise ParseError("CSV has no atoms")
    return canonicalize(atoms)


def load_distribution(path: str | Path) -> DiscreteDistribution:
    """Read a CSV (``value,probability``) or JSON (``{"atoms": ...}``) file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
        return distribution_from_dict(data)
    return parse_csv(text)
