"""Comonotonicity and common tail events on finite joint laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .dist import DiscreteDistribution, JointSample
from .errors import InfeasibleMass, InvalidLevel

MASS_TOL = 1e-12


@dataclass(frozen=True)
class ComonotonicityReport:
    comonotonic: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.comonotonic


def is_comonotonic(J: JointSample) -> ComonotonicityReport:
    """Pairwise check ``(x_i - x_j)(y_i - y_j) >= 0`` over all states."""
    for i, j in combinations(range(len(J)), 2):
        xi, yi, _ = J.atoms[i]
        xj, yj, _ = J.atoms[j]
        if (xi - xj) * (yi - yj) < 0:
            return ComonotonicityReport(False, (i, j))
    return ComonotonicityReport(True)


@dataclass(frozen=True)
class TailEventReport:
    exists: bool
    event: tuple[int, ...] | None
    level: float

    def __bool__(self) -> bool:
        return self.exists


def _is_common_tail(J: JointSample, A: set[int]) -> bool:
    inside = [J.atoms[i] for i in A]
    outside = [J.atoms[i] for i in range(len(J)) if i not in A]
    if not inside or not outside:
        return False
    for k in (0, 1):
        if min(a[k] for a in inside) < max(a[k] for a in outside):
            return False
    return True


def _subsets_with_mass(items: list[int], probs: tuple[float, ...], target: float):
    """Yield subsets of ``items`` whose mass is within MASS_TOL of ``target``."""
    if target < -MASS_TOL:
        return
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            if abs(math.fsum(probs[i] for i in combo) - target) <= MASS_TOL:
                yield combo


def _mass_feasible(probs: tuple[float, ...], target: float) -> bool:
    reachable = {0.0}
    for p in probs:
        reachable |= {round(s + p, 12) for s in reachable if s + p <= target + MASS_TOL}
    return any(abs(s - target) <= MASS_TOL for s in reachable)


def find_common_p_tail(J: JointSample, p: float) -> TailEventReport:
    """Find an event of mass ``1 - p`` that is a tail event of both coordinates.

    Any common tail event has the form ``{x > v} u {x = v, y > w} u T`` with
    ``T`` a subset of the states equal to ``(v, w)``; the sweep visits ``v``
    and then ``w`` in descending order and solves a subset-sum over ``T``.
    Raises ``InfeasibleMass`` when no set of states carries mass ``1 - p``.
    """
    if not 0.0 < p < 1.0:
        raise InvalidLevel(f"tail level {p} outside (0, 1)")
    target = 1.0 - p
    probs = J.probs
    n = len(J)
    for v in sorted({a[0] for a in J.atoms}, reverse=True):
        above = [i for i in range(n) if J.atoms[i][0] > v]
        tie = [i for i in range(n) if J.atoms[i][0] == v]
        for w in sorted({J.atoms[i][1] for i in tie}, reverse=True):
            base = above + [i for i in tie if J.atoms[i][1] > w]
            group = [i for i in tie if J.atoms[i][1] == w]
            rest = target - math.fsum(probs[i] for i in base)
            for T in _subsets_with_mass(group, probs, rest):
                A = set(base) | set(T)
                if _is_common_tail(J, A):
                    return TailEventReport(True, tuple(sorted(A)), p)
    if not _mass_feasible(probs, target):
        raise InfeasibleMass(f"no set of states has probability {target!r}")
    return TailEventReport(False, None, p)


def is_p_concentrated(J: JointSample, p: float) -> bool:
    return find_common_p_tail(J, p).exists


def product_embed(X: DiscreteDistribution, q: float) -> JointSample:
    """Law of ``(X 1_A, 1_A)`` with ``A`` independent of ``X`` and ``P(A) = q``."""
    if not 0.0 < q < 1.0:
        raise InvalidLevel(f"event probability {q} outside (0, 1)")
    atoms = []
    for v, p in X.atoms:
        atoms.append((v, 1.0, p * q))
        atoms.append((0.0, 0.0, p * (1.0 - q)))
    return JointSample.from_atoms(atoms)
