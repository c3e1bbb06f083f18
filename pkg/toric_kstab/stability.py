"""
Polystability of torus weight-space points (Hilbert-Mumford for tori).

A point of a sum of weight spaces is recorded only by its support, the set
of weights R whose component is nonzero. Its torus orbit is closed exactly
when 0 lies in the relative interior of the convex hull of the support.
Every point is semistable (the origin is always a limit), so the verdict is
polystable or semistable-but-not-polystable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .exact import LatticeVector, dot, positive_functional

logger = logging.getLogger(__name__)

# Largest weight list orbit_table will enumerate patterns for
MAX_ORBIT_TABLE_WEIGHTS = 12


class StabilityError(ValueError):
    """Inconsistent stability input."""


class Verdict(Enum):
    POLYSTABLE = "polystable"
    SEMISTABLE_NOT_POLYSTABLE = "semistable-not-polystable"

    @property
    def label(self) -> str:
        return "Polystable" if self is Verdict.POLYSTABLE else "SemistableNotPolystable"


@dataclass(frozen=True)
class WeightedPoint:
    """Support of a point in a sum of weight spaces."""

    support: FrozenSet[LatticeVector]
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise StabilityError(f"rank must be positive, got {self.rank}")
        for w in self.support:
            if len(w) != self.rank:
                raise StabilityError(f"weight {w} does not have rank {self.rank}")

    @classmethod
    def of(cls, weights: Iterable[Sequence[int]], rank: Optional[int] = None) -> "WeightedPoint":
        support = frozenset(tuple(int(x) for x in w) for w in weights)
        if rank is None:
            ranks = {len(w) for w in support}
            if len(ranks) > 1:
                raise StabilityError(f"weights of mixed rank: {sorted(support)}")
            if not ranks:
                raise StabilityError("rank is required for an empty support")
            rank = ranks.pop()
        return cls(support, rank)

    def sorted_support(self) -> List[LatticeVector]:
        return sorted(self.support)


@dataclass(frozen=True)
class Destabilizer:
    """One-parameter subgroup lambda with <lambda, R> >= 0 on the support."""

    subgroup: LatticeVector
    limit_support: FrozenSet[LatticeVector]


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Verdict
    destabilizer: Optional[Destabilizer] = None

    def __post_init__(self):
        if (self.destabilizer is None) != (self.verdict is Verdict.POLYSTABLE):
            raise StabilityError("a destabilizer is present exactly for non-polystable verdicts")

    @property
    def is_polystable(self) -> bool:
        return self.verdict is Verdict.POLYSTABLE


def classify(p: WeightedPoint) -> StabilityVerdict:
    """Decide polystability of a support exactly.

    positive_functional finds a functional nonnegative on the support and
    positive on as many weights as possible. If it is positive on none, 0 lies in the
    relative interior of the hull; otherwise it is a destabilizing
    one-parameter subgroup and the weights it kills form the limit.
    """
    weights = p.sorted_support()
    if not weights:
        return StabilityVerdict(Verdict.POLYSTABLE)
    result = positive_functional(weights)
    if result.functional is None:
        return StabilityVerdict(Verdict.POLYSTABLE)
    limit = frozenset(weights[i] for i in result.zero_set)
    logger.debug("support %s destabilized by %s, limit %s", weights, result.functional, sorted(limit))
    return StabilityVerdict(
        Verdict.SEMISTABLE_NOT_POLYSTABLE,
        Destabilizer(result.functional, limit),
    )


def limit_point(p: WeightedPoint, subgroup: Sequence[int]) -> WeightedPoint:
    """Support of lim_{t -> 0} lambda(t) . x.

    Components of weight R scale by t^<lambda, R>; the limit exists when all
    pairings are nonnegative and keeps the weights of pairing zero.
    """
    if len(subgroup) != p.rank:
        raise StabilityError(f"subgroup {tuple(subgroup)} does not have rank {p.rank}")
    pairings = {w: dot(subgroup, w) for w in p.support}
    negative = sorted(w for w, v in pairings.items() if v < 0)
    if negative:
        raise StabilityError(f"limit does not exist: weights {negative} pair negatively")
    return WeightedPoint(frozenset(w for w, v in pairings.items() if v == 0), p.rank)


def replay(p: WeightedPoint, verdict: StabilityVerdict) -> Optional[StabilityVerdict]:
    """Follow a destabilizer to its limit and classify the limit point."""
    if verdict.destabilizer is None:
        return None
    limit = limit_point(p, verdict.destabilizer.subgroup)
    if limit.support != verdict.destabilizer.limit_support:
        raise StabilityError("destabilizer limit support does not match its pairings")
    return classify(limit)


def real_structure_polystable(weights: Sequence[Tuple[Sequence[int], bool]]) -> bool:
    """Polystability of a point whose support pairs some weights with their negatives.

    Args:
        weights: (R, paired) entries; paired adds -R to the support, as
            for decomposable real points of a conjugation-symmetric
            weight decomposition.

    Returns:
        True if the support classifies polystable.
    """
    support = set()
    rank = None
    for w, paired in weights:
        w = tuple(int(x) for x in w)
        rank = len(w)
        support.add(w)
        if paired:
            support.add(tuple(-x for x in w))
    if rank is None:
        return True
    point = WeightedPoint.of(support, rank)
    verdict = classify(point)
    closed = all(tuple(-x for x in w) in point.support for w in point.support)
    if closed and not verdict.is_polystable:
        raise StabilityError(f"negation-closed support {point.sorted_support()} classified unstable")
    return verdict.is_polystable


@dataclass(frozen=True)
class OrbitRow:
    """One coordinate pattern: which weight components are nonzero."""

    pattern: Tuple[bool, ...]
    verdict: StabilityVerdict


def orbit_table(weights: Sequence[Sequence[int]]) -> List[OrbitRow]:
    """Classify every zero/nonzero pattern of a point in the sum of V(R).

    Zero weights (a component on which the torus acts trivially) are
    allowed and never destabilize.
    """
    weights = [tuple(int(x) for x in w) for w in weights]
    if not weights:
        return []
    if len(weights) > MAX_ORBIT_TABLE_WEIGHTS:
        raise StabilityError(f"orbit table limited to {MAX_ORBIT_TABLE_WEIGHTS} weights")
    if len(set(weights)) != len(weights):
        raise StabilityError("orbit table weights must be distinct")
    rank = len(weights[0])
    rows = []
    for pattern in product((False, True), repeat=len(weights)):
        support = [w for w, on in zip(weights, pattern) if on]
        rows.append(OrbitRow(pattern, classify(WeightedPoint.of(support, rank))))
    return rows
