"""
Admissible Minkowski decompositions of cone cross-sections.

A summand is described by how much of each parent boundary edge it takes:
a multiplicity vector over the parent's primitive edge directions. Every
summand vertex sits above a parent vertex, and a decomposition is
admissible when above each parent vertex at most one summand vertex is
non-lattice.

The enumerator assigns an owner summand to every non-lattice parent vertex.
That fixes all summand multiplicities modulo 1; the integer parts are then
split exhaustively.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cone import Cone3, SlicePolyhedron, cross_section
from .exact import extended_gcd, scale_to_primitive

logger = logging.getLogger(__name__)

DEFAULT_MAX_TERMS = 4
DEFAULT_DENOMINATOR_BOUND = 6

Point2 = Tuple[Fraction, Fraction]


class DeformError(ValueError):
    """Invalid input to the decomposition search."""


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _frac2(p: Sequence[Fraction]) -> Point2:
    return (_frac(p[0]), _frac(p[1]))


@dataclass(frozen=True)
class ParentEdge:
    """Boundary edge of the parent: multiplicity * primitive direction."""

    direction: Tuple[int, int]
    multiplicity: Fraction


def parent_edges(s: SlicePolyhedron) -> Tuple[ParentEdge, ...]:
    """Primitive direction and rational multiplicity of each boundary edge of the slice."""
    edges = []
    for k, vec in enumerate(s.boundary_edges()):
        if vec == (0, 0):
            raise DeformError(f"slice has a degenerate edge at position {k + 1}")
        d = scale_to_primitive(vec)
        m = vec[0] / d[0] if d[0] else vec[1] / d[1]
        edges.append(ParentEdge((d[0], d[1]), Fraction(m)))
    return tuple(edges)


@dataclass(frozen=True)
class Summand:
    """One Minkowski summand; vertices are normalized so the lexicographically
    smallest one is the origin."""

    multiplicities: Tuple[Fraction, ...]
    directions: Tuple[Tuple[int, int], ...]
    tail_rays: Tuple[Tuple[int, int], ...] = ()

    @property
    def edge_vectors(self) -> Tuple[Point2, ...]:
        return tuple(
            (m * d[0], m * d[1]) for m, d in zip(self.multiplicities, self.directions) if m
        )

    @property
    def vertices(self) -> Tuple[Point2, ...]:
        points = [(Fraction(0), Fraction(0))]
        for vx, vy in self.edge_vectors:
            x, y = points[-1]
            points.append((x + vx, y + vy))
        if len(points) > 1 and points[-1] == points[0]:
            points.pop()
        anchor = min(points)
        return tuple((x - anchor[0], y - anchor[1]) for x, y in points)

    @property
    def denominator(self) -> int:
        return max((m.denominator for m in self.multiplicities), default=1)


@dataclass(frozen=True)
class MinkowskiDecomposition:
    """Summands in canonical order; the first one carries the parent's tail."""

    edges: Tuple[ParentEdge, ...]
    summands: Tuple[Summand, ...]

    @property
    def term_count(self) -> int:
        return len(self.summands)

    @property
    def key(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(s.multiplicities for s in self.summands)


def _make_decomposition(
    edges: Tuple[ParentEdge, ...],
    vectors: Sequence[Tuple[Fraction, ...]],
    tail_rays: Tuple[Tuple[int, int], ...],
) -> MinkowskiDecomposition:
    directions = tuple(e.direction for e in edges)
    ordered = sorted(tuple(v) for v in vectors)
    summands = tuple(
        Summand(v, directions, tail_rays if i == 0 else ()) for i, v in enumerate(ordered)
    )
    return MinkowskiDecomposition(edges, summands)


def _closes(vector: Sequence[Fraction], edges: Sequence[ParentEdge]) -> bool:
    return (
        sum((m * e.direction[0] for m, e in zip(vector, edges)), Fraction(0)) == 0
        and sum((m * e.direction[1] for m, e in zip(vector, edges)), Fraction(0)) == 0
    )


def _owner_assignments(count: int, terms: int) -> Iterator[Tuple[int, ...]]:
    """Owner labels in first-occurrence order, one per non-lattice vertex."""
    def extend(prefix: Tuple[int, ...], used: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == count:
            yield prefix
            return
        for owner in range(min(used + 1, terms)):
            yield from extend(prefix + (owner,), max(used, owner + 1))
    yield from extend((), 0)


def _edge_residue(direction: Tuple[int, int], delta: Point2) -> Optional[Fraction]:
    """r in [0, 1) with r * direction = delta mod Z^2, or None."""
    _, x, y = extended_gcd(direction[0], direction[1])
    r = _frac(x * delta[0] + y * delta[1])
    if ((r * direction[0] - delta[0]).denominator, (r * direction[1] - delta[1]).denominator) != (1, 1):
        return None
    return r


def _integer_splits(
    residues: Sequence[Sequence[Fraction]],
    integer_parts: Sequence[int],
    edges: Sequence[ParentEdge],
    bounded: bool,
) -> Iterator[List[Tuple[Fraction, ...]]]:
    """Split integer parts among summands with the given residues."""
    terms = len(residues)

    def valid(vector: Tuple[Fraction, ...]) -> bool:
        return any(vector) and (not bounded or _closes(vector, edges))

    def search(i: int, remaining: Tuple[int, ...], chosen: List[Tuple[Fraction, ...]]):
        if i == terms - 1:
            last = tuple(r + n for r, n in zip(residues[i], remaining))
            if valid(last):
                yield chosen + [last]
            return
        for split in product(*(range(b + 1) for b in remaining)):
            vector = tuple(r + n for r, n in zip(residues[i], split))
            if not valid(vector):
                continue
            rest = tuple(b - n for b, n in zip(remaining, split))
            yield from search(i + 1, rest, chosen + [vector])

    yield from search(0, tuple(integer_parts), [])


def enumerate_decompositions(
    s: SlicePolyhedron,
    max_terms: int = DEFAULT_MAX_TERMS,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> List[MinkowskiDecomposition]:
    """All admissible decompositions within the bounds, in canonical order.

    The one-term decomposition is always included. Decompositions with two
    or more terms use only nontrivial summands whose multiplicities have
    denominators at most ``denominator_bound``.
    """
    if max_terms < 1 or denominator_bound < 1:
        raise DeformError("max_terms and denominator_bound must be positive")
    edges = parent_edges(s)
    vertices = s.compact_vertices
    bounded = s.bounded
    n_vertices = len(vertices)
    phases = [_frac2(v) for v in vertices]
    nonlattice = [j for j, ph in enumerate(phases) if ph != (0, 0)]
    zero = (Fraction(0), Fraction(0))

    found: Dict[Tuple, MinkowskiDecomposition] = {}
    trivial = _make_decomposition(edges, [tuple(e.multiplicity for e in edges)], s.tail_rays)
    found[trivial.key] = trivial

    for terms in range(2, max_terms + 1):
        before = len(found)
        for owners in _owner_assignments(len(nonlattice), terms):
            owner_of = dict(zip(nonlattice, owners))
            residues: List[List[Fraction]] = []
            for i in range(terms):
                row = []
                for j, edge in enumerate(edges):
                    j_next = (j + 1) % n_vertices
                    g0 = phases[j] if owner_of.get(j) == i else zero
                    g1 = phases[j_next] if owner_of.get(j_next) == i else zero
                    r = _edge_residue(edge.direction, (g1[0] - g0[0], g1[1] - g0[1]))
                    if r is None or r.denominator > denominator_bound:
                        break
                    row.append(r)
                else:
                    residues.append(row)
                    continue
                break
            if len(residues) != terms:
                continue
            integer_parts = []
            for j, edge in enumerate(edges):
                left = edge.multiplicity - sum(row[j] for row in residues)
                if left.denominator != 1 or left < 0:
                    break
                integer_parts.append(int(left))
            else:
                for vectors in _integer_splits(residues, integer_parts, edges, bounded):
                    dec = _make_decomposition(edges, vectors, s.tail_rays)
                    found.setdefault(dec.key, dec)
        logger.debug("%d-term search found %d new decompositions", terms, len(found) - before)

    return sorted(found.values(), key=lambda d: (d.term_count, d.key))


def max_term_count(
    s: SlicePolyhedron,
    max_terms: int = DEFAULT_MAX_TERMS,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> int:
    return max(d.term_count for d in enumerate_decompositions(s, max_terms, denominator_bound))


def resum(dec: MinkowskiDecomposition) -> Tuple[Tuple[Fraction, ...], Tuple[Tuple[int, int], ...]]:
    """Per-edge multiplicity totals and the tail of the Minkowski sum."""
    totals = tuple(
        sum((s.multiplicities[j] for s in dec.summands), Fraction(0)) for j in range(len(dec.edges))
    )
    tails: Tuple[Tuple[int, int], ...] = ()
    for s in dec.summands:
        if s.tail_rays:
            tails = s.tail_rays
    return totals, tails


def is_admissible(dec: MinkowskiDecomposition, s: SlicePolyhedron) -> bool:
    """Check a decomposition against a slice by searching summand translations.

    Independent of the enumerator: tries translations (mod Z^2) that make
    each summand lattice or equal to the parent phase at some vertex.
    """
    edges = parent_edges(s)
    if tuple(e.direction for e in edges) != tuple(e.direction for e in dec.edges):
        return False
    totals, tails = resum(dec)
    if totals != tuple(e.multiplicity for e in edges) or tails != tuple(s.tail_rays):
        return False
    if s.bounded and not all(_closes(sm.multiplicities, edges) for sm in dec.summands):
        return False
    if any(m < 0 for sm in dec.summands for m in sm.multiplicities):
        return False

    n_vertices = len(s.compact_vertices)
    phases = [_frac2(v) for v in s.compact_vertices]
    partials: List[List[Point2]] = []
    for sm in dec.summands:
        x = y = Fraction(0)
        row = [(x, y)]
        for j in range(n_vertices - 1):
            m, d = sm.multiplicities[j], edges[j].direction
            x, y = x + m * d[0], y + m * d[1]
            row.append((x, y))
        partials.append(row)

    def candidates(i: int) -> List[Point2]:
        out = set()
        for j in range(n_vertices):
            p = partials[i][j]
            out.add(_frac2((-p[0], -p[1])))
            out.add(_frac2((phases[j][0] - p[0], phases[j][1] - p[1])))
        return sorted(out)

    terms = len(dec.summands)
    for shifts in product(*(candidates(i) for i in range(terms - 1))):
        last = _frac2((
            phases[0][0] - sum(t[0] for t in shifts),
            phases[0][1] - sum(t[1] for t in shifts),
        ))
        taus = list(shifts) + [last]
        if all(
            sum(
                1
                for i in range(terms)
                if _frac2((taus[i][0] + partials[i][j][0], taus[i][1] + partials[i][j][1])) != (0, 0)
            ) <= 1
            for j in range(n_vertices)
        ):
            return True
    return False


@dataclass(frozen=True)
class WeightDeformation:
    weight: Tuple[int, ...]
    term_count: int
    decomposition_count: int
    witness: MinkowskiDecomposition

    @property
    def dimension(self) -> int:
        return self.term_count - 1


@dataclass(frozen=True)
class DeformationReport:
    entries: Tuple[WeightDeformation, ...]
    max_terms: int
    denominator_bound: int

    @property
    def total_dimension(self) -> int:
        return sum(e.dimension for e in self.entries)


def deformation_dimensions(
    c: Cone3,
    weights: Sequence[Sequence[int]],
    max_terms: int = DEFAULT_MAX_TERMS,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> DeformationReport:
    """Dimension per weight = maximal admissible term count - 1.

    Raises:
        EmptySlice: if some weight does not meet the cone.
    """
    entries = []
    for weight in weights:
        s = cross_section(c, weight)
        decompositions = enumerate_decompositions(s, max_terms, denominator_bound)
        best = max(decompositions, key=lambda d: d.term_count)
        logger.debug("weight %s: %d decompositions, max %d terms", tuple(weight), len(decompositions), best.term_count)
        entries.append(WeightDeformation(tuple(weight), best.term_count, len(decompositions), best))
    return DeformationReport(tuple(entries), max_terms, denominator_bound)
