"""
Exact arithmetic for toric computations.

Quadratic surd sums (rational combinations of square roots of squarefree
integers) with a structural zero test and certified signs, plus the small
lattice linear algebra the polygon and cone code is built on.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce, total_ordering
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

logger = logging.getLogger(__name__)

# Trial division bound for squarefree splitting of radicands
TRIAL_DIVISION_LIMIT = 10 ** 6

# Working precision (bits) of the first sign enclosure
START_BITS = 64

Rational = Union[int, Fraction]
LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


class ExactError(ValueError):
    """Base class for exact arithmetic errors."""


class RadicandTooLarge(ExactError):
    """A radicand has a cofactor beyond trial division that cannot be split."""


class ZeroVectorError(ExactError):
    """A zero vector was given where a direction is required."""


def squarefree_split(n: int) -> Tuple[int, int]:
    """Split a positive integer as n = s**2 * d with d squarefree.

    Args:
        n: Positive integer radicand.

    Returns:
        Tuple (s, d).

    Raises:
        RadicandTooLarge: when a factor above the trial division bound is
            neither prime nor the square of a prime.
    """
    if n < 1:
        raise ExactError(f"radicand must be positive, got {n}")
    square, free = 1, 1
    for p, e in sympy.factorint(n, limit=TRIAL_DIVISION_LIMIT).items():
        if p > TRIAL_DIVISION_LIMIT and not sympy.isprime(p):
            root = math.isqrt(p)
            if root * root != p or not sympy.isprime(root):
                raise RadicandTooLarge(
                    f"cannot split radicand {n}: cofactor {p} is beyond trial division"
                )
            p, e = root, 2 * e
        square *= p ** (e // 2)
        if e % 2:
            free *= p
    return square, free


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@total_ordering
class SurdSum:
    """Exact element sum(c_d * sqrt(d)) with rational c_d and squarefree d.

    Terms are kept in canonical form (squarefree keys, no zero coefficients),
    so two values are equal exactly when their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[int, Rational]] = None):
        canonical: Dict[int, Fraction] = {}
        for radicand, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            square, free = squarefree_split(radicand)
            canonical[free] = canonical.get(free, Fraction(0)) + coeff * square
        self._terms: Tuple[Tuple[int, Fraction], ...] = tuple(
            sorted((d, c) for d, c in canonical.items() if c != 0)
        )

    @classmethod
    def _from_canonical(cls, terms: Dict[int, Fraction]) -> "SurdSum":
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((d, c) for d, c in terms.items() if c != 0))
        return obj

    @classmethod
    def rational(cls, value: Rational) -> "SurdSum":
        return cls({1: value})

    @classmethod
    def sqrt_of_rational(cls, value: Rational) -> "SurdSum":
        """Exact square root of a nonnegative rational."""
        value = _as_fraction(value)
        if value < 0:
            raise ExactError(f"square root of negative rational {value}")
        if value == 0:
            return cls()
        return surd_normalize(Fraction(1, value.denominator), value.numerator * value.denominator)

    @classmethod
    def coerce(cls, value: Union["SurdSum", Rational]) -> "SurdSum":
        if isinstance(value, SurdSum):
            return value
        return cls.rational(value)

    @classmethod
    def parse(cls, text: str) -> "SurdSum":
        """Parse printed forms like ``12/115 + 8√10/345 - 2*sqrt(5)/115``."""
        compact = text.replace(" ", "").replace("−", "-")
        if not compact:
            raise ExactError("empty surd expression")
        if compact[0] not in "+-":
            compact = "+" + compact
        pattern = re.compile(
            r"([+-])(\d+)?\*?(?:(?:√|sqrt\()(\d+)\)?)?(?:/(\d+))?"
        )
        terms: Dict[int, Fraction] = {}
        pos = 0
        while pos < len(compact):
            match = pattern.match(compact, pos)
            if not match or match.end() == pos or (match.group(2) is None and match.group(3) is None):
                raise ExactError(f"cannot parse surd expression {text!r}")
            sign, num, radicand, den = match.groups()
            coeff = Fraction(int(num) if num else 1, int(den) if den else 1)
            if sign == "-":
                coeff = -coeff
            d = int(radicand) if radicand else 1
            terms[d] = terms.get(d, Fraction(0)) + coeff
            pos = match.end()
        return cls(terms)

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    @property
    def is_rational(self) -> bool:
        return all(d == 1 for d, _ in self._terms)

    def rational_part(self) -> Fraction:
        return dict(self._terms).get(1, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __hash__(self) -> int:
        return hash(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other: Union["SurdSum", Rational]) -> bool:
        return surd_sign(self - SurdSum.coerce(other)) < 0

    def __neg__(self) -> "SurdSum":
        return SurdSum._from_canonical({d: -c for d, c in self._terms})

    def __add__(self, other: Union["SurdSum", Rational]) -> "SurdSum":
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        merged = dict(self._terms)
        for d, c in other._terms:
            merged[d] = merged.get(d, Fraction(0)) + c
        return SurdSum._from_canonical(merged)

    __radd__ = __add__

    def __sub__(self, other: Union["SurdSum", Rational]) -> "SurdSum":
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> "SurdSum":
        return SurdSum.rational(other) - self

    def __mul__(self, other: Union["SurdSum", Rational]) -> "SurdSum":
        if isinstance(other, (int, Fraction)):
            return SurdSum._from_canonical({d: c * other for d, c in self._terms})
        if not isinstance(other, SurdSum):
            return NotImplemented
        product: Dict[int, Fraction] = {}
        for d1, c1 in self._terms:
            for d2, c2 in other._terms:
                g = math.gcd(d1, d2)
                # sqrt(d1*d2) = g * sqrt(d1*d2/g^2); the quotient is squarefree
                free = (d1 // g) * (d2 // g)
                product[free] = product.get(free, Fraction(0)) + c1 * c2 * g
        return SurdSum._from_canonical(product)

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> "SurdSum":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("SurdSum division by zero")
        return self * (1 / Fraction(other))

    def enclosure(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Certified rational interval [lo, hi] containing the value."""
        lo = hi = Fraction(0)
        scale = 1 << bits
        for d, c in self._terms:
            if d == 1:
                lo += c
                hi += c
                continue
            s = math.isqrt(d << (2 * bits))
            root_lo = Fraction(s, scale)
            root_hi = Fraction(s + 1, scale)
            if c > 0:
                lo += c * root_lo
                hi += c * root_hi
            else:
                lo += c * root_hi
                hi += c * root_lo
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.enclosure(80)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"SurdSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for d, c in self._terms:
            num, den = abs(c.numerator), c.denominator
            body = str(num) if d == 1 else (f"√{d}" if num == 1 else f"{num}√{d}")
            if den != 1:
                body += f"/{den}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def surd_normalize(c: Rational, n: int) -> SurdSum:
    """Rewrite c*sqrt(n) with a squarefree radicand."""
    if n < 1:
        raise ExactError(f"radicand must be positive, got {n}")
    return SurdSum({n: c})


def surd_add(a: SurdSum, b: SurdSum) -> SurdSum:
    """Sum of two surd sums, in canonical form."""
    return a + b


def surd_mul(a: SurdSum, b: SurdSum) -> SurdSum:
    """Product of two surd sums; radicand products are re-split into squarefree parts."""
    return a * b


def surd_sign(a: SurdSum) -> int:
    """Exact sign of a surd sum.

    Zero is decided structurally. A nonzero value is enclosed in rational
    intervals of doubling precision until the interval excludes zero.
    """
    if not a:
        return 0
    if a.is_rational:
        return 1 if a.rational_part() > 0 else -1
    bits = START_BITS
    while True:
        lo, hi = a.enclosure(bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
        logger.debug("sign of %s undecided, raising precision to %d bits", a, bits)


ROUNDING_MODES = ("nearest", "truncate")


def surd_decimal(a: SurdSum, digits: int, rounding: str = "nearest") -> str:
    """Certified decimal expansion with ``digits`` fractional digits.

    Args:
        a: Value to print.
        digits: Number of fractional digits, at least 1.
        rounding: "nearest" rounds half away from zero, "truncate" cuts the
            expansion toward zero (the "0.24115..." style).

    Returns:
        Decimal string such as "0.26355" or "-0.12950".
    """
    if digits < 1:
        raise ExactError(f"digits must be positive, got {digits}")
    if rounding not in ROUNDING_MODES:
        raise ExactError(f"unknown rounding mode {rounding!r}")
    sign = surd_sign(a)
    magnitude = a if sign >= 0 else -a
    scale = 10 ** digits
    offset = Fraction(1, 2) if rounding == "nearest" else Fraction(0)
    if magnitude.is_rational:
        scaled = math.floor(magnitude.rational_part() * scale + offset)
    else:
        # irrational: the scaled value plus offset is never an integer
        bits = START_BITS
        while True:
            lo, hi = magnitude.enclosure(bits)
            low, high = math.floor(lo * scale + offset), math.floor(hi * scale + offset)
            if low == high:
                scaled = low
                break
            bits *= 2
    whole, frac = divmod(scaled, scale)
    text = f"{whole}.{frac:0{digits}d}"
    if sign < 0 and scaled != 0:
        text = "-" + text
    return text


# ---------------------------------------------------------------------------
# Lattice helpers
# ---------------------------------------------------------------------------

def gcd_all(ints: Iterable[int]) -> int:
    """Nonnegative gcd of all entries; 0 for an all-zero or empty input."""
    return reduce(math.gcd, (abs(i) for i in ints), 0)


def det2(a: Sequence[Rational], b: Sequence[Rational]) -> Rational:
    return a[0] * b[1] - a[1] * b[0]


def det3(a: Sequence[Rational], b: Sequence[Rational], c: Sequence[Rational]) -> Rational:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def cross3(a: Sequence[Rational], b: Sequence[Rational]) -> Tuple[Rational, ...]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a: Sequence[Rational], b: Sequence[Rational]) -> Rational:
    return sum(x * y for x, y in zip(a, b))


def primitivize(v: Sequence[int]) -> Tuple[LatticeVector, int]:
    """Write an integer vector as m * p with p primitive.

    Raises:
        ZeroVectorError: for the zero vector.
    """
    m = gcd_all(v)
    if m == 0:
        raise ZeroVectorError(f"cannot primitivize zero vector {tuple(v)}")
    return tuple(x // m for x in v), m


def scale_to_primitive(v: Sequence[Rational]) -> LatticeVector:
    """Primitive integer vector pointing in the direction of a rational vector."""
    fractions = [_as_fraction(x) for x in v]
    common = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), fractions, 1)
    return primitivize([int(x * common) for x in fractions])[0]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lattice_plane_frame(weight: Sequence[int]) -> Tuple[RationalVector, Tuple[LatticeVector, LatticeVector]]:
    """Affine frame of the plane <R, y> = 1 in Q^3.

    Column-reduces R to (g, 0, 0) with a unimodular matrix. The first
    column divided by g is a point on the plane; the other two columns are
    a lattice basis of the kernel of R. For a unit covector the basis is
    the remaining unit vectors in increasing order.

    Returns:
        (p0, (b1, b2)).
    """
    r = [int(x) for x in weight]
    if len(r) != 3:
        raise ExactError(f"plane weight must have 3 coordinates, got {tuple(weight)}")
    if not any(r):
        raise ZeroVectorError("plane weight is zero")
    columns = [[1 if i == j else 0 for i in range(3)] for j in range(3)]
    while sum(1 for x in r if x) > 1:
        pivot = min((j for j in range(3) if r[j]), key=lambda j: abs(r[j]))
        for j in range(3):
            if j != pivot and r[j]:
                q = r[j] // r[pivot]
                r[j] -= q * r[pivot]
                columns[j] = [a - q * b for a, b in zip(columns[j], columns[pivot])]
    lead = next(j for j in range(3) if r[j])
    g = r[lead]
    rest = [j for j in range(3) if j != lead]
    p0 = tuple(Fraction(x, g) for x in columns[lead])
    return p0, (tuple(columns[rest[0]]), tuple(columns[rest[1]]))


# ---------------------------------------------------------------------------
# Exact cone duality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PositiveFunctional:
    """Result of :func:`positive_functional`.

    functional is a primitive integer covector positive on every vector
    outside ``zero_set`` and zero on the vectors in it; it is None when all
    vectors lie in the lineality space of their cone.
    """

    functional: Optional[LatticeVector]
    zero_set: FrozenSet[int]


def _reduce(echelon: List[Tuple[int, List[Fraction]]], v: Sequence[Rational]) -> List[Fraction]:
    """Remainder of v against echelon rows (pivot entry 1, zero at earlier pivots)."""
    v = [_as_fraction(x) for x in v]
    for pivot, row in echelon:
        if v[pivot]:
            factor = v[pivot]
            v = [a - factor * b for a, b in zip(v, row)]
    return v


def _solve(columns: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> Optional[List[Fraction]]:
    """Unique solution of sum(x_j * columns[j]) = rhs for independent columns.

    Returns None when rhs is not in the span of the columns.
    """
    k = len(columns)
    rows = [[_as_fraction(col[i]) for col in columns] + [_as_fraction(rhs[i])] for i in range(len(rhs))]
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            raise ExactError("columns are linearly dependent")
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
    if any(row[k] for row in rows[k:]):
        return None
    return [rows[j][k] for j in range(k)]


def _det(rows: Sequence[Sequence[Rational]]) -> Fraction:
    m = [[_as_fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for c in range(len(m)):
        pivot = next((i for i in range(c, len(m)) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, len(m)):
            if m[i][c]:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return result


def _normal(rows: Sequence[Sequence[Rational]], k: int) -> Tuple[Fraction, ...]:
    """Generalized cross product of k - 1 vectors in Q^k (cofactor expansion)."""
    return tuple(
        (-1) ** j * _det([row[:j] + row[j + 1:] for row in rows])
        for j in range(k)
    )


@dataclass(frozen=True)
class _DualFrame:
    """A cone given by generators, in coordinates of a basis of their span
    (the standard basis when they span everything).

    rays are the extreme rays of the dual cone in those coordinates; the
    cone is full-dimensional there, so its dual is pointed and generated by
    them.
    """

    basis: Tuple[Tuple[int, ...], ...]
    rank: int
    coords: Tuple[Tuple[Fraction, ...], ...]
    rays: Tuple[LatticeVector, ...]

    def coordinates(self, v: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
        if len(self.basis) == self.rank:
            return tuple(Fraction(x) for x in v)
        if not self.basis:
            return () if not any(v) else None
        solution = _solve(self.basis, v)
        return None if solution is None else tuple(solution)

    def covector(self, lam: Sequence[Rational]) -> Tuple[Fraction, ...]:
        """The covector in the span whose pairing with basis[j] is lam[j]."""
        if len(self.basis) == self.rank:
            return tuple(_as_fraction(x) for x in lam)
        gram = [[dot(a, b) for b in self.basis] for a in self.basis]
        a = _solve(gram, lam)
        return tuple(sum(c * b[i] for c, b in zip(a, self.basis)) for i in range(self.rank))


def _dual_frame(vectors: Sequence[Sequence[int]]) -> _DualFrame:
    rank = len(vectors[0])
    echelon: List[Tuple[int, List[Fraction]]] = []
    basis = []
    for v in vectors:
        rest = _reduce(echelon, v)
        pivot = next((i for i, x in enumerate(rest) if x), None)
        if pivot is None:
            continue
        lead = rest[pivot]
        echelon.append((pivot, [x / lead for x in rest]))
        basis.append(tuple(int(x) for x in v))
        if len(basis) == rank:
            break

    frame = _DualFrame(tuple(basis), rank, (), ())
    coords = tuple(frame.coordinates(v) for v in vectors)
    k = len(basis)
    distinct = sorted({c for c in coords if any(c)})
    rays = set()
    subsets = combinations(distinct, k - 1) if k else ()
    for subset in subsets:
        normal = _normal(subset, k) if k > 1 else (Fraction(1),)
        if not any(normal):
            continue
        pairings = [dot(normal, c) for c in distinct]
        if all(p >= 0 for p in pairings):
            rays.add(scale_to_primitive(normal))
        elif all(p <= 0 for p in pairings):
            rays.add(scale_to_primitive([-x for x in normal]))
    return _DualFrame(tuple(basis), rank, coords, tuple(sorted(rays)))


def positive_functional(vectors: Sequence[Sequence[int]]) -> PositiveFunctional:
    """Find a covector nonnegative on all vectors, positive on as many as possible.

    The sum of the extreme rays of the dual cone lies in its relative
    interior, so it vanishes exactly on the lineality space of the cone
    and is positive on every other generator.
    """
    if not vectors:
        return PositiveFunctional(None, frozenset())
    frame = _dual_frame(vectors)
    k = len(frame.basis)
    lam = [sum(r[j] for r in frame.rays) for j in range(k)]
    pairings = [dot(lam, c) for c in frame.coords]
    zero_set = frozenset(i for i, p in enumerate(pairings) if p == 0)
    logger.debug("dual cone of %d vectors: %d extreme rays", len(vectors), len(frame.rays))
    if len(zero_set) == len(vectors):
        return PositiveFunctional(None, zero_set)
    return PositiveFunctional(scale_to_primitive(frame.covector(lam)), zero_set)


def in_cone(v: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Exact test whether v is a nonnegative combination of the generators.

    v lies in the cone iff it lies in the span of the generators and pairs
    nonnegatively with every extreme ray of the dual cone.
    """
    if not any(v):
        return True
    if not generators:
        return False
    frame = _dual_frame(generators)
    c = frame.coordinates(v)
    if c is None:
        return False
    return all(dot(r, c) >= 0 for r in frame.rays)
