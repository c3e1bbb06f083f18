"""
Problem descriptions and their line-oriented text format.

Example input::

    # cone over a polygon
    halfplane 1 0 9
    halfplane 1 1 8
    ...
    reeb 0 0 1
    weight 1 0 0
    weight -1 0 0
    support-set
    support 1 0 0
    support -1 0 0
    convention sup
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

from .exact import LatticeVector
from .polytope import HalfPlane, MeasureConvention, PolygonError

logger = logging.getLogger(__name__)

DEFAULT_REEB = (0, 0, 1)


class ProblemSpecError(ValueError):
    """Inconsistent problem description."""


class ParseError(ProblemSpecError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class ProblemSpec:
    """Polygon and/or cone data plus the queries to run on them."""

    halfplanes: Tuple[HalfPlane, ...] = ()
    rays: Tuple[LatticeVector, ...] = ()
    reeb: LatticeVector = DEFAULT_REEB
    weights: Tuple[LatticeVector, ...] = ()
    supports: Tuple[Tuple[LatticeVector, ...], ...] = ()
    convention: Optional[MeasureConvention] = None
    n: Optional[int] = None
    digits: Optional[int] = None

    def __post_init__(self):
        if not self.halfplanes and not self.rays:
            raise ProblemSpecError("need half-planes or rays")
        if self.halfplanes and self.rays:
            lifts = tuple(h.lift() for h in self.halfplanes)
            if lifts != tuple(self.rays):
                raise ProblemSpecError("rays must equal the (u, lambda) lift of the half-planes")
        if len(self.reeb) != 3:
            raise ProblemSpecError(f"reeb vector must have 3 coordinates, got {self.reeb}")
        for w in self.weights:
            if len(w) != 3:
                raise ProblemSpecError(f"weight must have 3 coordinates, got {w}")
        if self.n is not None and self.n < 1:
            raise ProblemSpecError(f"n must be positive, got {self.n}")
        if self.digits is not None and self.digits < 1:
            raise ProblemSpecError(f"digits must be positive, got {self.digits}")

    @property
    def cone_rays(self) -> Tuple[LatticeVector, ...]:
        if self.rays:
            return tuple(self.rays)
        return tuple(h.lift() for h in self.halfplanes)

    @property
    def fan(self) -> Tuple[Tuple[int, int], ...]:
        """Normals u_i of the polygon (first two ray coordinates)."""
        return tuple((w[0], w[1]) for w in self.cone_rays)


_VECTOR_KEYWORDS = {"halfplane": 3, "ray": 3, "reeb": 3, "weight": 3}


def _ints(tokens: List[str], line_number: int) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line_number) from None


def parse_spec(text: str) -> ProblemSpec:
    """Parse the text format into a ProblemSpec.

    Raises:
        ParseError: with the offending line number.
    """
    halfplanes: List[HalfPlane] = []
    rays: List[LatticeVector] = []
    weights: List[LatticeVector] = []
    supports: List[List[LatticeVector]] = []
    reeb: Optional[LatticeVector] = None
    settings = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0].lower(), tokens[1:]

        if keyword in _VECTOR_KEYWORDS:
            values = _ints(args, line_number)
            if len(values) != _VECTOR_KEYWORDS[keyword]:
                raise ParseError(f"{keyword} takes {_VECTOR_KEYWORDS[keyword]} integers, got {len(values)}", line_number)
            if keyword == "halfplane":
                try:
                    halfplanes.append(HalfPlane(values[:2], values[2]))
                except PolygonError as e:
                    raise ParseError(str(e), line_number) from None
            elif keyword == "ray":
                rays.append(values)
            elif keyword == "weight":
                weights.append(values)
            else:
                if reeb is not None:
                    raise ParseError("reeb given more than once", line_number)
                reeb = values
        elif keyword == "support-set":
            if args:
                raise ParseError("support-set takes no arguments", line_number)
            supports.append([])
        elif keyword == "support":
            if not supports:
                raise ParseError("support outside a support-set block", line_number)
            values = _ints(args, line_number)
            if not values:
                raise ParseError("support needs a weight", line_number)
            if supports[-1] and len(supports[-1][0]) != len(values):
                raise ParseError(
                    f"support has rank {len(values)}, block started with rank {len(supports[-1][0])}",
                    line_number,
                )
            supports[-1].append(values)
        elif keyword in ("convention", "n", "digits"):
            if len(args) != 1:
                raise ParseError(f"{keyword} takes one value", line_number)
            if keyword in settings:
                raise ParseError(f"{keyword} given more than once", line_number)
            if keyword == "convention":
                try:
                    settings[keyword] = MeasureConvention.parse(args[0])
                except PolygonError as e:
                    raise ParseError(str(e), line_number) from None
            else:
                settings[keyword] = _ints(args, line_number)[0]
        else:
            raise ParseError(f"unknown keyword {tokens[0]!r}", line_number)

    try:
        return ProblemSpec(
            halfplanes=tuple(halfplanes),
            rays=tuple(rays),
            reeb=reeb if reeb is not None else DEFAULT_REEB,
            weights=tuple(weights),
            supports=tuple(tuple(s) for s in supports),
            **settings,
        )
    except ProblemSpecError as e:
        raise ParseError(str(e)) from None


def read_spec(path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemSpecError(f"cannot read {path}: {e}") from None
    logger.debug("parsing problem file %s", path)
    return parse_spec(text)


def format_spec(spec: ProblemSpec) -> str:
    """Serialize a ProblemSpec; parse_spec(format_spec(s)) == s."""
    lines = []
    for h in spec.halfplanes:
        lines.append(f"halfplane {h.normal[0]} {h.normal[1]} {h.level}")
    for w in spec.rays:
        lines.append("ray " + " ".join(str(x) for x in w))
    lines.append("reeb " + " ".join(str(x) for x in spec.reeb))
    for w in spec.weights:
        lines.append("weight " + " ".join(str(x) for x in w))
    for support in spec.supports:
        lines.append("support-set")
        for w in support:
            lines.append("support " + " ".join(str(x) for x in w))
    if spec.convention is not None:
        lines.append(f"convention {spec.convention.value}")
    if spec.n is not None:
        lines.append(f"n {spec.n}")
    if spec.digits is not None:
        lines.append(f"digits {spec.digits}")
    return "\n".join(lines) + "\n"
