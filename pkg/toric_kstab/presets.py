"""
Built-in problem data: the Sasakian cones over partial resolutions of
CP1 x CP1 / Z_q, the quotient itself and its minimal resolution.

Each preset carries expected results tagged with where the value comes
from ("printed" for values as published, "derived" for values checked
independently). They are shown next to computed values, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .parser import ProblemSpec, ProblemSpecError
from .polytope import HalfPlane, MeasureConvention

E1 = (1, 0, 0)
MINUS_E1 = (-1, 0, 0)

# Orbit statements are made for these supports in H^1(e1*) + H^1(-e1*)
E1_SUPPORTS = ((E1, MINUS_E1), (E1,), (MINUS_E1,), ())


class UnknownPreset(ProblemSpecError):
    """No preset with the requested name."""


@dataclass(frozen=True)
class Expectation:
    label: str
    value: str
    provenance: str


@dataclass(frozen=True)
class PrintedValue:
    """An exact value and its decimal as published, to be cross-checked."""

    exact: str
    decimal: str
    convention: MeasureConvention


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    spec: ProblemSpec
    expectations: Tuple[Expectation, ...] = ()
    printed_s0: Optional[PrintedValue] = None


def _halfplanes(normals, levels) -> Tuple[HalfPlane, ...]:
    return tuple(HalfPlane(u, lam) for u, lam in zip(normals, levels))


_RESOLUTION_NORMALS = ((1, 0), (1, 1), (1, 2), (1, 3), (0, 1))
_RESOLUTION_NORMALS = _RESOLUTION_NORMALS + tuple((-x, -y) for x, y in _RESOLUTION_NORMALS)


def _example1(_: Optional[str]) -> Preset:
    spec = ProblemSpec(
        halfplanes=_halfplanes(_RESOLUTION_NORMALS, (9, 8, 8, 10, 6, 9, 8, 8, 10, 6)),
        weights=(E1, MINUS_E1),
        supports=E1_SUPPORTS,
    )
    return Preset(
        "example1",
        "cone over the minimal resolution of CP1xCP1/Z3, lambda = (9,8,8,10,6,...)",
        spec,
        (
            Expectation("S0 (sup)", "0.24115...", "printed"),
            Expectation("S0 (euclidean)", "26/115", "derived"),
            Expectation("area", "115", "derived"),
            Expectation("Zhou-Zhu", "Pass", "printed"),
            Expectation("term count at e1*", "3", "printed"),
            Expectation("deformation dimension", "4", "printed"),
            Expectation("polystable supports", "{} and {e1*, -e1*}", "printed"),
        ),
        PrintedValue(
            "12/15 + 8√10/345 + 2√5/115 + 2√2/115", "0.24115", MeasureConvention.SUP_NORM
        ),
    )


_EXAMPLE2_RAYS = (
    (1, 0, 9), (1, 1, 7), (1, 3, 10), (0, 1, 6),
    (-1, 0, 9), (-1, -1, 7), (-1, -1, 10), (0, -1, 6),
)


def _example2(_: Optional[str]) -> Preset:
    spec = ProblemSpec(rays=_EXAMPLE2_RAYS, weights=(E1, MINUS_E1), supports=E1_SUPPORTS)
    return Preset(
        "example2",
        "partial resolution of CP1xCP1/Z3, rays as printed (w7 = (-1,-1,10))",
        spec,
        (
            Expectation("smoothness", "FAIL at pair 6/7 (gcd 3)", "derived"),
            Expectation("convex position", "w7 interior to the other rays", "derived"),
            Expectation("smoothness", "every successive pair extends to a basis", "printed"),
        ),
    )


def _example2_corrected(_: Optional[str]) -> Preset:
    normals = ((1, 0), (1, 1), (1, 3), (0, 1), (-1, 0), (-1, -1), (-1, -3), (0, -1))
    spec = ProblemSpec(
        halfplanes=_halfplanes(normals, (9, 7, 10, 6, 9, 7, 10, 6)),
        weights=(E1, MINUS_E1),
        supports=E1_SUPPORTS,
    )
    return Preset(
        "example2-corrected",
        "partial resolution of CP1xCP1/Z3 with the symmetric ray w7 = (-1,-3,10)",
        spec,
        (
            Expectation("S0 (sup)", "20/223 + 6√10/223 + 14√2/223 = 0.26355...", "printed"),
            Expectation("S0 (euclidean)", "52/223", "derived"),
            Expectation("area", "223/2", "derived"),
            Expectation("Zhou-Zhu", "Pass", "printed"),
            Expectation("term count at e1*", "2", "printed"),
            Expectation("deformation dimension", "2", "printed"),
        ),
        PrintedValue("20/223 + 6√10/223 + 14√2/223", "0.26355", MeasureConvention.SUP_NORM),
    )


def _example3(_: Optional[str]) -> Preset:
    normals = ((1, 0), (1, 1), (1, 2), (1, 3), (0, 3), (-1, 0), (-1, -1), (-1, -2), (-1, -3), (0, -3))
    spec = ProblemSpec(
        halfplanes=_halfplanes(normals, (9, 8, 8, 10, 10, 9, 8, 8, 10, 10)),
        weights=(E1, MINUS_E1),
        supports=E1_SUPPORTS,
    )
    return Preset(
        "example3",
        "non-regular modification of example1 with u5 = (0,3)",
        spec,
        (
            Expectation("S0 (sup)", "32/265 + 8√10/795 + 6√5/265 + 6√2/265 = 0.23522...", "printed"),
            Expectation("S0 (euclidean)", "52/265", "derived"),
            Expectation("area", "265/3", "derived"),
            Expectation("Zhou-Zhu", "Pass", "printed"),
            Expectation("term count at e1*", "3", "printed"),
            Expectation("deformation dimension", "4", "printed"),
        ),
        PrintedValue(
            "32/265 + 8√10/795 + 6√5/265 + 6√2/265", "0.23522", MeasureConvention.SUP_NORM
        ),
    )


def _quotient(param: Optional[str]) -> Preset:
    if param is None:
        raise UnknownPreset("cp1cp1-quotient needs a parameter, e.g. cp1cp1-quotient:3")
    try:
        q = int(param)
    except ValueError:
        raise ProblemSpecError(f"q must be an integer, got {param!r}") from None
    if q < 1:
        raise ProblemSpecError(f"q must be at least 1, got {q}")
    normals = ((1, 0), (1, q), (-1, 0), (-1, -q))
    spec = ProblemSpec(halfplanes=_halfplanes(normals, (1, 1, 1, 1)), weights=(E1, MINUS_E1))
    return Preset(
        f"cp1cp1-quotient:{q}",
        f"CP1xCP1/Z{q} with fan e1, e1+{q}e2, -e1, -e1-{q}e2 and unit levels",
        spec,
        (Expectation("fan", f"(1,0), (1,{q}), (-1,0), (-1,-{q})", "printed"),),
    )


def _minres_q3(_: Optional[str]) -> Preset:
    spec = ProblemSpec(
        halfplanes=_halfplanes(_RESOLUTION_NORMALS, (4, 3, 3, 4, 2, 4, 3, 3, 4, 2)),
        weights=(E1, MINUS_E1),
    )
    return Preset(
        "cp1cp1-minres-q3",
        "minimal resolution of CP1xCP1/Z3, symmetric polarization with all ten edges",
        spec,
        (Expectation("fan", "u1..u5 = (1,0),(1,1),(1,2),(1,3),(0,1), u6..u10 = -u1..-u5", "printed"),),
    )


_REGISTRY: Dict[str, Callable[[Optional[str]], Preset]] = {
    "example1": _example1,
    "example2": _example2,
    "example2-corrected": _example2_corrected,
    "example3": _example3,
    "cp1cp1-quotient": _quotient,
    "cp1cp1-minres-q3": _minres_q3,
}


def preset_names() -> List[str]:
    return ["example1", "example2", "example2-corrected", "example3", "cp1cp1-quotient:q", "cp1cp1-minres-q3"]


def get_preset(name: str) -> Preset:
    """Look up a preset by name; parametrized names use ``base:value``.

    Raises:
        UnknownPreset: if the name is not registered.
    """
    base, _, param = name.partition(":")
    factory = _REGISTRY.get(base)
    if factory is None or (param and base != "cp1cp1-quotient"):
        raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    return factory(param or None)


def preset(name: str) -> ProblemSpec:
    return get_preset(name).spec


def preset_catalog() -> List[Tuple[str, str]]:
    """(name, description) pairs for listing."""
    catalog = []
    for name in preset_names():
        if name.endswith(":q"):
            catalog.append((name, "CP1xCP1/Zq with fan e1, e1+qe2, -e1, -e1-qe2 and unit levels"))
        else:
            catalog.append((name, get_preset(name).description))
    return catalog
