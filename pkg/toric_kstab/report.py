"""
Report building for the command line.

Each ``*_report`` function runs the computation for one command and
returns a JSON-ready dict; ``render_text`` turns any of them into the
human readable form. Exact numbers appear as structured fields next to a
decimal string, so every decimal can be recomputed from its exact form.
"""

import json
import logging
from fractions import Fraction

from .cone import (
    ConeError,
    NotStronglyConvex,
    RayInteriorToHull,
    cross_section,
    from_rays,
    hull_rays,
    is_reeb_interior,
    listed_pair_smoothness,
)
from .deform import deformation_dimensions, resum
from .exact import SurdSum, positive_functional, surd_decimal
from .polytope import (
    AffineFunction,
    HalfPlane,
    MeasureConvention,
    NonpositiveLevel,
    X,
    Y,
    area,
    boundary_measure,
    from_halfplanes,
    futaki,
    mean_scalar_curvature,
    zhou_zhu,
)
from .presets import preset_catalog
from .stability import WeightedPoint, classify, orbit_table

logger = logging.getLogger(__name__)

DISCREPANCY_BANNER = (
    "sup-norm boundary measure: reproduces the published S0 values; "
    "the stated definition (euclidean |u|) gives different values"
)


# ---------------------------------------------------------------------------
# JSON encodings
# ---------------------------------------------------------------------------

def rational_json(q):
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def rational_text(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def surd_terms_json(value):
    return [
        {"d": d, "num": c.numerator, "den": c.denominator}
        for d, c in sorted(value.terms.items())
    ]


def surd_from_json(terms):
    return SurdSum({t["d"]: Fraction(t["num"], t["den"]) for t in terms})


def number_json(value, digits, rounding):
    value = SurdSum.coerce(value)
    return {
        "exact": surd_terms_json(value),
        "text": str(value),
        "decimal": surd_decimal(value, digits, rounding),
    }


def point_json(point):
    return [rational_json(x) for x in point]


def point_text(point):
    return "(" + ", ".join(rational_text(x) for x in point) + ")"


def to_json(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)


def _halfplanes_of(spec):
    if spec.halfplanes:
        return spec.halfplanes
    return tuple(HalfPlane((w[0], w[1]), w[2]) for w in spec.rays)


def _expectations(preset):
    if preset is None:
        return []
    return [
        {"label": e.label, "value": e.value, "provenance": e.provenance}
        for e in preset.expectations
    ]


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _printed_check(printed, polygon, digits):
    """Compare a published S0 (exact and decimal) with the computation."""
    printed_exact = SurdSum.parse(printed.exact)
    shown = len(printed.decimal.split(".", 1)[1])
    own_decimal = surd_decimal(printed_exact, shown, "truncate")
    computed = mean_scalar_curvature(polygon, printed.convention)
    differing = []
    printed_terms, computed_terms = printed_exact.terms, computed.terms
    for d in sorted(set(printed_terms) | set(computed_terms)):
        p, c = printed_terms.get(d, Fraction(0)), computed_terms.get(d, Fraction(0))
        if p != c:
            differing.append({
                "d": d,
                "printed": rational_text(p),
                "computed": rational_text(c),
            })
    per_convention = {}
    for conv in MeasureConvention:
        value = surd_decimal(mean_scalar_curvature(polygon, conv), shown, "truncate")
        per_convention[conv.value] = {"decimal": value, "matches_printed": value == printed.decimal}
    return {
        "printed_exact": printed.exact,
        "printed_decimal": printed.decimal,
        "printed_exact_decimal": own_decimal,
        "printed_self_consistent": own_decimal == printed.decimal,
        "convention": printed.convention.value,
        "computed_exact": str(computed),
        "computed_matches_printed_exact": computed == printed_exact,
        "differing_terms": differing,
        "by_convention": per_convention,
    }


def _convention_block(polygon, conv, n, digits, rounding):
    s0 = mean_scalar_curvature(polygon, conv)
    block = {
        "boundary_measure": number_json(boundary_measure(polygon, conv), digits, rounding),
        "s0_exact": surd_terms_json(s0),
        "s0_text": str(s0),
        "s0_decimal": surd_decimal(s0, digits, "truncate"),
        "s0_rounded": surd_decimal(s0, digits, "nearest"),
        "futaki": {
            "x": number_json(futaki(polygon, X, conv), digits, rounding),
            "y": number_json(futaki(polygon, Y, conv), digits, rounding),
            "one": number_json(futaki(polygon, AffineFunction(c=1), conv), digits, rounding),
        },
    }
    block["futaki"]["vanishes"] = not block["futaki"]["x"]["exact"] and not block["futaki"]["y"]["exact"]
    try:
        zz = zhou_zhu(polygon, n, conv)
    except NonpositiveLevel as e:
        block["zhou_zhu"] = {"error": f"{type(e).__name__}: {e}"}
        return block
    block["zhou_zhu"] = {
        "n": n,
        "verdict": zz.verdict,
        "futaki_vanishes": zz.futaki_vanishes,
        "worst_facet": zz.worst.index,
        "margins": [
            {
                "facet": m.index,
                "level": m.level,
                "bound": rational_json(m.bound),
                "margin": number_json(m.margin, digits, rounding),
                "sign": m.sign,
            }
            for m in zz.margins
        ],
    }
    return block


def analyze_report(spec, source, conventions, n, digits, rounding, preset=None):
    """Polygon, S0, Futaki and Zhou-Zhu data under the chosen conventions."""
    polygon = from_halfplanes(_halfplanes_of(spec))
    a = area(polygon)
    warnings = []
    if MeasureConvention.SUP_NORM in conventions:
        logger.warning(DISCREPANCY_BANNER)
        warnings.append(DISCREPANCY_BANNER)
    blocks = {conv.value: _convention_block(polygon, conv, n, digits, rounding) for conv in conventions}
    primary = blocks[conventions[0].value]
    report = {
        "command": "analyze",
        "source": source,
        "vertices": [point_json(v) for v in polygon.vertices],
        "area": number_json(a, digits, rounding),
        "conventions": blocks,
        "s0_exact": primary["s0_exact"],
        "s0_decimal": primary["s0_decimal"],
        "s0_decimal_rounding": "truncate",
        "margins": primary.get("zhou_zhu", {}).get("margins", []),
        "s0_by_convention": {
            conv.value: {
                "exact": surd_terms_json(s0),
                "text": str(s0),
                "decimal": surd_decimal(s0, digits, "truncate"),
            }
            for conv, s0 in ((c, mean_scalar_curvature(polygon, c)) for c in MeasureConvention)
        },
        "expectations": _expectations(preset),
        "warnings": warnings,
    }
    if preset is not None and preset.printed_s0 is not None:
        check = _printed_check(preset.printed_s0, polygon, digits)
        report["printed_check"] = check
        if not check["printed_self_consistent"]:
            logger.warning(
                "printed S0 %s evaluates to %s, not the printed %s",
                check["printed_exact"], check["printed_exact_decimal"], check["printed_decimal"],
            )
    return report


# ---------------------------------------------------------------------------
# cone
# ---------------------------------------------------------------------------

def cone_report(spec, source, preset=None):
    """Strong convexity, convex position, smoothness and Reeb interiority."""
    rays = list(spec.cone_rays)
    lineality = positive_functional(rays).zero_set
    report = {
        "command": "cone",
        "source": source,
        "rays": [list(w) for w in rays],
        "strongly_convex": not lineality,
        "expectations": _expectations(preset),
    }
    smooth = listed_pair_smoothness(rays)
    report["smoothness"] = {
        "smooth": smooth.smooth,
        "pairs": [
            {"pair": [p.index, p.next_index], "minors": list(p.minors), "gcd": p.gcd, "smooth": p.smooth}
            for p in smooth.pairs
        ],
    }

    cone, on_hull = None, False
    try:
        cone = from_rays(rays)
        report["convex_position"] = {"ok": True}
    except NotStronglyConvex as e:
        report["convex_position"] = {"ok": False, "error": f"{type(e).__name__}: {e}"}
    except ConeError as e:
        entry = {"ok": False, "error": f"{type(e).__name__}: {e}"}
        if isinstance(e, RayInteriorToHull):
            entry["interior_ray"] = e.index
        report["convex_position"] = entry
        try:
            cone, on_hull = from_rays(hull_rays(rays)), True
        except ConeError as inner:
            logger.debug("hull of listed rays is not a valid cone: %s", inner)

    if cone is not None:
        report["facet_normals"] = [list(nu) for nu in cone.facet_normals]
        check = is_reeb_interior(cone, spec.reeb)
        report["reeb"] = {
            "vector": list(spec.reeb),
            "interior": check.interior,
            "violating_facet": check.violating_facet,
            "pairings": list(check.pairings),
            "evaluated_on_hull": on_hull,
        }
    return report


# ---------------------------------------------------------------------------
# slice / deform / stab
# ---------------------------------------------------------------------------

def _slice_json(s):
    p0, b1, b2 = s.frame
    return {
        "weight": list(s.weight),
        "bounded": s.bounded,
        "compact_vertices": [point_json(v) for v in s.compact_vertices],
        "tail_rays": [list(t) for t in s.tail_rays],
        "frame": {"origin": point_json(p0), "basis": [list(b1), list(b2)]},
    }


def slice_report(spec, source, weight):
    cone = from_rays(spec.cone_rays)
    report = {"command": "slice", "source": source}
    report.update(_slice_json(cross_section(cone, weight)))
    return report


def _summand_json(summand):
    return {
        "multiplicities": [rational_json(m) for m in summand.multiplicities],
        "vertices": [point_json(v) for v in summand.vertices],
        "tail_rays": [list(t) for t in summand.tail_rays],
    }


def deform_report(spec, source, weights, max_terms, denominator_bound, preset=None):
    cone = from_rays(spec.cone_rays)
    deformations = deformation_dimensions(cone, weights, max_terms, denominator_bound)
    entries = []
    for entry in deformations.entries:
        totals, _ = resum(entry.witness)
        entries.append({
            "weight": list(entry.weight),
            "term_count": entry.term_count,
            "dimension": entry.dimension,
            "decomposition_count": entry.decomposition_count,
            "edge_directions": [list(e.direction) for e in entry.witness.edges],
            "edge_multiplicities": [rational_json(m) for m in totals],
            "witness": [_summand_json(s) for s in entry.witness.summands],
        })
    return {
        "command": "deform",
        "source": source,
        "max_terms": max_terms,
        "denominator_bound": denominator_bound,
        "weights": entries,
        "total_dimension": deformations.total_dimension,
        "expectations": _expectations(preset),
    }


def _verdict_json(support, verdict):
    entry = {"support": [list(w) for w in sorted(support)], "verdict": verdict.verdict.label}
    if verdict.destabilizer is not None:
        entry["destabilizer"] = {
            "subgroup": list(verdict.destabilizer.subgroup),
            "limit_support": [list(w) for w in sorted(verdict.destabilizer.limit_support)],
        }
    return entry


def stab_report(spec, source, weights=None, preset=None):
    weights = spec.weights if weights is None else tuple(weights)
    verdicts = []
    for support in spec.supports:
        rank = len(support[0]) if support else 3
        point = WeightedPoint.of(support, rank)
        verdicts.append(_verdict_json(point.support, classify(point)))
    report = {
        "command": "stab",
        "source": source,
        "verdicts": verdicts,
        "expectations": _expectations(preset),
    }
    if weights:
        report["orbit_table"] = {
            "weights": [list(w) for w in weights],
            "rows": [
                {"pattern": [int(on) for on in row.pattern], "verdict": row.verdict.verdict.label}
                for row in orbit_table(weights)
            ],
        }
    return report


def presets_report():
    return {
        "command": "presets",
        "presets": [{"name": name, "description": text} for name, text in preset_catalog()],
    }


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def _title(lines, text):
    lines.append("=" * 70)
    lines.append(f"  {text}")
    lines.append("=" * 70)


def _section(lines, title, body):
    lines.append("")
    lines.append(f"  ┌─ {title} " + "─" * max(3, 50 - len(title)))
    lines.append("  │")
    for line in body:
        lines.append(f"  │  {line}")
    lines.append("  │")
    lines.append("  └" + "─" * 55)


def _decimal_of(number):
    return number["decimal"]


def _render_expectations(lines, report):
    if report.get("expectations"):
        _section(lines, "EXPECTED (not asserted)", [
            f"{e['label']}: {e['value']}  [{e['provenance']}]" for e in report["expectations"]
        ])


def _render_analyze(report, lines):
    _title(lines, f"ANALYZE {report['source']}")
    vertices = [point_text((Fraction(v[0]["num"], v[0]["den"]), Fraction(v[1]["num"], v[1]["den"]))) for v in report["vertices"]]
    _section(lines, "POLYGON", [
        f"vertices ({len(vertices)}): " + ", ".join(vertices),
        f"area = {report['area']['text']} = {_decimal_of(report['area'])}",
    ])
    for name, block in report["conventions"].items():
        body = [
            f"boundary measure = {block['boundary_measure']['text']}",
            f"S0 = {block['s0_text']}",
            f"S0 = {block['s0_decimal']}... truncated  (rounded {block['s0_rounded']})",
            f"L(x) = {block['futaki']['x']['text']}, L(y) = {block['futaki']['y']['text']}, "
            f"L(1) = {block['futaki']['one']['text']}",
        ]
        zz = block["zhou_zhu"]
        if "error" in zz:
            body.append(f"Zhou-Zhu: not applicable ({zz['error']})")
        else:
            body.append(f"Zhou-Zhu (n = {zz['n']}): {zz['verdict']}"
                        f"{'' if zz['futaki_vanishes'] else ' (Futaki does not vanish)'}")
            for m in zz["margins"]:
                mark = "ok" if m["sign"] > 0 else "VIOLATED"
                body.append(
                    f"  facet {m['facet']:>2}  lambda = {m['level']:>3}  "
                    f"(n+1)/lambda - S0 = {m['margin']['decimal']}  {mark}"
                )
        _section(lines, f"CONVENTION {name}", body)
    _section(lines, "S0 UNDER EACH CONVENTION", [
        f"{name:<10} {entry['text']} = {entry['decimal']}..."
        for name, entry in report["s0_by_convention"].items()
    ])
    check = report.get("printed_check")
    if check:
        body = [
            f"printed: {check['printed_exact']} = {check['printed_decimal']}...",
            f"printed exact form evaluates to {check['printed_exact_decimal']}..."
            + ("" if check["printed_self_consistent"] else "  INCONSISTENT with printed decimal"),
            f"computed ({check['convention']}): {check['computed_exact']}"
            + ("  matches printed exact form" if check["computed_matches_printed_exact"] else "  differs from printed exact form"),
        ]
        for term in check["differing_terms"]:
            radicand = "rational term" if term["d"] == 1 else f"coefficient of √{term['d']}"
            body.append(f"  {radicand}: printed {term['printed']}, computed {term['computed']}")
        for name, entry in check["by_convention"].items():
            flag = "matches printed decimal" if entry["matches_printed"] else "MISMATCH with printed decimal"
            body.append(f"{name:<10} {entry['decimal']}...  {flag}")
        _section(lines, "PRINTED VALUE CHECK", body)
    for warning in report.get("warnings", []):
        lines.append("")
        lines.append(f"  note: {warning}")


def _render_cone(report, lines):
    _title(lines, f"CONE {report['source']}")
    _section(lines, "RAYS", [
        "  ".join(f"w{i + 1}={tuple(w)}" for i, w in enumerate(report["rays"]))
    ])
    position = report["convex_position"]
    body = [
        f"strong convexity: {'PASS' if report['strongly_convex'] else 'FAIL'}",
        f"convex position:  {'PASS' if position['ok'] else 'FAIL'}",
    ]
    if not position["ok"]:
        body.append(f"  {position['error']}")
    _section(lines, "CONVEXITY", body)
    smooth = report["smoothness"]
    body = [
        f"pair {p['pair'][0]}/{p['pair'][1]}  minors {tuple(p['minors'])}  gcd {p['gcd']}"
        + ("" if p["smooth"] else "  FAIL")
        for p in smooth["pairs"]
    ]
    failed = [p for p in smooth["pairs"] if not p["smooth"]]
    if failed:
        body.append("smoothness: FAIL at " + ", ".join(f"pair {p['pair'][0]}/{p['pair'][1]}" for p in failed))
    else:
        body.append("smoothness: PASS")
    _section(lines, "SMOOTHNESS AWAY FROM THE VERTEX", body)
    reeb = report.get("reeb")
    if reeb:
        where = " (on the hull of the listed rays)" if reeb["evaluated_on_hull"] else ""
        line = f"xi = {tuple(reeb['vector'])}: {'interior' if reeb['interior'] else 'NOT interior'}{where}"
        if reeb["violating_facet"] is not None:
            line += f", facet {reeb['violating_facet']} pairs to {reeb['pairings'][reeb['violating_facet'] - 1]}"
        _section(lines, "REEB VECTOR", [line])


def _render_slice(report, lines):
    _title(lines, f"SLICE {report['source']} at R = {tuple(report['weight'])}")
    vertices = [point_text((Fraction(v[0]["num"], v[0]["den"]), Fraction(v[1]["num"], v[1]["den"]))) for v in report["compact_vertices"]]
    body = [
        f"bounded: {'yes' if report['bounded'] else 'no'}",
        "compact vertices: " + ", ".join(vertices),
    ]
    if report["tail_rays"]:
        body.append("tail rays: " + ", ".join(str(tuple(t)) for t in report["tail_rays"]))
    basis = report["frame"]["basis"]
    body.append(f"plane coordinates along {tuple(basis[0])}, {tuple(basis[1])}")
    _section(lines, "CROSS-SECTION", body)


def _render_deform(report, lines):
    _title(lines, f"DEFORM {report['source']}")
    for entry in report["weights"]:
        body = [
            f"maximal admissible term count = {entry['term_count']}",
            f"dimension = {entry['dimension']}  ({entry['decomposition_count']} decompositions within bounds)",
        ]
        for i, summand in enumerate(entry["witness"]):
            mults = ", ".join(rational_text(Fraction(m["num"], m["den"])) for m in summand["multiplicities"])
            tail = "  + tail" if summand["tail_rays"] else ""
            body.append(f"  summand {i}: multiplicities ({mults}){tail}")
        _section(lines, f"WEIGHT R = {tuple(entry['weight'])}", body)
    lines.append("")
    lines.append(f"  total deformation dimension = {report['total_dimension']}")
    lines.append(f"  (bounds: max terms {report['max_terms']}, denominator {report['denominator_bound']})")


def _render_stab(report, lines):
    _title(lines, f"STABILITY {report['source']}")
    body = []
    for entry in report["verdicts"]:
        support = "{" + ", ".join(str(tuple(w)) for w in entry["support"]) + "}"
        line = f"{support}: {entry['verdict']}"
        if "destabilizer" in entry:
            d = entry["destabilizer"]
            limit = "{" + ", ".join(str(tuple(w)) for w in d["limit_support"]) + "}"
            line += f"  (lambda = {tuple(d['subgroup'])}, limit {limit})"
        body.append(line)
    _section(lines, "DECLARED SUPPORTS", body or ["none declared"])
    table = report.get("orbit_table")
    if table:
        header = "weights " + ", ".join(str(tuple(w)) for w in table["weights"])
        rows = [header] + [
            "(" + ", ".join("x" if on else "0" for on in row["pattern"]) + f"): {row['verdict']}"
            for row in table["rows"]
        ]
        _section(lines, "ORBIT TABLE", rows)


def _render_presets(report, lines):
    _title(lines, "PRESETS")
    _section(lines, "AVAILABLE", [f"{p['name']:<20} {p['description']}" for p in report["presets"]])


_RENDERERS = {
    "analyze": _render_analyze,
    "cone": _render_cone,
    "slice": _render_slice,
    "deform": _render_deform,
    "stab": _render_stab,
    "presets": _render_presets,
}


def render_text(report):
    lines = []
    _RENDERERS[report["command"]](report, lines)
    _render_expectations(lines, report)
    return "\n".join(lines) + "\n"
