from fractions import Fraction

import pytest

from toric_kstab.parser import (
    DEFAULT_REEB,
    ParseError,
    ProblemSpec,
    ProblemSpecError,
    format_spec,
    parse_spec,
    read_spec,
)
from toric_kstab.polytope import HalfPlane, MeasureConvention, from_halfplanes
from toric_kstab.presets import UnknownPreset, get_preset, preset_catalog, preset_names

SQUARE_TEXT = """\
# unit square around the origin
halfplane 1 0 1
halfplane 0 1 1
halfplane -1 0 1   # left
halfplane 0 -1 1

weight 1 0 0
support-set
support 1 0 0
convention euclidean
n 3
"""


def test_parse_square() -> None:
    spec = parse_spec(SQUARE_TEXT)
    assert spec.halfplanes[2] == HalfPlane((-1, 0), 1)
    assert spec.reeb == DEFAULT_REEB
    assert spec.weights == ((1, 0, 0),)
    assert spec.supports == (((1, 0, 0),),)
    assert spec.convention is MeasureConvention.EUCLIDEAN
    assert spec.n == 3
    assert spec.digits is None
    assert spec.cone_rays == ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
    assert spec.fan == ((1, 0), (0, 1), (-1, 0), (0, -1))


@pytest.mark.parametrize("text, line", [
    ("halfplane 1 0 1\nbogus 1 2\n", 2),
    ("halfplane 1 0\n", 1),
    ("halfplane 1 0 x\n", 1),
    ("halfplane 0 0 1\n", 1),
    ("halfplane 1 0 1\nsupport 1 0 0\n", 2),
    ("halfplane 1 0 1\nreeb 0 0 1\nreeb 0 0 1\n", 3),
    ("halfplane 1 0 1\nconvention taxicab\n", 2),
    ("halfplane 1 0 1\n\n\nn 2\nn 3\n", 5),
    ("halfplane 1 0 1\nsupport-set 1\n", 2),
    ("halfplane 1 0 1\nsupport-set\nsupport 1 0 0\nsupport 1 0\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line) -> None:
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.line_number == line
    assert str(info.value).startswith(f"line {line}: ")


def test_whole_spec_errors_have_no_line() -> None:
    with pytest.raises(ParseError) as info:
        parse_spec("# nothing here\n")
    assert info.value.line_number is None
    with pytest.raises(ParseError):
        parse_spec("halfplane 1 0 1\nn 0\n")


def test_rays_must_match_halfplanes() -> None:
    halfplanes = (HalfPlane((1, 0), 1), HalfPlane((0, 1), 1), HalfPlane((-1, -1), 1))
    ProblemSpec(halfplanes=halfplanes, rays=((1, 0, 1), (0, 1, 1), (-1, -1, 1)))
    with pytest.raises(ProblemSpecError):
        ProblemSpec(halfplanes=halfplanes, rays=((1, 0, 1), (0, 1, 1), (-1, -1, 2)))
    with pytest.raises(ProblemSpecError):
        ProblemSpec(halfplanes=halfplanes, weights=((1, 0),))


@pytest.mark.parametrize("name", [n.replace(":q", ":3") for n in preset_names()])
def test_presets_survive_format_and_parse(name) -> None:
    spec = get_preset(name).spec
    assert parse_spec(format_spec(spec)) == spec


def test_read_spec(tmp_path) -> None:
    path = tmp_path / "square.txt"
    path.write_text(SQUARE_TEXT, encoding="utf-8")
    assert read_spec(path) == parse_spec(SQUARE_TEXT)
    with pytest.raises(ProblemSpecError):
        read_spec(tmp_path / "missing.txt")


def test_quotient_preset_vertices() -> None:
    p = from_halfplanes(get_preset("cp1cp1-quotient:3").spec.halfplanes)
    assert p.vertices == (
        (Fraction(1), Fraction(0)),
        (Fraction(-1), Fraction(2, 3)),
        (Fraction(-1), Fraction(0)),
        (Fraction(1), Fraction(-2, 3)),
    )


def test_minimal_resolution_preset_keeps_all_edges() -> None:
    p = from_halfplanes(get_preset("cp1cp1-minres-q3").spec.halfplanes)
    assert p.vertices == tuple((Fraction(x), Fraction(y)) for x, y in [
        (4, -1), (3, 0), (1, 1), (-2, 2), (-4, 2), (-4, 1), (-3, 0), (-1, -1), (2, -2), (4, -2),
    ])


@pytest.mark.parametrize("name, error", [
    ("nope", UnknownPreset),
    ("cp1cp1-quotient", UnknownPreset),
    ("example1:3", UnknownPreset),
    ("cp1cp1-quotient:0", ProblemSpecError),
    ("cp1cp1-quotient:x", ProblemSpecError),
])
def test_bad_preset_names(name, error) -> None:
    with pytest.raises(error):
        get_preset(name)


def test_preset_catalog_lists_every_name() -> None:
    catalog = dict(preset_catalog())
    assert list(catalog) == preset_names()
    assert "w7 = (-1,-1,10)" in catalog["example2"]
    assert all(e.provenance in ("printed", "derived") for e in get_preset("example1").expectations)
