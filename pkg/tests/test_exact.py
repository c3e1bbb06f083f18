import random
from fractions import Fraction

import mpmath
import pytest

from toric_kstab.exact import (
    ExactError,
    RadicandTooLarge,
    SurdSum,
    ZeroVectorError,
    det3,
    dot,
    extended_gcd,
    gcd_all,
    in_cone,
    lattice_plane_frame,
    positive_functional,
    primitivize,
    scale_to_primitive,
    squarefree_split,
    surd_add,
    surd_decimal,
    surd_mul,
    surd_normalize,
    surd_sign,
)

RADICANDS = [1, 2, 3, 5, 6, 7, 8, 10, 12, 18, 20, 45, 50]


def random_surd(rng, terms=6):
    return SurdSum({
        rng.choice(RADICANDS): Fraction(rng.randint(-20, 20), rng.randint(1, 12))
        for _ in range(rng.randint(1, terms))
    })


def mp_value(a):
    mpmath.mp.dps = 200
    return sum(
        (mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(d) for d, c in a.terms.items()),
        mpmath.mpf(0),
    )


def test_squarefree_split_small_values() -> None:
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(360) == (6, 10)
    assert squarefree_split(49) == (7, 1)


def test_squarefree_split_large_prime_cofactors() -> None:
    p = 1000003
    assert squarefree_split(2 * p) == (1, 2 * p)
    assert squarefree_split(5 * p * p) == (p, 5)


def test_squarefree_split_rejects_composite_cofactor() -> None:
    p, q = 1000003, 1000033
    with pytest.raises(RadicandTooLarge):
        squarefree_split(p * q)


def test_surd_normalize_extracts_squares() -> None:
    assert surd_normalize(1, 8) == SurdSum({2: 2})
    assert surd_normalize(Fraction(1, 3), 9) == SurdSum.rational(1)
    assert surd_normalize(0, 5) == SurdSum()
    with pytest.raises(ExactError):
        surd_normalize(1, 0)


def test_surd_normalize_is_idempotent_on_canonical_sums(rng) -> None:
    for _ in range(300):
        a = random_surd(rng)
        rebuilt = SurdSum()
        for d, c in a.terms.items():
            term = surd_normalize(c, d)
            assert term == SurdSum({d: c})
            assert term.terms == {d: c}
            s = rng.randint(2, 5)
            assert surd_normalize(c, d * s * s) == surd_normalize(c * s, d)
            rebuilt = rebuilt + term
        assert rebuilt == a
        assert rebuilt.terms == a.terms


def _rewritten(rng, a):
    """Same value as a, with every radicand carrying a square factor."""
    terms = {}
    for d, c in a.terms.items():
        s = rng.randint(1, 4)
        terms[d * s * s] = c / s
    return SurdSum(terms)


def test_canonical_equality_agrees_with_zero_test(rng) -> None:
    for _ in range(1000):
        a = random_surd(rng)
        roll = rng.random()
        if roll < 0.4:
            b = _rewritten(rng, a)
        elif roll < 0.6:
            b = a + SurdSum({rng.choice(RADICANDS): Fraction(1, 10 ** 6)})
        else:
            b = random_surd(rng)
        difference = a - b
        assert (a == b) == (not difference) == (surd_sign(difference) == 0)
        if a == b:
            assert hash(a) == hash(b)
            assert a.terms == b.terms


def test_zero_test_is_structural() -> None:
    a = SurdSum({2: 3, 5: -2})
    assert not (a - a)
    assert surd_sign(a - a) == 0
    assert SurdSum({8: 1}) - SurdSum({2: 2}) == SurdSum()


def test_sign_of_close_cancellation() -> None:
    # 3*sqrt(2) - 2*sqrt(5) + 1/10 is about -0.1295
    a = SurdSum({2: 3, 5: -2, 1: Fraction(1, 10)})
    assert surd_sign(a) == -1
    assert surd_decimal(a, 5) == "-0.12950"


def test_sign_needs_more_than_start_precision() -> None:
    # Pell convergent: x/y - sqrt(2) is about 1e-21, inside a 64-bit enclosure
    x, y = 26102926097, 18457556052
    assert x * x - 2 * y * y == 1
    a = SurdSum({2: 1, 1: Fraction(-x, y)})
    assert surd_sign(a) == -1
    assert surd_sign(-a) == 1
    assert a < 0


def test_sign_agrees_with_high_precision(rng) -> None:
    for _ in range(1000):
        a = random_surd(rng)
        sign = surd_sign(a)
        value = mp_value(a)
        if sign == 0:
            assert abs(value) < mpmath.mpf(10) ** -150
        else:
            assert (value > 0) == (sign > 0)


def test_ring_axioms(rng) -> None:
    for _ in range(1000):
        a, b, c = random_surd(rng), random_surd(rng), random_surd(rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert surd_add(a, -a) == SurdSum()
        assert surd_mul(a, SurdSum.rational(1)) == a


def test_ordering_matches_values(rng) -> None:
    for _ in range(200):
        a, b = random_surd(rng), random_surd(rng)
        if a == b:
            continue
        assert (a < b) == (mp_value(a) < mp_value(b))


def test_decimal_rounding_modes() -> None:
    s0 = SurdSum.parse("12/115 + 8√10/345 + 2√5/115 + 2√2/115")
    assert surd_decimal(s0, 5, "truncate") == "0.24115"
    assert surd_decimal(s0, 5) == "0.24116"
    assert surd_decimal(SurdSum.rational(Fraction(1, 8)), 2) == "0.13"
    assert surd_decimal(SurdSum.rational(Fraction(-1, 8)), 2) == "-0.13"
    assert surd_decimal(SurdSum.rational(Fraction(-1, 1000)), 2) == "0.00"
    assert surd_decimal(SurdSum(), 3) == "0.000"
    with pytest.raises(ExactError):
        surd_decimal(s0, 0)
    with pytest.raises(ExactError):
        surd_decimal(s0, 5, "up")


def test_truncated_decimal_against_high_precision(rng) -> None:
    mpmath.mp.dps = 200
    for _ in range(300):
        a = random_surd(rng)
        if a.is_rational:
            continue
        value = mp_value(a)
        digits = rng.randint(1, 12)
        scaled = int(mpmath.floor(abs(value) * mpmath.mpf(10) ** digits))
        whole, frac = divmod(scaled, 10 ** digits)
        expected = f"{whole}.{frac:0{digits}d}"
        if value < 0 and scaled:
            expected = "-" + expected
        assert surd_decimal(a, digits, "truncate") == expected


def test_parse_printed_forms() -> None:
    assert SurdSum.parse("20/223 + 6√10/223 + 14√2/223") == SurdSum(
        {1: Fraction(20, 223), 10: Fraction(6, 223), 2: Fraction(14, 223)}
    )
    assert SurdSum.parse("-2*sqrt(5)/3 + 1") == SurdSum({5: Fraction(-2, 3), 1: 1})
    assert SurdSum.parse("√8") == SurdSum({2: 2})
    with pytest.raises(ExactError):
        SurdSum.parse("12/115 + x")


def test_str_round_trips_through_parse(rng) -> None:
    for _ in range(100):
        a = random_surd(rng)
        assert SurdSum.parse(str(a)) == a


def test_sqrt_of_rational() -> None:
    assert SurdSum.sqrt_of_rational(Fraction(9, 4)) == SurdSum.rational(Fraction(3, 2))
    assert SurdSum.sqrt_of_rational(Fraction(1, 2)) == SurdSum({2: Fraction(1, 2)})
    with pytest.raises(ExactError):
        SurdSum.sqrt_of_rational(-1)


def test_enclosure_contains_value(rng) -> None:
    for _ in range(100):
        a = random_surd(rng)
        lo, hi = a.enclosure(64)
        value = mp_value(a)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= value <= mpmath.mpf(hi.numerator) / hi.denominator


def test_lattice_helpers() -> None:
    assert gcd_all([6, -9, 15]) == 3
    assert gcd_all([0, 0]) == 0
    assert primitivize((0, -3, -3)) == ((0, -1, -1), 3)
    with pytest.raises(ZeroVectorError):
        primitivize((0, 0, 0))
    assert scale_to_primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert det3((1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1


def test_extended_gcd() -> None:
    for a, b in [(3, 5), (-1, 0), (0, -4), (12, -18), (7, 7)]:
        g, x, y = extended_gcd(a, b)
        assert g == gcd_all([a, b])
        assert a * x + b * y == g


@pytest.mark.parametrize("weight", [(1, 0, 0), (-1, 0, 0), (0, 0, 1), (2, 3, 5), (4, -6, 9), (0, 2, 3)])
def test_lattice_plane_frame(weight) -> None:
    p0, (b1, b2) = lattice_plane_frame(weight)
    assert dot(weight, p0) == 1
    assert dot(weight, b1) == 0 and dot(weight, b2) == 0
    g = gcd_all(weight)
    lead = tuple(int(x * g) for x in p0)
    assert abs(det3(lead, b1, b2)) == 1


def test_lattice_plane_frame_unit_covectors() -> None:
    assert lattice_plane_frame((1, 0, 0)) == ((1, 0, 0), ((0, 1, 0), (0, 0, 1)))
    assert lattice_plane_frame((0, 0, 1)) == ((0, 0, 1), ((1, 0, 0), (0, 1, 0)))


def test_positive_functional_pointed_and_lineality() -> None:
    pointed = positive_functional([(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    assert pointed.zero_set == frozenset()
    assert all(dot(pointed.functional, v) > 0 for v in [(1, 0, 0), (0, 1, 0), (1, 1, 1)])

    line = positive_functional([(1, 0, 0), (-1, 0, 0), (0, 1, 0)])
    assert line.zero_set == frozenset({0, 1})
    assert line.functional == (0, 1, 0)

    single = positive_functional([(1, 0, 0)])
    assert single.functional == (1, 0, 0)

    balanced = positive_functional([(1, 0), (-1, 1), (0, -1)])
    assert balanced.functional is None
    assert balanced.zero_set == frozenset({0, 1, 2})


def test_in_cone() -> None:
    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert in_cone((1, 2, 3), gens)
    assert not in_cone((-1, 2, 3), gens)
    assert in_cone((0, 0, 0), gens)
    assert in_cone((-1, -1, 10), [(-1, -1, 7), (1, 1, 7)])
    assert not in_cone((1, 0, 0), [])


def test_in_cone_on_printed_example2_rays(example2) -> None:
    rays = list(example2.spec.cone_rays)
    verdicts = [in_cone(w, rays[:i] + rays[i + 1:]) for i, w in enumerate(rays)]
    assert verdicts == [False] * 6 + [True, False]


def test_in_cone_lower_dimensional_generators() -> None:
    plane = [(1, 0, 0), (0, 1, 0), (-1, -1, 0)]
    assert in_cone((5, -7, 0), plane)
    assert not in_cone((0, 0, 1), plane)
    assert not in_cone((1, 1, 1), [(1, 0, 0), (0, 1, 0)])
    assert in_cone((3, 0, 0), [(1, 0, 0), (2, 0, 0)])
    assert not in_cone((-1, 0, 0), [(1, 0, 0)])
    assert not in_cone((1, 0, 0), [(0, 0, 0)])
    assert positive_functional([(0, 0, 0)]).functional is None
