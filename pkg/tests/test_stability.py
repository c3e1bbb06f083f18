from itertools import product

import pytest

from toric_kstab.exact import dot
from toric_kstab.stability import (
    MAX_ORBIT_TABLE_WEIGHTS,
    Destabilizer,
    StabilityError,
    StabilityVerdict,
    Verdict,
    WeightedPoint,
    classify,
    limit_point,
    orbit_table,
    real_structure_polystable,
    replay,
)

E1 = (1, 0, 0)
MINUS_E1 = (-1, 0, 0)


def brute_force_polystable(support, bound):
    """No integer subgroup in the box pairs >= 0 everywhere and > 0 somewhere."""
    rank = len(next(iter(support)))
    for lam in product(range(-bound, bound + 1), repeat=rank):
        pairings = [dot(lam, w) for w in support]
        if all(v >= 0 for v in pairings) and any(v > 0 for v in pairings):
            return False
    return True


def random_support(rng, rank, entry, size):
    return {tuple(rng.randint(-entry, entry) for _ in range(rank)) for _ in range(size)}


def test_basic_verdicts() -> None:
    assert classify(WeightedPoint.of([E1, MINUS_E1])).is_polystable
    assert classify(WeightedPoint.of([], rank=3)).is_polystable
    assert classify(WeightedPoint.of([E1, (-2, 0, 0)])).is_polystable

    single = classify(WeightedPoint.of([E1]))
    assert single.verdict is Verdict.SEMISTABLE_NOT_POLYSTABLE
    assert single.destabilizer.subgroup == (1, 0, 0)
    assert single.destabilizer.limit_support == frozenset()


def test_verdict_labels() -> None:
    assert Verdict.POLYSTABLE.label == "Polystable"
    assert Verdict.SEMISTABLE_NOT_POLYSTABLE.label == "SemistableNotPolystable"


def test_destabilizer_keeps_the_balanced_part() -> None:
    verdict = classify(WeightedPoint.of([(1, 0, 0), (-1, 0, 0), (0, 1, 0)]))
    assert not verdict.is_polystable
    assert verdict.destabilizer.subgroup == (0, 1, 0)
    assert verdict.destabilizer.limit_support == frozenset({(1, 0, 0), (-1, 0, 0)})


@pytest.mark.parametrize("rank, entry, bound, cases", [(2, 3, 10, 600), (3, 1, 4, 400)])
def test_classify_against_brute_force(rng, rank, entry, bound, cases) -> None:
    for _ in range(cases):
        support = random_support(rng, rank, entry, rng.randint(1, 5))
        verdict = classify(WeightedPoint.of(support, rank))
        assert verdict.is_polystable == brute_force_polystable(support, bound)
        if not verdict.is_polystable:
            lam = verdict.destabilizer.subgroup
            assert all(dot(lam, w) >= 0 for w in support)
            assert any(dot(lam, w) > 0 for w in support)


def test_replayed_limits_are_polystable(rng) -> None:
    replayed = 0
    for _ in range(1000):
        support = random_support(rng, 3, 2, rng.randint(1, 6))
        point = WeightedPoint.of(support, 3)
        verdict = classify(point)
        result = replay(point, verdict)
        if verdict.is_polystable:
            assert result is None
            continue
        replayed += 1
        assert result.is_polystable
        limit = limit_point(point, verdict.destabilizer.subgroup)
        assert limit.support == verdict.destabilizer.limit_support
        assert len(limit.support) < len(point.support)
    assert replayed > 0


def test_verdict_invariant_under_negation_and_gl(rng) -> None:
    matrices = [
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 1, 0), (1, 0, 0), (0, 0, -1)),
        ((1, 1, 1), (0, 1, 1), (0, 0, 1)),
    ]
    for _ in range(100):
        support = random_support(rng, 3, 2, rng.randint(1, 5))
        expected = classify(WeightedPoint.of(support, 3)).is_polystable
        negated = {tuple(-x for x in w) for w in support}
        assert classify(WeightedPoint.of(negated, 3)).is_polystable == expected
        for m in matrices:
            image = {tuple(dot(row, w) for row in m) for w in support}
            assert classify(WeightedPoint.of(image, 3)).is_polystable == expected


def test_real_structure() -> None:
    assert real_structure_polystable([(E1, True)])
    assert not real_structure_polystable([(E1, False)])
    assert real_structure_polystable([(E1, False), (MINUS_E1, False)])
    assert real_structure_polystable([((1, 2, 0), True), ((0, 1, 1), True)])
    assert real_structure_polystable([])


def test_orbit_table_for_e1_pair() -> None:
    rows = orbit_table([E1, MINUS_E1])
    assert [row.pattern for row in rows] == [(False, False), (False, True), (True, False), (True, True)]
    assert [row.verdict.is_polystable for row in rows] == [True, False, False, True]


def test_orbit_table_with_zero_weight() -> None:
    rows = orbit_table([(0, 0, 0), E1])
    assert [row.verdict.is_polystable for row in rows] == [True, False, True, False]


def test_orbit_table_limits() -> None:
    assert orbit_table([]) == []
    with pytest.raises(StabilityError):
        orbit_table([E1, E1])
    with pytest.raises(StabilityError):
        orbit_table([(k, 0, 0) for k in range(1, MAX_ORBIT_TABLE_WEIGHTS + 2)])


def test_input_errors() -> None:
    point = WeightedPoint.of([E1, (0, 1, 0)])
    with pytest.raises(StabilityError):
        limit_point(point, (-1, 0, 0))
    with pytest.raises(StabilityError):
        limit_point(point, (1, 0))
    with pytest.raises(StabilityError):
        WeightedPoint.of([E1, (1, 0)])
    with pytest.raises(StabilityError):
        WeightedPoint.of([])
    with pytest.raises(StabilityError):
        StabilityVerdict(Verdict.POLYSTABLE, Destabilizer((1, 0, 0), frozenset()))
    with pytest.raises(StabilityError):
        StabilityVerdict(Verdict.SEMISTABLE_NOT_POLYSTABLE)
