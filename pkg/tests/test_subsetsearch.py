import pytest

from subset_syzygy.algebra.koszul import KoszulComplex
from subset_syzygy.algebra.pointideal import PointSet, hilbert, random_points
from subset_syzygy.algebra.predictor import subset_mu_rank
from subset_syzygy.algebra.subsetsearch import (
    CaseLabel,
    artinian_drop,
    classify_case,
    critical_degree,
    enumerate_subsets,
    find_subset,
    greedy_truncated_order,
    greedy_truncated_subset,
    is_truncated,
    is_truncated_sequence,
    min_gens,
)
from subset_syzygy.errors import BudgetExceededError, PreconditionError


def test_critical_degree(five_points, collinear, generic_p2):
    assert critical_degree(five_points) == 2
    assert critical_degree(collinear) == 2
    assert critical_degree(generic_p2[1]) == 1
    assert critical_degree(generic_p2[10]) == 3


def test_greedy_truncated_order(five_points, generic_p2):
    """
    Test that the greedy subset avoids the two collinear triples.
    """

    order = greedy_truncated_order(five_points, 5)
    assert order == (0, 1, 3, 2, 4)
    assert is_truncated_sequence(five_points, order)
    assert is_truncated_sequence(five_points, (2, 0, 3, 1, 4))

    # Test with the file order, whose first three points are collinear
    assert not is_truncated_sequence(five_points, (0, 1, 2, 3, 4))

    X = generic_p2[10]
    for e in (3, 6, 8):
        Y = greedy_truncated_subset(X, e)
        assert is_truncated(hilbert(Y), hilbert(X))

    with pytest.raises(PreconditionError):
        greedy_truncated_order(five_points, 0)
    with pytest.raises(PreconditionError):
        greedy_truncated_order(five_points, 3, order=[0, 1, 2])


def test_min_gens_and_artinian_drop(collinear):
    """
    Test generator counts and the degree where Δh loses one.
    """

    assert min_gens(collinear, 2) == 2
    assert min_gens(collinear, 3) == 1
    assert min_gens(collinear, 4) == 0

    # Removing (0:0:1) leaves three collinear points
    assert artinian_drop(collinear, 3) == 1
    assert min_gens(collinear.without(3), 3) == 1
    assert artinian_drop(collinear, 0) == 2

    with pytest.raises(PreconditionError):
        min_gens(collinear, 0)


@pytest.mark.parametrize(
    "d, expected",
    [
        (4, CaseLabel(2, 0, 1)),
        (5, CaseLabel(2, 2, 3)),
        (6, CaseLabel(2, 4, 4)),
        (8, CaseLabel(3, 1, 2)),
        (10, CaseLabel(3, 5, 4)),
    ],
)
def test_classify_generic(generic_p2, d, expected):
    """
    Test the case labels of generic plane points.
    """

    assert classify_case(generic_p2[d]) == expected


def test_classify_fixtures(five_points, collinear, field):
    assert classify_case(five_points) == CaseLabel(2, 2, 3)
    assert classify_case(collinear) == CaseLabel(2, 1, 2)

    with pytest.raises(PreconditionError):
        classify_case(random_points(3, 5, field, seed=3))


def test_find_subset(five_points):
    """
    Test that the chain from the five points stops at {1, 2, 4, 5}.
    """

    chain = find_subset(five_points, 4)
    assert chain.found
    assert chain.subset == (0, 1, 3, 4)
    assert [step.removed for step in chain.steps] == [2]
    assert all(step.ok for step in chain.steps)
    assert all(check.match for check in chain.verification)
    assert chain.explored >= 1


def test_find_subset_generic(generic_p2):
    """
    Test chains in generic position, where the first removal already works.
    """

    for d, m in ((7, 4), (10, 6)):
        chain = find_subset(generic_p2[d], m)
        assert chain.found
        assert len(chain.subset) == m
        assert len(chain.steps) == d - m


def test_find_subset_fail(five_points, field):
    with pytest.raises(PreconditionError):
        find_subset(five_points, 5)
    with pytest.raises(PreconditionError):
        find_subset(random_points(3, 5, field, seed=3), 2)
    with pytest.raises(BudgetExceededError):
        find_subset(five_points, 2, budget=0)


def test_enumerate_subsets(five_points):
    """
    Test that exactly one 4-subset has no cubic generator.
    """

    records = enumerate_subsets(five_points, 4, workers=2)
    assert [record.subset for record in records] == [
        (0, 1, 2, 3),
        (0, 1, 2, 4),
        (0, 1, 3, 4),
        (0, 2, 3, 4),
        (1, 2, 3, 4),
    ]
    without_cubics = [record for record in records if record.gens_at_lplus1 == 0]
    assert [record.subset for record in without_cubics] == [(0, 1, 3, 4)]
    assert without_cubics[0].matches_prediction
    assert without_cubics[0].truncated
    assert without_cubics[0].ranks == {2: 6, 3: 11}

    # Every other subset contains a collinear triple
    assert all(record.gens_at_lplus1 == 1 for record in records if record not in without_cubics)

    with pytest.raises(BudgetExceededError):
        enumerate_subsets(five_points, 2, budget=5)


def line_and_general(field, on_line: int, general: int, seed: int) -> PointSet:
    """``on_line`` points of x2 = 0 followed by ``general`` seeded generic points."""
    rows = [[1, i, 0] for i in range(on_line)]
    if general:
        rows += [list(p) for p in random_points(2, general, field, seed=seed).points]
    return PointSet.create(field, 2, rows)


def sweep_sets(field, seeds: int):
    """Seeded generic and collinear-special sets of 4 to 10 plane points."""
    for seed in range(seeds):
        d = 4 + seed % 7
        yield random_points(2, d, field, seed=seed)
        on_line = 3 + seed % (d - 3)
        yield line_and_general(field, on_line, d - on_line, seed)


def test_case_one_removals_are_surjective(field):
    """
    Test that without generators in degree l + 1 every removal of one point
    keeps S_1 ⊗ I(Z)_l → I(Z)_{l+1} surjective.
    """

    checked = 0
    for d in (4, 7, 11, 12):
        for seed in range(4):
            X = random_points(2, d, field, seed=seed)
            label = classify_case(X)
            if label.case != 1:
                continue
            for index in range(d):
                child = KoszulComplex(X.without(index))
                assert child.rank(1, label.l) == child.ideal_dim(label.l + 1)
            checked += 1
    assert checked >= 8


def test_removal_loses_at_most_one_generator(field, five_points, collinear):
    """
    Test that removing a point whose complement is not truncated drops at
    most one generator of degree l + 1.
    """

    sets = [five_points, collinear] + list(sweep_sets(field, 14))
    untruncated = 0
    for X in sets:
        full = KoszulComplex(X)
        l = critical_degree(X, full.hilbert)  # noqa: E741
        before = min_gens(X, l + 1, full)
        for index in range(len(X)):
            Z = X.without(index)
            if is_truncated(hilbert(Z), full.hilbert):
                continue
            untruncated += 1
            assert min_gens(Z, l + 1) >= before - 1
    assert untruncated > 0


@pytest.mark.slow
def test_find_subset_sweep(field):
    """
    Test 200 seeded plane point sets, generic and with a long collinear run,
    for every m: the chain exists and its final ranks are the predicted ones.
    """

    sets = list(sweep_sets(field, 100))
    assert len(sets) == 200
    for X in sets:
        full = KoszulComplex(X)
        for m in range(1, len(X)):
            chain = find_subset(X, m)
            assert chain.found, (X.points, m)
            assert len(chain.subset) == m
            assert is_truncated(hilbert(X.subset(chain.subset)), full.hilbert)
            assert chain.verification
            for check in chain.verification:
                assert check.actual == subset_mu_rank(X, m, check.s, full)
