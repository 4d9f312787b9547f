import pytest

from subset_syzygy.algebra.koszul import KoszulComplex, graded_betti, ideal_dim_from_betti
from subset_syzygy.algebra.pointideal import PointSet, random_points
from subset_syzygy.algebra.predictor import (
    guess_ranks,
    guess_twists,
    mrc_predicted_betti,
    prediction_report,
    subset_mu_rank,
    truncated_hf,
)
from subset_syzygy.errors import PreconditionError


def test_truncated_hf(generic_p2, five_points):
    """
    Test min{h_X(t), e}.
    """

    table = truncated_hf(generic_p2[10], 6)
    assert table.values == (1, 3, 6, 6)
    assert table.degree == 6
    assert truncated_hf(five_points, 4).values == (1, 3, 4, 4)
    assert truncated_hf(five_points, 1).values == (1, 1)

    for e in (0, 5):
        with pytest.raises(PreconditionError):
            truncated_hf(five_points, e)


@pytest.mark.parametrize(
    "d, expected",
    [
        (3, {(0, 2): 3, (1, 3): 2}),
        (5, {(0, 2): 1, (0, 3): 2, (1, 4): 2}),
        (6, {(0, 3): 4, (1, 4): 3}),
        (10, {(0, 4): 5, (1, 5): 4}),
    ],
)
def test_mrc_predicted_betti(d, expected):
    """
    Test maximal rank tables, including the triangular numbers d = C(k+2, 2)
    where I(X) is generated by k+2 forms of degree k+1.
    """

    assert mrc_predicted_betti(2, d).entries == expected


def test_mrc_agrees_with_generic_points(generic_p2):
    """
    Test that seeded generic points have the maximal rank table.
    """

    for d in (4, 7, 8, 9):
        assert graded_betti(generic_p2[d]).entries == mrc_predicted_betti(2, d).entries

    with pytest.raises(PreconditionError):
        mrc_predicted_betti(3, 5)
    with pytest.raises(PreconditionError):
        mrc_predicted_betti(2, 0)


def test_subset_mu_rank(five_points):
    """
    Test the predicted rank of S_1 ⊗ I(Z)_2 → I(Z)_3 for 4-subsets of the
    five points.
    """

    assert subset_mu_rank(five_points, 4, 2) == 6

    # The subset {1, 2, 4, 5} attains it
    Z = five_points.subset([0, 1, 3, 4])
    assert KoszulComplex(Z).rank(1, 2) == 6


def test_subset_mu_rank_needs_the_plane(field):
    with pytest.raises(PreconditionError):
        subset_mu_rank(random_points(3, 6, field, seed=1), 4, 2)


def test_guess_for_generic_subset(generic_p2):
    """
    Test that the guess reproduces the table of six generic points.
    """

    X = generic_p2[10]
    guess = guess_ranks(X, 6)
    assert list(guess_twists(2, truncated_hf(X, 6))) == [3, 4, 5]
    assert guess.derived_betti.entries == {(0, 3): 4, (1, 4): 3}
    assert guess.ranks == {(0, 3): 0, (0, 4): 0, (1, 3): 9, (0, 5): 0, (1, 4): 15, (2, 3): 12}
    assert guess.entries[(1, 3)].binding == "complex"
    assert guess.entries[(2, 3)].binding == "containment"
    assert guess.kernel_dims[(1, 3)] == 3

    Y = X.subset(range(6))
    complex = KoszulComplex(Y)
    report = prediction_report(guess, graded_betti(Y, complex=complex), complex)
    assert report.all_match
    assert [(entry.p, entry.twist) for entry in report.betti] == [(0, 3), (1, 4)]
    assert [(r.p, r.q) for r in report.ranks] == [(1, 3), (1, 4), (2, 3)]


def test_guess_on_a_window(generic_p2):
    """
    Test that a window only predicts the twists asked for.
    """

    guess = guess_ranks(generic_p2[10], 6, twists=[5, 4, 5])
    assert sorted(q for p, q in guess.entries if p == 0) == [4, 5]
    assert guess.derived_betti.entries == {(1, 4): 3}


@pytest.mark.parametrize("e", range(2, 10))
def test_guess_satisfies_euler_identity(generic_p2, e):
    """
    Test that the predicted table is nonnegative and reproduces dim I_t of
    the truncated Hilbert function in every degree.
    """

    X = generic_p2[10]
    guess = guess_ranks(X, e)
    truncated = truncated_hf(X, e)
    assert all(beta > 0 for beta in guess.derived_betti.entries.values())
    for t in range(max(guess_twists(2, truncated)) + 3):
        assert ideal_dim_from_betti(guess.derived_betti, t) == truncated.ideal_dim(t)


def test_guess_keeps_ranks_where_truncation_changes_nothing(field):
    """
    Test five points on a line and one off it: I(Y)_q = I(X)_q for q <= 3
    when e = 5, and there the guess copies the ranks of X.
    """

    rows = [[1, i, 0] for i in range(5)] + [[0, 0, 1]]
    X = PointSet.create(field, 2, rows)
    complex = KoszulComplex(X)
    assert complex.hilbert.values == (1, 3, 4, 5, 6, 6)

    guess = guess_ranks(X, 5, complex=complex)
    truncated = truncated_hf(X, 5, complex.hilbert)
    unchanged = [
        (p, q)
        for (p, q) in guess.entries
        if p > 0 and truncated.ideal_dim(q) == complex.ideal_dim(q)
    ]
    assert unchanged
    for p, q in unchanged:
        assert guess.entries[(p, q)].rank == complex.exact_rank(p, q)
