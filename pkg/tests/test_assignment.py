import itertools

import numpy as np
import pytest

from assignment import max_assignment
from errors import ValidationError


def _exhaustive(score):
    m = score.shape[0]
    perms = np.array(list(itertools.permutations(range(m))))
    values = score[np.arange(m), perms].sum(axis=1)
    k = int(np.argmax(values))
    return tuple(int(i) for i in perms[k]), float(values[k])


@pytest.mark.parametrize("m", [6, 7])
def test_agrees_with_exhaustive_search(m):
    rng = np.random.default_rng(100 + m)
    for _ in range(100):
        score = rng.standard_normal((m, m))
        sigma, value = max_assignment(score)
        perm, expected = _exhaustive(score)
        assert value == pytest.approx(expected, abs=1e-12)
        assert sigma.images == perm


def test_ties_break_lexicographically():
    # Każda permutacja daje tę samą wartość
    sigma, value = max_assignment(np.ones((4, 4)))
    assert sigma.images == (0, 1, 2, 3)
    assert value == pytest.approx(4.0)


def test_partial_ties():
    score = np.array([
        [1.0, 1.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ])
    sigma, _ = max_assignment(score)
    assert sigma.images == (0, 1, 2)


def test_permutation_matrix_recovers_itself():
    score = np.zeros((5, 5))
    images = (3, 0, 4, 1, 2)
    score[np.arange(5), images] = 1.0
    sigma, value = max_assignment(score)
    assert sigma.images == images
    assert value == 5.0


def test_rejects_complex():
    with pytest.raises(ValidationError):
        max_assignment(np.eye(3, dtype=complex))


def test_rejects_non_square():
    with pytest.raises(ValidationError):
        max_assignment(np.zeros((2, 3)))


def test_rejects_nan():
    score = np.eye(3)
    score[1, 1] = np.nan
    with pytest.raises(ValidationError):
        max_assignment(score)


def test_large_scores_do_not_swallow_small_gains():
    sigma, value = max_assignment(np.array([[1e6, 1e6 + 1e-4], [0.0, 0.0]]))
    assert sigma.images == (1, 0)
    assert value == pytest.approx(1e6 + 1e-4, abs=1e-9)


def test_large_scale_exact_ties_still_break_lexicographically():
    score = np.full((3, 3), 1e8)
    sigma, _ = max_assignment(score)
    assert sigma.images == (0, 1, 2)


@pytest.mark.parametrize("axis", [0, 1])
def test_invariant_under_row_or_column_shift(axis):
    rng = np.random.default_rng(7)
    for _ in range(20):
        score = rng.standard_normal((6, 6))
        k = int(rng.integers(6))
        shifted = score.copy()
        if axis == 0:
            shifted[k, :] += 3.5
        else:
            shifted[:, k] += 3.5
        sigma, value = max_assignment(score)
        sigma_shifted, value_shifted = max_assignment(shifted)
        assert sigma_shifted == sigma
        assert value_shifted == pytest.approx(value + 3.5, abs=1e-12)
