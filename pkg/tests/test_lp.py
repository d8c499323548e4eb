import numpy as np
import pytest

from muharmonic.lp import l1_distance_to_span


def test_hand_case_distance_one():
    d, t = l1_distance_to_span(np.array([1.0, 0.0]), np.array([[1.0], [-1.0]]))
    assert abs(d - 1.0) < 1e-12
    # any t in [0, 1] is optimal; the reported t must achieve the distance
    assert abs(np.abs(np.array([1.0, 0.0]) - np.array([[1.0], [-1.0]]) @ t).sum() - d) < 1e-12


def test_member_has_distance_zero():
    b = np.array([[1.0, 0.0], [-1.0, 1.0], [0.0, 2.0]])
    x = b @ np.array([0.7, -1.3])
    d, _ = l1_distance_to_span(x, b)
    assert d < 1e-12


def test_empty_span():
    d, t = l1_distance_to_span(np.array([1.0, -2.0, 3.0]), np.zeros((3, 0)))
    assert d == 6.0
    assert t.size == 0


def test_upper_bound_validity_random():
    rng = np.random.default_rng(7)
    for _ in range(30):
        dim, r = int(rng.integers(2, 9)), int(rng.integers(1, 4))
        b = rng.standard_normal((dim, r))
        x = rng.standard_normal(dim)
        d, t_opt = l1_distance_to_span(x, b)
        assert abs(np.abs(x - b @ t_opt).sum() - d) < 1e-9
        for _ in range(50):
            t = rng.standard_normal(r)
            assert d <= np.abs(x - b @ t).sum() + 1e-9


def test_against_grid_refinement_small():
    rng = np.random.default_rng(8)
    for _ in range(10):
        dim = int(rng.integers(2, 6))
        b = rng.standard_normal((dim, 1))
        x = rng.standard_normal(dim)
        d, _ = l1_distance_to_span(x, b)
        # independent 1-d oracle: nested grid scan with halving window
        best, width = 0.0, 10.0
        value = np.inf
        for _ in range(60):
            ts = np.linspace(best - width, best + width, 81)
            vals = np.abs(x[:, None] - b @ ts[None, :]).sum(axis=0)
            best = ts[np.argmin(vals)]
            value = vals.min()
            width *= 0.5
        assert abs(d - value) < 1e-6


def test_rejects_complex():
    with pytest.raises(ValueError):
        l1_distance_to_span(np.array([1.0 + 1j, 0.0]), np.array([[1.0], [1.0]]))
