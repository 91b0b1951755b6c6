import numpy as np
import pytest

from oracles import jump_values_eig, random_exponent
from pctoeplitz import (
    DimensionMismatch, InvalidInput, JumpPointEvaluation, SingularValue, UnitPoint, constant, eval_sided,
    evaluate, evaluate_many, exp_laurent, identity, inverse, jump, laurent, piecewise_constant, product, tilde,
)
from pctoeplitz.symbols import TWO_PI, normalize_angle

rng = np.random.default_rng(7)


def test_unit_point_normalizes_and_compares_with_tolerance():
    assert UnitPoint(-np.pi / 2).theta == pytest.approx(3 * np.pi / 2)
    assert UnitPoint(TWO_PI) == UnitPoint(0.0)
    assert UnitPoint(1e-13) == UnitPoint(TWO_PI - 1e-13)
    assert UnitPoint(0.0) != UnitPoint(1e-9)
    assert abs(UnitPoint(np.pi / 3).z - np.exp(1j * np.pi / 3)) < 1e-15
    assert UnitPoint(0.5).conj() == UnitPoint(-0.5)


def test_normalize_angle_range():
    for t in (-10.0, -1e-20, 0.0, 6.5, 100.0):
        assert 0.0 <= normalize_angle(t) < TWO_PI


def test_jump_values_match_eigen_oracle():
    B = random_exponent(rng, 3, 0.4)
    theta = np.array([0.1, 1.0, 2.0, 4.0, 6.0])
    got = jump(0.7, B).values(theta)
    assert np.max(np.abs(got - jump_values_eig(B, 0.7, theta))) < 1e-12


def test_jump_one_sided_limits_and_ratio():
    B = random_exponent(rng, 2, 0.4)
    s = jump(1.2, B)
    plus = eval_sided(s, 1.2, "plus")
    minus = eval_sided(s, UnitPoint(1.2), -1)
    ratio = np.linalg.solve(plus, minus)
    w, V = np.linalg.eig(B)
    expected = V @ np.diag(np.exp(2j * np.pi * w)) @ np.linalg.inv(V)
    assert np.max(np.abs(ratio - expected)) < 1e-12
    # limits agree with nearby values
    assert np.max(np.abs(evaluate(s, 1.2 + 1e-9) - plus)) < 1e-7
    assert np.max(np.abs(evaluate(s, 1.2 - 1e-9) - minus)) < 1e-7


def test_evaluation_at_jump_is_refused():
    s = jump(0.0, [[0.3]])
    with pytest.raises(JumpPointEvaluation):
        evaluate(s, 0.0)
    with pytest.raises(JumpPointEvaluation):
        evaluate_many(s, [1.0, TWO_PI])


def test_product_order_and_dimension_check():
    A = constant([[1, 2], [0, 1]])
    B = constant([[1, 0], [3, 1]])
    assert np.allclose(evaluate(product(A, B), 0.3), np.array([[7, 2], [3, 1]]))
    with pytest.raises(DimensionMismatch):
        product(identity(2), identity(3))
    with pytest.raises(InvalidInput):
        constant([[1, 2, 3]])


def test_laurent_and_exp_laurent_values():
    s = laurent({1: [[2.0]], -1: [[0.5]], 0: [[1.0]]})
    t = 0.4
    assert evaluate(s, t)[0, 0] == pytest.approx(1 + 2 * np.exp(1j * t) + 0.5 * np.exp(-1j * t))
    e = exp_laurent({1: [[0.3]], -2: [[0.1j]]})
    assert evaluate(e, t)[0, 0] == pytest.approx(np.exp(0.3 * np.exp(1j * t) + 0.1j * np.exp(-2j * t)))


def test_piecewise_constant_values_limits_and_jumps():
    A, B = np.array([[2.0]]), np.array([[3.0]])
    s = piecewise_constant([(0.0, 1.0, A), (1.0, 0.0, B)])
    assert s.jump_thetas == (0.0, 1.0)
    assert evaluate(s, 0.5)[0, 0] == 2.0
    assert evaluate(s, 3.0)[0, 0] == 3.0
    assert eval_sided(s, 1.0, "plus")[0, 0] == 3.0
    assert eval_sided(s, 1.0, "minus")[0, 0] == 2.0
    assert eval_sided(s, 0.0, "minus")[0, 0] == 3.0
    with pytest.raises(InvalidInput):
        piecewise_constant([(0.0, 1.0, A), (2.0, 0.0, B)])


def test_inverse_and_singularity():
    s = product(laurent({0: [[2.0, 0], [0, 1.0]], 1: [[0, 0.5], [0, 0]]}), jump(0.5, [[0.2, 0], [0.1, -0.1]]))
    t = np.array([0.1, 2.0, 5.0])
    assert np.max(np.abs(inverse(s).values(t) @ s.values(t) - np.eye(2))) < 1e-12
    with pytest.raises(SingularValue):
        inverse(laurent({0: [[1.0]], 1: [[1.0]]})).values(np.array([np.pi]))


def test_tilde_reflects_angles_and_swaps_sides():
    B = random_exponent(rng, 2, 0.4)
    s = product(exp_laurent({1: random_exponent(rng, 2, 0.3)}), jump(1.0, B))
    ts = tilde(s)
    for t in (0.3, 2.0, 4.5):
        assert np.allclose(evaluate(ts, t), evaluate(s, -t))
    assert ts.jump_thetas == pytest.approx((TWO_PI - 1.0,))
    assert np.allclose(eval_sided(ts, -1.0, "plus"), eval_sided(s, 1.0, "minus"))


def test_shared_jump_points_are_merged():
    s = product(jump(0.5, [[0.1]]), jump(0.5 + 1e-14, [[0.2]]))
    assert len(s.jump_thetas) == 1
