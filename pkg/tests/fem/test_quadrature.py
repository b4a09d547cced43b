"""Tests of the quadrature rules."""
import math

import numpy as np
import pytest

from fem.exceptions import AssemblyError
from fem.quadrature import SUPPORTED_TRIANGLE_ORDERS, gauss_legendre, triangle_rule


@pytest.mark.parametrize("order", SUPPORTED_TRIANGLE_ORDERS)
def test_triangle_weights_sum_to_one(order: int) -> None:
    points, weights = triangle_rule(order)
    assert weights.sum() == pytest.approx(1.0, rel=1e-14)
    np.testing.assert_allclose(points.sum(axis=1), 1.0, rtol=1e-14)


@pytest.mark.parametrize("order", SUPPORTED_TRIANGLE_ORDERS)
def test_triangle_rule_exactness(order: int) -> None:
    """On the unit right triangle the mean of ``x^a y^b`` is ``2 a! b! / (a + b + 2)!``."""
    points, weights = triangle_rule(order)
    x, y = points[:, 1], points[:, 2]
    for a in range(order + 1):
        for b in range(order + 1 - a):
            exact = 2 * math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
            assert np.dot(weights, x**a * y**b) == pytest.approx(exact, rel=1e-12, abs=1e-15)


def test_unknown_triangle_order() -> None:
    with pytest.raises(AssemblyError, match="quadrature order"):
        triangle_rule(3)


def test_rule_is_a_copy() -> None:
    points, _ = triangle_rule(1)
    points[0, 0] = 5.0
    assert triangle_rule(1)[0][0, 0] == pytest.approx(1 / 3)


def test_gauss_legendre_on_interval() -> None:
    nodes, weights = gauss_legendre(8, -1.0, 3.0)
    assert np.all((nodes > -1.0) & (nodes < 3.0))
    assert weights.sum() == pytest.approx(4.0, rel=1e-14)
    assert np.dot(weights, nodes**15) == pytest.approx((3.0**16 - 1.0) / 16, rel=1e-12)
