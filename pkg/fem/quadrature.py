"""Module provides quadrature rules on the reference triangle and on intervals.

Triangle rules are given in barycentric coordinates with weights summing to one, so an integral over
a physical triangle is ``area * sum(w_q f(p_q))``.
"""
from typing import Final

import numpy as np
import numpy.typing as npt

from fem.exceptions import AssemblyError

type FloatArray = npt.NDArray[np.float64]

_DUNAVANT_A: Final = 0.445948490915965
_DUNAVANT_B: Final = 0.091576213509771
_DUNAVANT_WA: Final = 0.223381589678011
_DUNAVANT_WB: Final = 0.109951743655322

_TRIANGLE_RULES: Final = {  # noqa: WPS407
    1: (np.array([[1 / 3, 1 / 3, 1 / 3]]), np.array([1.0])),
    2: (
        np.array([[2 / 3, 1 / 6, 1 / 6], [1 / 6, 2 / 3, 1 / 6], [1 / 6, 1 / 6, 2 / 3]]),
        np.full(3, 1 / 3),
    ),
    4: (
        np.array([
            [1 - 2 * _DUNAVANT_A, _DUNAVANT_A, _DUNAVANT_A],
            [_DUNAVANT_A, 1 - 2 * _DUNAVANT_A, _DUNAVANT_A],
            [_DUNAVANT_A, _DUNAVANT_A, 1 - 2 * _DUNAVANT_A],
            [1 - 2 * _DUNAVANT_B, _DUNAVANT_B, _DUNAVANT_B],
            [_DUNAVANT_B, 1 - 2 * _DUNAVANT_B, _DUNAVANT_B],
            [_DUNAVANT_B, _DUNAVANT_B, 1 - 2 * _DUNAVANT_B],
        ]),
        np.array([_DUNAVANT_WA, _DUNAVANT_WA, _DUNAVANT_WA, _DUNAVANT_WB, _DUNAVANT_WB, _DUNAVANT_WB]),
    ),
}

SUPPORTED_TRIANGLE_ORDERS: Final = tuple(sorted(_TRIANGLE_RULES))


def triangle_rule(order: int) -> tuple[FloatArray, FloatArray]:
    """Return a triangle quadrature rule exact for polynomials of the given degree.

    Args:
        order (int): Polynomial degree, one of 1, 2 or 4.

    Returns:
        tuple[FloatArray, FloatArray]: Barycentric points ``(Q, 3)`` and weights ``(Q,)`` summing to 1.

    Raises:
        AssemblyError: If no rule of that order is available.
    """
    if order not in _TRIANGLE_RULES:
        raise AssemblyError(f"triangle quadrature order {order} not in {SUPPORTED_TRIANGLE_ORDERS}")
    points, weights = _TRIANGLE_RULES[order]
    return points.copy(), weights / weights.sum()


def gauss_legendre(n_points: int, lower: float, upper: float) -> tuple[FloatArray, FloatArray]:
    """Return Gauss-Legendre nodes and weights mapped to ``[lower, upper]``.

    Args:
        n_points (int): Number of nodes.
        lower (float): Lower bound.
        upper (float): Upper bound.

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights.
    """
    nodes, weights = np.polynomial.legendre.leggauss(n_points)
    half = (upper - lower) / 2
    return lower + half * (nodes + 1), half * weights
