"""Module provides the Dirichlet data of the localized pricing problem.

Values are parameterized by the time to maturity ``tau``: zero on the left edge, the right-edge
asymptote, ``e^x`` on the top edge and the Merton jump-diffusion price on the bottom edge where the
variance vanishes.
"""
import logging
import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np
import numpy.typing as npt

from fem.exceptions import BoundaryContractError
from fem.grid import GridConfig, RightBoundary
from fem.mesh import BoundaryTag, Mesh
from model.params import BatesParams, MarketSpec
from model.validation import feller_holds
from reference.merton import merton_series_price

type FloatArray = npt.NDArray[np.float64]
type BoolArray = npt.NDArray[np.bool_]

_ON_EDGE_TOLERANCE = 1e-12

logger = logging.getLogger(__name__)


class DirichletData(Protocol):
    """Nodes with prescribed values and the values themselves as a function of ``tau``."""

    @property
    def mask(self) -> BoolArray:
        """Per-node flag, True where the value is prescribed."""

    def values(self, tau: float) -> FloatArray:
        """Return nodal values, meaningful where ``mask`` is set.

        Args:
            tau (float): Time to maturity.
        """


@dataclass(frozen=True)
class BoundaryData:
    """Dirichlet data of the Bates pricing problem on a tagged mesh.

    Attributes:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        right_bc (RightBoundary): Right-edge convention.
        x (FloatArray): Log-price of every node.
        tags (npt.NDArray[np.int64]): Boundary tag of every node.
        mask (BoolArray): Nodes carrying a Dirichlet row.
    """

    params: BatesParams
    market: MarketSpec
    right_bc: RightBoundary
    x: FloatArray
    tags: npt.NDArray[np.int64]
    mask: BoolArray

    def values(self, tau: float) -> FloatArray:
        """Return the Dirichlet values at ``tau`` on every masked node, zero elsewhere.

        Args:
            tau (float): Time to maturity.

        Returns:
            FloatArray: Nodal values.
        """
        result = np.zeros(self.x.shape[0])
        result[self.mask] = tagged_values(
            self.params, self.market, self.right_bc, self.x[self.mask], self.tags[self.mask], tau,
        )
        return result


def build_boundary_data(mesh: Mesh, params: BatesParams, market: MarketSpec, grid: GridConfig) -> BoundaryData:
    """Collect the Dirichlet nodes of a mesh.

    Args:
        mesh (Mesh): Tagged mesh.
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        grid (GridConfig): Boundary conventions.

    Returns:
        BoundaryData: Dirichlet data bound to the mesh nodes.
    """
    mask = mesh.boundary_tags != BoundaryTag.INTERIOR
    if not grid.impose_bottom_bc:
        if feller_holds(params):
            mask &= mesh.boundary_tags != BoundaryTag.BOTTOM
        else:
            logger.warning("Feller condition violated, imposing the y=0 boundary values anyway")
    logger.debug("Dirichlet rows: %d of %d nodes", int(mask.sum()), mesh.n_nodes)
    return BoundaryData(
        params=params,
        market=market,
        right_bc=grid.right_bc,
        x=mesh.nodes[:, 0].copy(),
        tags=mesh.boundary_tags,
        mask=mask,
    )


def tagged_values(  # noqa: WPS211
    params: BatesParams,
    market: MarketSpec,
    right_bc: RightBoundary,
    x: FloatArray,
    tags: npt.NDArray[np.int64],
    tau: float,
) -> FloatArray:
    """Evaluate the boundary value of each node from its tag.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Strike and rate are used.
        right_bc (RightBoundary): Right-edge convention.
        x (FloatArray): Log-prices.
        tags (npt.NDArray[np.int64]): Boundary tags, none of them interior.
        tau (float): Time to maturity.

    Returns:
        FloatArray: Boundary values.
    """
    spot = np.exp(x)
    result = np.zeros(x.shape[0])
    right = tags == BoundaryTag.RIGHT
    if right_bc is RightBoundary.EXPONENTIAL:
        result[right] = spot[right]
    else:
        result[right] = np.maximum(spot[right] - market.strike * math.exp(-market.rate * tau), 0)
    top = tags == BoundaryTag.TOP
    result[top] = spot[top]
    bottom = tags == BoundaryTag.BOTTOM
    if np.any(bottom):
        result[bottom] = merton_series_price(params, spot[bottom], market.strike, tau, market.rate)
    return result


def boundary_values(  # noqa: WPS211
    params: BatesParams,
    market: MarketSpec,
    x: float,
    y: float,
    tau: float,
    grid: GridConfig | None = None,
) -> float:
    """Return the Dirichlet value at a point of the domain boundary.

    Corners take the bottom or top value.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Strike and rate are used.
        x (float): Log-price.
        y (float): Variance.
        tau (float): Time to maturity, ``tau = 0`` gives the payoff on the bottom edge.
        grid (GridConfig | None): Domain extents and right-edge convention; the default grid when omitted.

    Returns:
        float: Boundary value.

    Raises:
        BoundaryContractError: If the point is not on the boundary.
    """
    if grid is None:
        grid = GridConfig()
    tag = _tag_of(grid, x, y)
    return float(tagged_values(params, market, grid.right_bc, np.array([x]), np.array([tag]), tau)[0])


def _tag_of(grid: GridConfig, x: float, y: float) -> BoundaryTag:
    """Classify a point by the edge it lies on.

    Args:
        grid (GridConfig): Domain extents.
        x (float): Log-price.
        y (float): Variance.

    Returns:
        BoundaryTag: Edge tag, bottom and top first.

    Raises:
        BoundaryContractError: If the point is not on an edge.
    """
    scale = max(grid.x_max - grid.x_min, grid.y_max, 1.0) * _ON_EDGE_TOLERANCE
    edges = (
        (BoundaryTag.BOTTOM, abs(y)),
        (BoundaryTag.TOP, abs(y - grid.y_max)),
        (BoundaryTag.LEFT, abs(x - grid.x_min)),
        (BoundaryTag.RIGHT, abs(x - grid.x_max)),
    )
    inside = grid.x_min - scale <= x <= grid.x_max + scale and -scale <= y <= grid.y_max + scale
    for tag, distance in edges:
        if inside and distance <= scale:
            return tag
    raise BoundaryContractError(f"({x!r}, {y!r}) is not on the boundary of the domain")
