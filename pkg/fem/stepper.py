"""Module marches the characteristic Galerkin scheme from the payoff to the maturity.

Each step integrates the previous solution along the characteristics against the test functions and
solves ``(M/dt + A_D + A_J + r M) F_new = 1/dt integral F(X(x)) psi_i + g_J(tau + dt)`` with
Dirichlet rows at ``tau + dt``, using restarted GMRES with a Jacobi preconditioner.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import numpy.typing as npt
from scipy import sparse
from scipy.sparse.linalg import LinearOperator, gmres

from exceptions import ConfigurationError
from fem.assembly import OperatorSet, apply_dirichlet, assemble_operators
from fem.characteristics import BatesVelocity, FootMethod, VelocityField
from fem.exceptions import LinearSolverError
from fem.grid import GridConfig
from fem.location import interpolate, interpolate_many
from fem.mesh import Mesh, build_rect_mesh
from fem.transport import CharacteristicTransport, assemble_transport
from model.params import BatesParams, MarketSpec
from model.validation import ensure_admissible

type FloatArray = npt.NDArray[np.float64]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    """Time stepping and linear solver settings.

    Attributes:
        method (FootMethod): Integrator of the characteristic feet.
        linear_tol (float): Relative residual at which GMRES stops.
        linear_maxit (int): Maximum number of GMRES restart cycles.
        restart (int): Krylov dimension between restarts.
        explicit_jump (bool): Lag the jump term to the right-hand side.
        dt (float | None): Time step; ``T / n_steps`` when omitted.
    """

    method: FootMethod = FootMethod.EXACT
    linear_tol: float = 1e-10
    linear_maxit: int = 200
    restart: int = 50
    explicit_jump: bool = False
    dt: float | None = None

    def __post_init__(self) -> None:
        """Check the solver settings.

        Raises:
            ConfigurationError: If a tolerance, count or step is not positive.
        """
        if self.linear_tol <= 0:
            raise ConfigurationError(f"linear_tol must be positive, got {self.linear_tol}")
        if self.linear_maxit < 1 or self.restart < 1:
            raise ConfigurationError("linear_maxit and restart must be at least 1")
        if self.dt is not None and self.dt <= 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")


@dataclass(frozen=True)
class TimeState:
    """Nodal option values at a time to maturity.

    Attributes:
        tau (float): Time to maturity in years.
        values (FloatArray): Option value at every mesh node.
    """

    tau: float
    values: FloatArray


@dataclass(frozen=True)
class PriceSurface:
    """Solution of a finite element run at ``tau = T``.

    Attributes:
        mesh (Mesh): The mesh.
        tau (float): Time to maturity of the values.
        values (FloatArray): Nodal option values.
        market (MarketSpec): Contract that was priced.
    """

    mesh: Mesh
    tau: float
    values: FloatArray
    market: MarketSpec

    def price_at(self, s: float, y: float | None = None) -> float:
        """Interpolate the call price at spot ``s`` and variance ``y``.

        Args:
            s (float): Spot price.
            y (float | None): Variance; the market's ``y0`` when omitted.

        Returns:
            float: Call price.
        """
        variance = self.market.y0 if y is None else y
        return interpolate(self.mesh, self.values, (math.log(s), variance))

    def prices_at(self, s_values: FloatArray, y: float | None = None) -> FloatArray:
        """Interpolate call prices at many spots.

        Args:
            s_values (FloatArray): Spot prices.
            y (float | None): Variance; the market's ``y0`` when omitted.

        Returns:
            FloatArray: Call prices.
        """
        variance = self.market.y0 if y is None else y
        log_spots = np.log(np.asarray(s_values, dtype=float))
        points = np.column_stack([log_spots, np.full(log_spots.shape, variance)])
        return interpolate_many(self.mesh, self.values, points)

    def price_at_strike(self, s: float, strike: float, y: float | None = None) -> float:
        """Price another strike by homogeneity, ``C(s, K) = K / K_ref C(s K_ref / K, K_ref)``.

        Args:
            s (float): Spot price.
            strike (float): Strike to price.
            y (float | None): Variance; the market's ``y0`` when omitted.

        Returns:
            float: Call price.
        """
        reference = self.market.strike
        return strike / reference * self.price_at(s * reference / strike, y)

    def to_csv(self) -> str:
        """Serialize the nodal values.

        Returns:
            str: CSV with header ``x,y,value`` and one row per node in mesh order.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["x", "y", "value"])
        for (x, y), value in zip(self.mesh.nodes, self.values, strict=True):
            writer.writerow([repr(float(x)), repr(float(y)), repr(float(value))])
        return buffer.getvalue()

    def write_csv(self, path: Path) -> None:
        """Write the nodal values as CSV.

        Args:
            path (Path): Destination.
        """
        path.write_text(self.to_csv(), encoding="utf-8", newline="\n")


def payoff_state(mesh: Mesh, strike: float) -> TimeState:
    """Return the state at maturity, ``max(e^x - K, 0)``.

    Args:
        mesh (Mesh): The mesh.
        strike (float): Strike.

    Returns:
        TimeState: State at ``tau = 0``.
    """
    return TimeState(tau=0.0, values=np.maximum(np.exp(mesh.nodes[:, 0]) - strike, 0))


def solve_linear(
    matrix: sparse.csr_matrix,
    rhs: FloatArray,
    cfg: SolverConfig,
    initial: FloatArray | None = None,
) -> FloatArray:
    """Solve a step system with Jacobi-preconditioned restarted GMRES.

    Args:
        matrix (sparse.csr_matrix): System matrix.
        rhs (FloatArray): Right-hand side.
        cfg (SolverConfig): Tolerance and iteration limits.
        initial (FloatArray | None): Initial guess.

    Returns:
        FloatArray: Solution.

    Raises:
        LinearSolverError: If the diagonal has zeros or GMRES does not converge.
    """
    diagonal = matrix.diagonal()
    residuals: list[float] = []
    if np.any(diagonal == 0):
        raise LinearSolverError("zero diagonal entry, Jacobi preconditioner undefined", np.array(residuals))
    preconditioner = LinearOperator(matrix.shape, matvec=lambda vector: vector / diagonal, dtype=float)
    solution, info = gmres(
        matrix,
        rhs,
        x0=initial,
        rtol=cfg.linear_tol,
        atol=0.0,
        restart=cfg.restart,
        maxiter=cfg.linear_maxit,
        M=preconditioner,
        callback=residuals.append,
        callback_type="pr_norm",
    )
    if info != 0:
        raise LinearSolverError(
            f"GMRES did not reach rtol={cfg.linear_tol} in {cfg.linear_maxit} cycles (info={info})",
            np.array(residuals),
        )
    logger.debug("GMRES converged in %d iterations", len(residuals))
    return solution


def step(  # noqa: WPS211
    state: TimeState,
    ops: OperatorSet,
    cfg: SolverConfig,
    params: BatesParams,
    market: MarketSpec,
    velocity: VelocityField | None = None,
    transport: CharacteristicTransport | None = None,
) -> TimeState:
    """Advance the solution by one time step.

    Args:
        state (TimeState): Solution at ``tau``.
        ops (OperatorSet): Assembled operators.
        cfg (SolverConfig): Step settings, ``dt`` must be set.
        params (BatesParams): Model parameters.
        market (MarketSpec): The rate is used.
        velocity (VelocityField | None): Convection field; the Bates one when omitted.
        transport (CharacteristicTransport | None): Transport operator of ``cfg.dt``; traced from
            ``velocity`` with the degree 2 rule when omitted or assembled for another step length.

    Returns:
        TimeState: Solution at ``tau + dt``.

    Raises:
        ConfigurationError: If ``cfg.dt`` is not set.
    """
    if cfg.dt is None:
        raise ConfigurationError("step requires SolverConfig.dt")
    dt = cfg.dt
    if transport is None or transport.dt != dt:
        if velocity is None:
            velocity = BatesVelocity(params, market.rate)
        transport = assemble_transport(ops.mesh, velocity, dt, cfg.method)

    new_tau = state.tau + dt
    matrix = ops.mass * (1 / dt + market.rate) + ops.diffusion
    rhs = transport.apply(state.values, ops.boundary, state.tau) / dt + ops.jump_boundary(new_tau)
    if cfg.explicit_jump:
        rhs = rhs - ops.jump @ state.values
    else:
        matrix = matrix + ops.jump
    matrix, rhs = apply_dirichlet(ops, sparse.csr_matrix(matrix), rhs, new_tau)
    values = solve_linear(matrix, rhs, cfg, initial=state.values)
    return TimeState(tau=new_tau, values=values)


def run(
    params: BatesParams,
    market: MarketSpec,
    grid: GridConfig,
    cfg: SolverConfig,
    mesh: Mesh | None = None,
) -> PriceSurface:
    """Solve the pricing equation from the payoff to the maturity.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        grid (GridConfig): Mesh, time and quadrature resolution.
        cfg (SolverConfig): Step settings; ``cfg.dt`` overrides ``grid.n_steps``.
        mesh (Mesh | None): Mesh to use instead of the structured one built from ``grid``.

    Returns:
        PriceSurface: Nodal values at ``tau = T``.
    """
    ensure_admissible(params, market)
    if mesh is None:
        mesh = build_rect_mesh(grid.x_min, grid.x_max, grid.y_max, grid.nx, grid.ny)
    n_steps = grid.n_steps if cfg.dt is None else max(1, round(market.maturity / cfg.dt))
    cfg = replace(cfg, dt=market.maturity / n_steps)
    ops = assemble_operators(mesh, params, market, grid)
    velocity = BatesVelocity(params, market.rate)
    transport = assemble_transport(mesh, velocity, cfg.dt, cfg.method, grid.tri_quad_order)
    logger.info("Characteristic transport: %d quadrature feet leave the domain per step", transport.n_inflow)

    state = payoff_state(mesh, market.strike)
    for _ in range(n_steps):
        state = step(state, ops, cfg, params, market, velocity, transport)
    surface = PriceSurface(mesh=mesh, tau=state.tau, values=state.values, market=market)
    logger.info(
        "FEM run finished: %d steps, tau=%.6g, price at (s0, y0)=%.8g",
        n_steps,
        state.tau,
        surface.price_at(market.s0),
    )
    return surface
