"""Tests of the characteristic Galerkin time stepping."""
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np
import numpy.typing as npt
import pytest
from scipy import sparse

from exceptions import ConfigurationError
from fem.assembly import OperatorSet, assemble_mass, assemble_operators
from fem.characteristics import BatesVelocity, ConstantVelocity
from fem.exceptions import LinearSolverError
from fem.grid import GridConfig
from fem.mesh import BoundaryTag, Mesh, build_rect_mesh
from fem.stepper import PriceSurface, SolverConfig, TimeState, payoff_state, run, solve_linear, step
from fem.transport import assemble_transport
from model.exceptions import ParameterError
from model.params import BatesParams, MarketSpec

VELOCITY = (0.3, -0.2)
PAYOFF_KINK_UNDERSHOOT = 0.05


def _linear(points: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return 2.0 + 0.5 * points[:, 0] - 3.0 * points[:, 1]


@dataclass(frozen=True)
class TranslatedBoundary:
    """Exact boundary values of a linear field carried by a constant velocity."""

    nodes: npt.NDArray[np.float64]
    mask: npt.NDArray[np.bool_]

    def values(self, tau: float) -> npt.NDArray[np.float64]:
        return _linear(self.nodes + tau * np.asarray(VELOCITY))


def _transport_only(mesh: Mesh, mask: npt.NDArray[np.bool_]) -> OperatorSet:
    zeros = sparse.csr_matrix((mesh.n_nodes, mesh.n_nodes))
    return OperatorSet(
        mesh=mesh,
        mass=assemble_mass(mesh),
        diffusion=zeros,
        jump=zeros,
        jump_boundary=lambda tau: np.zeros(mesh.n_nodes),
        boundary=TranslatedBoundary(mesh.nodes, mask),
    )


def _market(rate: float) -> MarketSpec:
    return MarketSpec(s0=100, strike=100, maturity=1, rate=rate, y0=0.05)


def test_pure_advection_is_exact_for_linear_fields(s1: BatesParams) -> None:
    mesh = build_rect_mesh(0.0, 4.0, 1.0, 8, 8)
    ops = _transport_only(mesh, mesh.boundary_tags != 0)
    cfg = SolverConfig(dt=0.05, linear_tol=1e-13)
    transport = assemble_transport(mesh, ConstantVelocity(VELOCITY), 0.05)
    state = TimeState(tau=0.0, values=_linear(mesh.nodes))
    for _ in range(10):
        state = step(state, ops, cfg, s1, _market(0.0), transport=transport)
    assert state.tau == pytest.approx(0.5)
    np.testing.assert_allclose(state.values, _linear(mesh.nodes + 0.5 * np.asarray(VELOCITY)), atol=1e-10)


def test_discounting_without_operators(s1: BatesParams) -> None:
    mesh = build_rect_mesh(0.0, 4.0, 1.0, 4, 4)
    ops = _transport_only(mesh, np.zeros(mesh.n_nodes, dtype=bool))
    cfg = SolverConfig(dt=0.25, linear_tol=1e-12)
    initial = np.linspace(1.0, 2.0, mesh.n_nodes)
    state = TimeState(tau=0.0, values=initial)
    for _ in range(4):
        state = step(state, ops, cfg, s1, _market(0.05), velocity=ConstantVelocity((0.0, 0.0)))
    np.testing.assert_allclose(state.values, initial / (1 + 0.05 * 0.25) ** 4, rtol=1e-10)


def test_step_requires_dt(small_mesh: Mesh, s1: BatesParams) -> None:
    ops = _transport_only(small_mesh, small_mesh.boundary_tags != 0)
    with pytest.raises(ConfigurationError, match="dt"):
        step(payoff_state(small_mesh, 100), ops, SolverConfig(), s1, _market(0.05))


@pytest.mark.parametrize(
    "kwargs",
    [{"linear_tol": 0.0}, {"linear_maxit": 0}, {"restart": 0}, {"dt": -0.1}],
)
def test_solver_config_validation(kwargs: dict[str, float]) -> None:
    with pytest.raises(ConfigurationError):
        SolverConfig(**kwargs)


def test_payoff_state(small_mesh: Mesh) -> None:
    state = payoff_state(small_mesh, 100.0)
    assert state.tau == 0.0
    np.testing.assert_allclose(state.values, np.maximum(np.exp(small_mesh.nodes[:, 0]) - 100, 0))


def test_zero_diagonal_is_rejected() -> None:
    matrix = sparse.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(LinearSolverError, match="zero diagonal"):
        solve_linear(matrix, np.ones(2), SolverConfig())


def test_gmres_failure_reports_residuals() -> None:
    rng = np.random.default_rng(1)
    matrix = sparse.csr_matrix(np.eye(60) + rng.normal(scale=0.5, size=(60, 60)))
    with pytest.raises(LinearSolverError, match="GMRES") as error:
        solve_linear(matrix, np.ones(60), SolverConfig(linear_tol=1e-12, linear_maxit=1, restart=2))
    assert error.value.residuals.size > 0


def test_price_surface_interpolation_and_homogeneity(small_mesh: Mesh) -> None:
    surface = PriceSurface(mesh=small_mesh, tau=1.0, values=_linear(small_mesh.nodes), market=_market(0.05))
    assert surface.price_at(100.0) == pytest.approx(2.0 + 0.5 * math.log(100) - 3.0 * 0.05, rel=1e-12)
    assert surface.price_at(100.0, y=0.5) == pytest.approx(0.5 + 0.5 * math.log(100), rel=1e-12)
    expected = [surface.price_at(100.0), surface.price_at(150.0)]
    np.testing.assert_allclose(surface.prices_at(np.array([100.0, 150.0])), expected, rtol=1e-14)
    assert surface.price_at_strike(90.0, 120.0) == pytest.approx(1.2 * surface.price_at(75.0), rel=1e-14)


def test_csv_export(small_mesh: Mesh) -> None:
    surface = PriceSurface(mesh=small_mesh, tau=1.0, values=np.zeros(small_mesh.n_nodes), market=_market(0.05))
    lines = surface.to_csv().splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == small_mesh.n_nodes + 1
    assert lines[1] == "0.0,0.0,0.0"


def test_run_rejects_inadmissible_parameters(s1: BatesParams) -> None:
    bad = BatesParams(xi=s1.xi, eta=s1.eta, theta=s1.theta, rho=1.5, lambda_=0.0, kbar=0.0, delta=0.1)
    with pytest.raises(ParameterError):
        run(bad, _market(0.05), GridConfig(nx=4, ny=4, n_steps=1), SolverConfig())


def test_coarse_run_respects_arbitrage_bounds(s1: BatesParams, s1_market: MarketSpec) -> None:
    surface = run(s1, s1_market, GridConfig(nx=32, ny=16, n_steps=10), SolverConfig())
    assert surface.tau == pytest.approx(1.0)
    price = surface.price_at(100.0)
    assert 100 - 100 * math.exp(-0.05) < price < 100
    assert surface.price_at(120.0) > price > surface.price_at(80.0)


def test_dt_overrides_step_count(no_jumps: BatesParams, s1_market: MarketSpec) -> None:
    surface = run(no_jumps, s1_market, GridConfig(nx=16, ny=8, n_steps=50), SolverConfig(dt=0.25))
    assert surface.tau == pytest.approx(1.0)


def test_values_stay_bounded_at_every_step(preset: BatesParams, make_market: Callable[..., MarketSpec]) -> None:
    market = make_market(preset)
    grid = GridConfig(nx=32, ny=16, n_steps=10)
    mesh = build_rect_mesh(grid.x_min, grid.x_max, grid.y_max, grid.nx, grid.ny)
    cfg = SolverConfig(dt=0.1)
    ops = assemble_operators(mesh, preset, market, grid)
    transport = assemble_transport(mesh, BatesVelocity(preset, market.rate), 0.1)
    interior = mesh.boundary_tags == BoundaryTag.INTERIOR
    state = payoff_state(mesh, market.strike)
    for _ in range(grid.n_steps):
        state = step(state, ops, cfg, preset, market, transport=transport)
        values = state.values[interior]
        assert np.all(np.isfinite(values))
        assert values.min() >= -PAYOFF_KINK_UNDERSHOOT * market.s0
        assert values.max() <= math.exp(grid.x_max)


def test_price_increases_with_maturity(s1: BatesParams, make_market: Callable[..., MarketSpec]) -> None:
    grid = GridConfig(nx=32, ny=16)
    prices = [
        run(s1, make_market(s1, maturity=maturity), grid, SolverConfig(dt=0.05)).price_at(100.0)
        for maturity in (0.25, 0.5, 1.0, 2.0, 3.0)
    ]
    assert np.all(np.diff(prices) > 0)


def test_time_refinement_converges_at_first_order(s1: BatesParams, s1_market: MarketSpec) -> None:
    grid = GridConfig(nx=32, ny=16)
    prices = [
        run(s1, s1_market, replace(grid, n_steps=n_steps), SolverConfig()).price_at(100.0)
        for n_steps in (10, 20, 40)
    ]
    assert abs(prices[2] - prices[1]) < 0.7 * abs(prices[1] - prices[0])
