"""Module simulates the Bates model for Monte Carlo reference prices.

Paths are split into consecutive ranges of :data:`PATHS_PER_STREAM` paths, each with its own random
substream derived from ``(seed, range index)``. Worker tasks simulate whole ranges side by side, so
results depend only on the seed and the number of paths, not on the block size or the worker count. The variance is
advanced with full-truncation Euler and jumps are added after the diffusion part of every step.
"""
import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Final

import numpy as np
import numpy.typing as npt

import config
from model.jumps import compensator
from model.params import BatesParams, MarketSpec
from monte_carlo.exceptions import McConfigError

type FloatArray = npt.NDArray[np.float64]
type BlockSimulator = Callable[["PathStreams"], FloatArray]

MAX_OPERATIONS: Final = 10**9
PATHS_PER_STREAM: Final = 1024

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo settings.

    Attributes:
        n_paths (int): Number of simulated paths, even when ``antithetic`` is set.
        n_steps (int): Euler steps per year.
        seed (int): Root seed of the random substreams.
        antithetic (bool): Pair every path with its mirrored normals.
        block_size (int): Paths simulated together by one worker task, rounded up to whole substreams.
        workers (int): Worker threads.
    """

    n_paths: int = 100_000
    n_steps: int = 250
    seed: int = 20060101
    antithetic: bool = False
    block_size: int = field(default_factory=lambda: config.MC_BLOCK_SIZE)
    workers: int = field(default_factory=lambda: config.WORKERS)

    def __post_init__(self) -> None:
        """Check the settings.

        Raises:
            McConfigError: If a count is not positive or antithetic sampling has an odd path count.
        """
        if self.n_paths < 1 or self.n_steps < 1 or self.block_size < 1 or self.workers < 1:
            raise McConfigError("n_paths, n_steps, block_size and workers must be at least 1")
        if self.antithetic and self.n_paths % 2:
            raise McConfigError("antithetic sampling needs an even n_paths")


@dataclass(frozen=True)
class McResult:
    """Monte Carlo price estimate.

    Attributes:
        estimate (float): Sample mean of the discounted payoff.
        std_error (float): Standard error of the estimate.
        n_effective (int): Number of independent samples, pairs under antithetic sampling.
    """

    estimate: float
    std_error: float
    n_effective: int


def time_steps(cfg: McConfig, maturity: float) -> int:
    """Return the number of Euler steps to the maturity.

    Args:
        cfg (McConfig): Settings.
        maturity (float): Maturity in years.

    Returns:
        int: At least one step.
    """
    return max(1, math.ceil(cfg.n_steps * maturity))


def _check_cap(n_paths: int, steps: int) -> None:
    """Reject requests above the operation cap.

    Args:
        n_paths (int): Paths.
        steps (int): Steps per path.

    Raises:
        McConfigError: If ``n_paths * steps`` exceeds :data:`MAX_OPERATIONS`.
    """
    if n_paths * steps > MAX_OPERATIONS:
        raise McConfigError(f"n_paths * steps = {n_paths * steps} exceeds the cap of {MAX_OPERATIONS}")


def _normals(rng: np.random.Generator, shape: tuple[int, ...], antithetic: bool) -> FloatArray:
    """Draw standard normals, mirrored pairs interleaved along the last axis when antithetic.

    Args:
        rng (np.random.Generator): Substream.
        shape (tuple[int, ...]): Output shape; the last axis is the path axis.
        antithetic (bool): Interleave ``z, -z`` pairs.

    Returns:
        FloatArray: Normals of the requested shape.
    """
    if not antithetic:
        return rng.standard_normal(shape)
    half = rng.standard_normal((*shape[:-1], shape[-1] // 2))
    return np.stack([half, -half], axis=-1).reshape(shape)


def _paired(values: FloatArray, antithetic: bool) -> FloatArray:
    """Repeat per-pair draws for both members of an antithetic pair.

    Args:
        values (FloatArray): Draws along the path axis.
        antithetic (bool): Whether pairs are in use.

    Returns:
        FloatArray: Draws for every path.
    """
    return np.repeat(values, 2) if antithetic else values


@dataclass(frozen=True)
class PathStreams:
    """Substreams of consecutive path ranges, drawn side by side along the path axis.

    Attributes:
        generators (tuple[np.random.Generator, ...]): One generator per path range.
        widths (tuple[int, ...]): Paths in each range.
        antithetic (bool): Interleave mirrored pairs within every range.
    """

    generators: tuple[np.random.Generator, ...]
    widths: tuple[int, ...]
    antithetic: bool

    @property
    def size(self) -> int:
        """Number of paths covered."""
        return sum(self.widths)

    def normals(self, rows: tuple[int, ...] = ()) -> FloatArray:
        """Draw standard normals of shape ``(*rows, size)``.

        Args:
            rows (tuple[int, ...]): Leading axes.

        Returns:
            FloatArray: Normals, each path range from its own substream.
        """
        draws = [
            _normals(rng, (*rows, width), self.antithetic)
            for rng, width in zip(self.generators, self.widths, strict=True)
        ]
        return np.concatenate(draws, axis=-1)

    def poisson(self, mean: float) -> FloatArray:
        """Draw Poisson counts, one per path and shared within antithetic pairs.

        Args:
            mean (float): Poisson mean.

        Returns:
            FloatArray: Counts of shape ``(size,)``.
        """
        draws = [
            _paired(rng.poisson(mean, width // 2 if self.antithetic else width), self.antithetic)
            for rng, width in zip(self.generators, self.widths, strict=True)
        ]
        return np.concatenate(draws)


def _run_blocks(cfg: McConfig, simulate_block: BlockSimulator) -> FloatArray:
    """Run the block simulator over groups of path ranges and concatenate in path order.

    Args:
        cfg (McConfig): Settings.
        simulate_block (BlockSimulator): Maps the substreams of a block to terminal values.

    Returns:
        FloatArray: One value per path.
    """
    widths = [min(PATHS_PER_STREAM, cfg.n_paths - start) for start in range(0, cfg.n_paths, PATHS_PER_STREAM)]
    per_block = max(1, math.ceil(cfg.block_size / PATHS_PER_STREAM))
    blocks = [range(first, min(first + per_block, len(widths))) for first in range(0, len(widths), per_block)]

    def run_block(streams: range) -> FloatArray:
        generators = tuple(
            np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(stream,))) for stream in streams
        )
        logger.debug("Simulating path ranges %d to %d of %d", streams.start + 1, streams.stop, len(widths))
        return simulate_block(PathStreams(generators, tuple(widths[stream] for stream in streams), cfg.antithetic))

    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        results = list(executor.map(run_block, blocks))
    return np.concatenate(results)


def simulate_terminal(params: BatesParams, market: MarketSpec, cfg: McConfig) -> FloatArray:
    """Simulate terminal log-prices ``X_T`` of the Bates model.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Spot, maturity, rate and initial variance are used.
        cfg (McConfig): Settings.

    Returns:
        FloatArray: ``X_T`` per path in path order.
    """
    steps = time_steps(cfg, market.maturity)
    _check_cap(cfg.n_paths, steps)
    dt = market.maturity / steps
    drift = market.rate - compensator(params)
    # Lower Cholesky factor of [[1, rho], [rho, 1]].
    correlation = np.array([[1, 0], [params.rho, math.sqrt(1 - params.rho**2)]])
    jump_rate = params.lambda_ * dt

    def simulate_block(streams: PathStreams) -> FloatArray:
        log_price = np.full(streams.size, math.log(market.s0))
        variance = np.full(streams.size, market.y0)
        for _ in range(steps):
            shocks = correlation @ streams.normals((2,))
            positive = np.maximum(variance, 0)
            root = np.sqrt(positive * dt)
            log_price = log_price + (drift - positive / 2) * dt + root * shocks[0]
            variance = variance + params.xi * (params.eta - positive) * dt + params.theta * root * shocks[1]
            if jump_rate > 0:
                counts = streams.poisson(jump_rate)
                jump_shocks = streams.normals()
                log_price = log_price + counts * params.gamma_ + params.delta * np.sqrt(counts) * jump_shocks
        return log_price

    terminal = _run_blocks(cfg, simulate_block)
    logger.info("Simulated %d Bates paths with %d steps", cfg.n_paths, steps)
    return terminal


def simulate_jump_terminal(params: BatesParams, market: MarketSpec, cfg: McConfig) -> FloatArray:
    """Sample ``X_T`` of the zero-variance Merton model exactly.

    ``X_T = ln s0 + (r - kappa(1)) T + N gamma + delta sqrt(N) Z`` with ``N`` Poisson of mean ``lambda T``.

    Args:
        params (BatesParams): Model parameters, only the jump part is used.
        market (MarketSpec): Spot, maturity and rate are used.
        cfg (McConfig): Settings; ``n_steps`` is ignored.

    Returns:
        FloatArray: ``X_T`` per path in path order.
    """
    _check_cap(cfg.n_paths, 1)
    mean = math.log(market.s0) + (market.rate - compensator(params)) * market.maturity
    jump_mean = params.lambda_ * market.maturity

    def simulate_block(streams: PathStreams) -> FloatArray:
        counts = streams.poisson(jump_mean)
        sizes = streams.normals()
        return mean + counts * params.gamma_ + params.delta * np.sqrt(counts) * sizes

    return _run_blocks(cfg, simulate_block)


def summarize(samples: FloatArray, antithetic: bool) -> McResult:
    """Reduce discounted payoffs to an estimate and its standard error.

    Args:
        samples (FloatArray): Discounted payoff per path, antithetic pairs adjacent.
        antithetic (bool): Average pairs before computing the error.

    Returns:
        McResult: Estimate, standard error and number of independent samples.
    """
    independent = samples.reshape(-1, 2).mean(axis=1) if antithetic else samples
    count = independent.size
    std_error = float(independent.std(ddof=1) / math.sqrt(count)) if count > 1 else math.inf
    return McResult(estimate=float(independent.mean()), std_error=std_error, n_effective=count)


def _discounted_calls(terminal: FloatArray, market: MarketSpec) -> FloatArray:
    """Discounted call payoff per path.

    Args:
        terminal (FloatArray): Terminal log-prices.
        market (MarketSpec): Strike, maturity and rate are used.

    Returns:
        FloatArray: ``e^{-rT} max(e^{X_T} - K, 0)``.
    """
    return math.exp(-market.rate * market.maturity) * np.maximum(np.exp(terminal) - market.strike, 0)


def mc_price(params: BatesParams, market: MarketSpec, cfg: McConfig) -> McResult:
    """Price a European call by simulating the Bates model.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        cfg (McConfig): Settings.

    Returns:
        McResult: Price estimate with standard error.
    """
    result = summarize(_discounted_calls(simulate_terminal(params, market, cfg), market), cfg.antithetic)
    logger.info("MC price %.8g +- %.2g", result.estimate, result.std_error)
    return result


def mc_price_jump_only(params: BatesParams, market: MarketSpec, cfg: McConfig) -> McResult:
    """Price a European call in the zero-variance Merton model by exact simulation.

    Args:
        params (BatesParams): Model parameters, only the jump part is used.
        market (MarketSpec): Contract and market state; the variance is ignored.
        cfg (McConfig): Settings.

    Returns:
        McResult: Price estimate with standard error.
    """
    return summarize(_discounted_calls(simulate_jump_terminal(params, market, cfg), market), cfg.antithetic)
