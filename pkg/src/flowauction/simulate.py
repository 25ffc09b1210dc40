"""Seeded Monte Carlo play-out of the auction winner's decision problem.

Each trial pays the upfront part of the bid, draws one uniform to settle the
forced-execution / forced-failure / voluntary branch, then draws the
reference price S (every trial draws S, so a trial consumes a fixed number
of variates).  A voluntary trial executes only when ``S - K - (1-alpha)*bid``
is strictly positive; ties do not execute.

Randomness comes from numpy's PCG64 generator.  Trials run in fixed-size
chunks whose generators are spawned deterministically from the run seed, and
chunk aggregates are combined with exact summation (``math.fsum``), so the
result is bit-identical for a given ``SimConfig`` no matter how many workers
evaluate the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution
from .equilibrium import AuctionParams
from .errors import BracketError, InvalidParamsError

__all__ = ["SimConfig", "SimResult", "simulate_auction", "calibrate_zero_profit_bid"]

_CHUNK = 1 << 18


@dataclass(frozen=True)
class SimConfig:
    """Trial count, master seed, and the bid under test."""

    n_trials: int
    seed: int
    bid: float

    def __post_init__(self):
        if self.n_trials < 1:
            raise InvalidParamsError(f"n_trials must be >= 1, got {self.n_trials}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParamsError(f"seed must be a 64-bit nonnegative integer, got {self.seed}")
        if not math.isfinite(self.bid):
            raise InvalidParamsError(f"bid must be finite, got {self.bid}")


@dataclass(frozen=True)
class SimResult:
    """Sample means with standard errors for the winner's problem.

    ``mean_spread_given_exec`` averages ``S - K`` over executed trials only
    and is None when no trial executed.  Standard errors use the plain
    sample-variance estimate.
    """

    mean_utility: float
    se_utility: float
    exec_rate: float
    se_exec: float
    mean_revenue: float
    se_revenue: float
    mean_spread_given_exec: float | None
    se_spread: float
    n_exec: int


def _validate(d: Distribution, params: AuctionParams):
    if params.strike >= d.support.hi and params.p == 0.0:
        raise InvalidParamsError(
            f"strike {params.strike} is not below the support top {d.support.hi}; "
            "the execution right is worthless"
        )


def _run_chunk(d, params, bid, seed_seq, m):
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    u = rng.random(m)
    s = d.sample(rng, size=m)
    forced_exec = u < params.p
    voluntary = u >= params.p + params.q
    gain_if_exec = s - params.strike - (1.0 - params.alpha) * bid
    executed = forced_exec | (voluntary & (gain_if_exec > 0.0))
    gain = np.where(executed, gain_if_exec, 0.0)
    spread = (s - params.strike)[executed]
    return (
        float(gain.sum()),
        float((gain * gain).sum()),
        int(executed.sum()),
        float(spread.sum()),
        float((spread * spread).sum()),
    )


def _sample_var(sum_x: float, sum_x2: float, n: int) -> float:
    if n < 2:
        return 0.0
    mean = sum_x / n
    return max(0.0, (sum_x2 - n * mean * mean) / (n - 1))


def simulate_auction(
    d: Distribution,
    params: AuctionParams,
    cfg: SimConfig,
    workers: int = 1,
) -> SimResult:
    """Simulate ``cfg.n_trials`` auctions at the fixed bid ``cfg.bid``.

    Per trial the winner pays ``alpha * bid`` unconditionally; on execution
    (forced, or voluntary and strictly profitable) it additionally pays
    ``(1 - alpha) * bid`` and books ``S - K``, in forced trials even when
    that is negative.  Revenue per trial is the total payment received by
    the auction.

    ``workers`` > 1 evaluates chunks in a thread pool; results are identical
    to the serial run.
    """
    _validate(d, params)
    n = cfg.n_trials
    n_chunks = (n + _CHUNK - 1) // _CHUNK
    seeds = np.random.SeedSequence(cfg.seed).spawn(n_chunks)
    sizes = [_CHUNK] * (n_chunks - 1) + [n - _CHUNK * (n_chunks - 1)]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(lambda sm: _run_chunk(d, params, cfg.bid, sm[0], sm[1]), zip(seeds, sizes))
            )
    else:
        chunks = [_run_chunk(d, params, cfg.bid, ss, m) for ss, m in zip(seeds, sizes)]

    sum_gain = math.fsum(c[0] for c in chunks)
    sum_gain2 = math.fsum(c[1] for c in chunks)
    n_exec = sum(c[2] for c in chunks)
    sum_spread = math.fsum(c[3] for c in chunks)
    sum_spread2 = math.fsum(c[4] for c in chunks)

    mean_gain = sum_gain / n
    mean_utility = mean_gain - params.alpha * cfg.bid
    se_utility = math.sqrt(_sample_var(sum_gain, sum_gain2, n) / n)

    exec_rate = n_exec / n
    var_exec = n * exec_rate * (1.0 - exec_rate) / (n - 1) if n > 1 else 0.0
    se_exec = math.sqrt(var_exec / n)

    # revenue per trial is alpha*bid + executed*(1-alpha)*bid, an affine map
    # of the execution indicator, so its moments follow from the exec ones
    mean_revenue = cfg.bid * (params.alpha + (1.0 - params.alpha) * exec_rate)
    se_revenue = (1.0 - params.alpha) * cfg.bid * se_exec

    if n_exec > 0:
        mean_spread = sum_spread / n_exec
        se_spread = math.sqrt(_sample_var(sum_spread, sum_spread2, n_exec) / n_exec)
    else:
        mean_spread = None
        se_spread = 0.0

    return SimResult(
        mean_utility=mean_utility,
        se_utility=se_utility,
        exec_rate=exec_rate,
        se_exec=se_exec,
        mean_revenue=mean_revenue,
        se_revenue=se_revenue,
        mean_spread_given_exec=mean_spread,
        se_spread=se_spread,
        n_exec=n_exec,
    )


def calibrate_zero_profit_bid(
    d: Distribution,
    params: AuctionParams,
    n_per_eval: int,
    seed: int,
) -> float:
    """Locate the zero-profit bid empirically by stochastic bisection.

    One batch of common random numbers (branch uniforms and price draws) is
    generated up front and reused for every bid evaluated, which makes the
    empirical expected utility a deterministic, nonincreasing function of
    the bid; ordinary bisection then finds its zero crossing.  Requires
    ``alpha > 0`` or ``p > 0`` so that the crossing is strict.
    """
    if params.alpha == 0.0 and params.p == 0.0:
        raise InvalidParamsError(
            "calibration needs alpha > 0 or p > 0; with both zero the empirical "
            "utility never crosses below zero"
        )
    if n_per_eval < 2:
        raise InvalidParamsError(f"n_per_eval must be >= 2, got {n_per_eval}")
    if not 0 <= seed < 2**64:
        raise InvalidParamsError(f"seed must be a 64-bit nonnegative integer, got {seed}")
    _validate(d, params)

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    u = rng.random(n_per_eval)
    s = d.sample(rng, size=n_per_eval)
    forced_exec = u < params.p
    voluntary = u >= params.p + params.q

    def empirical_eu(bid: float) -> float:
        gain_if_exec = s - params.strike - (1.0 - params.alpha) * bid
        executed = forced_exec | (voluntary & (gain_if_exec > 0.0))
        gain = np.where(executed, gain_if_exec, 0.0)
        return float(gain.mean()) - params.alpha * bid

    if empirical_eu(0.0) <= 0.0:
        return 0.0

    hi_support = d.support.hi
    if params.alpha < 1.0:
        b_hi = (hi_support - params.strike) / (1.0 - params.alpha)
    else:
        b_hi = hi_support - params.strike
    b_hi = abs(b_hi) if b_hi != 0.0 else 1.0
    doublings = 0
    while empirical_eu(b_hi) > 0.0:
        if doublings >= 64:
            raise BracketError(f"empirical utility shows no sign change up to bid {b_hi}")
        b_hi *= 2.0
        doublings += 1

    lo, hi = 0.0, b_hi
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if empirical_eu(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
