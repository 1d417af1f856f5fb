"""Closed-form liquidity-provider analytics.

Everything here is driven by the relative price changes ``delta_x = p_x'/p_x``
and ``delta_y = p_y'/p_y`` of the two pooled tokens, and is normalized to an
initial portfolio value of 1, so the numbers are scale-free:

* held (not invested):        ``(delta_x + delta_y) / 2``
* pooled, no fees:            ``sqrt(delta_x * delta_y)``
* impermanent loss:           ``2 sqrt(delta_x delta_y)/(delta_x + delta_y) - 1``
* pooled, fees auto-compounded at liquidity growth ``alpha`` per year:
      ``sqrt(delta_x delta_y) * (1 + alpha t)``
* pooled, fees collected outside the pool:
      ``sqrt(delta_x delta_y) + alpha t (delta_x + delta_y) / 2``

The collected model dominates the compounded one for every price path
(AM-GM on the fee term), with equality only when the deltas agree or no
fees accrue.  ``il_brute_force`` checks the loss formula mechanically by
replaying the arbitrage trade on an actual pool and valuing both portfolios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import NonPositiveDelta, NonPositiveInput, NonPositivePrice, RateMismatch
from .pool import PoolState, arbitrage_input_for_rate, execute_swap, pool_value, rate_of

#: Pool rate must match the market rate this closely for an arbitrage replay.
ARBITRAGE_AXIOM_TOL = 1e-9


@dataclass(frozen=True)
class PriceScenario:
    """Market prices and their relative moves for both tokens."""

    delta_x: float
    delta_y: float
    p_x0: float = 1.0
    p_y0: float = 1.0

    def __post_init__(self) -> None:
        if self.delta_x <= 0 or self.delta_y <= 0:
            raise NonPositiveDelta(
                f"price changes must be positive, got ({self.delta_x}, {self.delta_y})"
            )
        if self.p_x0 <= 0 or self.p_y0 <= 0:
            raise NonPositivePrice(
                f"prices must be positive, got ({self.p_x0}, {self.p_y0})"
            )

    @property
    def p_x_final(self) -> float:
        return self.delta_x * self.p_x0

    @property
    def p_y_final(self) -> float:
        return self.delta_y * self.p_y0


@dataclass(frozen=True)
class IlReport:
    """Pooled vs held portfolio values (initial value = 1) and the loss.

    ``relative_loss`` is ``(v_pooled - v_held) / v_held``, in (-1, 0].
    """

    v_pooled: float
    v_held: float
    relative_loss: float


@dataclass(frozen=True)
class GrowthParams:
    """Fee accrual as fractional liquidity growth per year, over ``t`` years."""

    alpha: float
    t: float

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise NonPositiveInput(f"growth rate must be >= 0, got {self.alpha}")
        if self.t < 0:
            raise NonPositiveInput(f"time must be >= 0, got {self.t}")


def impermanent_loss(scenario: PriceScenario) -> IlReport:
    """Loss of a pooled portfolio relative to holding, from the closed form.

    The report's values are rebuilt through the underlying pool mechanics
    (the post-arbitrage X reserve is ``sqrt(delta_y/delta_x)`` times the
    initial one) rather than from the loss formula, so the two stay mutually
    checkable.
    """
    dx, dy = scenario.delta_x, scenario.delta_y
    loss = 2 * math.sqrt(dx * dy) / (dx + dy) - 1
    # Normalize to initial portfolio value 1: x0 * p_x0 = 1/2.
    x_value0 = 0.5
    v_pooled = 2 * dx * math.sqrt(dy / dx) * x_value0
    v_held = (dx + dy) * x_value0
    return IlReport(v_pooled=v_pooled, v_held=v_held, relative_loss=loss)


def il_brute_force(scenario: PriceScenario, pool: PoolState) -> IlReport:
    """Measure impermanent loss by replaying the arbitrage on a real pool.

    The pool must start on the market rate (``x/y = p_y0/p_x0``).  Prices
    move, a fee-free arbitrage trade drags the pool rate to the new market
    rate, and both portfolios are valued at the new prices.  Values are
    normalized by the pool's initial value so the report is comparable to
    :func:`impermanent_loss`.
    """
    market_rate = scenario.p_y0 / scenario.p_x0
    pool_rate = rate_of(pool)
    if abs(pool_rate - market_rate) > ARBITRAGE_AXIOM_TOL * market_rate:
        raise RateMismatch(
            f"pool rate {pool_rate} does not match market rate {market_rate}"
        )
    p_x1, p_y1 = scenario.p_x_final, scenario.p_y_final
    free_pool = replace(pool, fee_rate=0)
    trade = arbitrage_input_for_rate(free_pool, p_y1 / p_x1)
    if trade is not None:
        direction, amount = trade
        free_pool, _ = execute_swap(free_pool, direction, amount)
    v0 = pool_value(pool, scenario.p_x0, scenario.p_y0)
    v_pooled = pool_value(free_pool, p_x1, p_y1) / v0
    v_held = pool_value(pool, p_x1, p_y1) / v0
    loss = (v_pooled - v_held) / v_held
    return IlReport(v_pooled=v_pooled, v_held=v_held, relative_loss=loss)


def hold_value_relative(scenario: PriceScenario) -> float:
    """Value of the un-invested portfolio relative to its initial value."""
    return (scenario.delta_x + scenario.delta_y) / 2


def relative_evolution_compounded(scenario: PriceScenario, growth: GrowthParams) -> float:
    """Pooled portfolio evolution when fees are reinjected into the reserves."""
    return math.sqrt(scenario.delta_x * scenario.delta_y) * (1 + growth.alpha * growth.t)


def relative_evolution_collected(scenario: PriceScenario, growth: GrowthParams) -> float:
    """Pooled portfolio evolution when fees accrue outside the pool.

    The fee stream is worth its share of the held portfolio, so it scales
    with ``(delta_x + delta_y) / 2`` instead of suffering the loss.
    """
    return math.sqrt(scenario.delta_x * scenario.delta_y) + growth.alpha * growth.t * (
        scenario.delta_x + scenario.delta_y
    ) / 2
