"""Constant-product pool engine.

A pool holds reserves ``x`` and ``y`` of two tokens and quotes trades so that
the product ``x * y`` (equivalently the liquidity ``L = sqrt(x * y)``) is
unchanged by a fee-free swap.  The pool exchange rate is ``r = x / y``: the
amount of X an infinitesimal trade receives per unit of Y.

Traders may cap the spread of a trade, the relative rate change
``|r' - r| / r`` it causes.  A cap ``sigma`` limits the net input to

* selling Y for X: ``q = y * (1 / sqrt(1 - sigma) - 1)``, ``sigma in [0, 1)``
* selling X for Y: ``q = x * (sqrt(1 + sigma) - 1)``,     ``sigma >= 0``

``max_spread=None`` means no cap.  Anything a capped trade does not consume
stays with the trader.

Fees: the fee ``phi`` is charged on the gross input, and only the net amount
``gross * (1 - phi)`` enters the curve.  Under ``FeeModel.AUTO_COMPOUND`` the
fee is then added to the input-side reserve (it grows the pool's liquidity);
under ``FeeModel.COLLECT_SEPARATELY`` it accrues in a side ledger outside
the reserves.

All operations are value-level: they never mutate a ``PoolState``, they
return a new one.  Arithmetic is duck-typed, so a pool built from
``fractions.Fraction`` values runs the swap path exactly (the swap equations
are rational); square roots fall back to floats unless the operand is a
perfect rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Optional, Tuple, Union

from .errors import (
    InactivePool,
    InsufficientShares,
    InvalidFee,
    InvalidRate,
    NonPositiveAmount,
    NonPositiveInput,
    NonPositivePrice,
    NonPositiveReserve,
    RateMismatch,
    SpreadOutOfRange,
)

Numeric = Union[float, Fraction]

#: Relative tolerance for the deposit-ratio check in :func:`add_liquidity`.
DEPOSIT_RATIO_TOL = 1e-9


class Direction(str, Enum):
    """Which token the trader pays in."""

    Y_FOR_X = "y2x"  # trader sells Y, receives X; pool rate falls
    X_FOR_Y = "x2y"  # trader sells X, receives Y; pool rate rises


class FeeModel(str, Enum):
    AUTO_COMPOUND = "auto_compound"
    COLLECT_SEPARATELY = "collect_separately"


@dataclass(frozen=True)
class SideLedger:
    """Fees accrued outside the reserves (collect-separately pools only)."""

    fees_x: Numeric = 0
    fees_y: Numeric = 0


@dataclass(frozen=True)
class PoolState:
    reserve_x: Numeric
    reserve_y: Numeric
    fee_rate: Numeric
    fee_model: FeeModel
    total_shares: Numeric
    share_ledger: Mapping[str, Numeric]
    side_ledger: SideLedger = field(default_factory=SideLedger)

    @property
    def active(self) -> bool:
        return self.reserve_x > 0 and self.reserve_y > 0


@dataclass(frozen=True)
class SwapQuote:
    """Result of pricing one trade.

    ``capped_in`` is the gross amount actually taken from the trader (fee
    included); it equals ``requested_in`` unless a spread cap binds.
    ``realized_rate`` is ``amount_out / capped_in``, the effective rate after
    fees.  ``spread_applied`` is the relative rate move the trade causes,
    always <= the requested cap.  A cap of zero degenerates to an empty
    trade; its realized rate is the spot rate (the zero-size limit).
    """

    direction: Direction
    requested_in: Numeric
    capped_in: Numeric
    amount_out: Numeric
    realized_rate: Numeric
    spread_applied: Numeric
    fee_paid: Numeric


#: A receipt is the quote the executed trade settled at, field for field.
SwapReceipt = SwapQuote


@dataclass(frozen=True)
class LpPosition:
    provider: str
    shares: Numeric
    deposited_x: Numeric = 0
    deposited_y: Numeric = 0


def _sqrt(value: Numeric) -> Numeric:
    """Square root, exact when ``value`` is a perfect rational square."""
    if isinstance(value, Fraction):
        num, den = value.numerator, value.denominator
        root_num, root_den = math.isqrt(num), math.isqrt(den)
        if root_num * root_num == num and root_den * root_den == den:
            return Fraction(root_num, root_den)
    return math.sqrt(value)


def _require_active(pool: PoolState) -> None:
    if not pool.active:
        raise InactivePool("pool has no reserves; create a new pool")


def create_pool(
    x0: Numeric,
    y0: Numeric,
    fee_rate: Numeric = 0,
    fee_model: FeeModel = FeeModel.AUTO_COMPOUND,
    provider: str = "lp",
) -> PoolState:
    """Initialize a pool; ``provider`` receives ``sqrt(x0 * y0)`` shares."""
    if x0 <= 0 or y0 <= 0:
        raise NonPositiveReserve(f"initial reserves must be positive, got ({x0}, {y0})")
    if not 0 <= fee_rate < 1:
        raise InvalidFee(f"fee rate must be in [0, 1), got {fee_rate}")
    shares = _sqrt(x0 * y0)
    return PoolState(
        reserve_x=x0,
        reserve_y=y0,
        fee_rate=fee_rate,
        fee_model=fee_model,
        total_shares=shares,
        share_ledger=MappingProxyType({provider: shares}),
    )


def liquidity_of(pool: PoolState) -> Numeric:
    """Geometric mean of the reserves, ``sqrt(x * y)``."""
    _require_active(pool)
    return _sqrt(pool.reserve_x * pool.reserve_y)


def rate_of(pool: PoolState) -> Numeric:
    """Pool exchange rate ``r = x / y`` (X received per unit of Y, spot)."""
    _require_active(pool)
    return pool.reserve_x / pool.reserve_y


def pool_value(pool: PoolState, p_x: Numeric, p_y: Numeric) -> Numeric:
    """Mark the reserves to market: ``p_x * x + p_y * y``."""
    if p_x <= 0 or p_y <= 0:
        raise NonPositivePrice(f"prices must be positive, got ({p_x}, {p_y})")
    return p_x * pool.reserve_x + p_y * pool.reserve_y


def reserves_from_rate_liquidity(rate: Numeric, liquidity: Numeric) -> Tuple[Numeric, Numeric]:
    """Invert (x, y) -> (r, L): ``x = L * sqrt(r)``, ``y = L / sqrt(r)``."""
    if rate <= 0:
        raise InvalidRate(f"rate must be positive, got {rate}")
    if liquidity < 0:
        raise NonPositiveInput(f"liquidity must be non-negative, got {liquidity}")
    root = _sqrt(rate)
    return liquidity * root, liquidity / root


def reserves_from_value(
    value: Numeric, p_x: Numeric, p_y: Numeric
) -> Tuple[Numeric, Numeric, Numeric]:
    """Reserves and liquidity of a pool worth ``value`` at market prices.

    Assumes the pool rate equals the market rate, so each side holds half
    the value: ``x = V / (2 p_x)``, ``y = V / (2 p_y)``,
    ``L = V / (2 sqrt(p_x p_y))``.
    """
    if value <= 0 or p_x <= 0 or p_y <= 0:
        raise NonPositiveInput(
            f"value and prices must be positive, got ({value}, {p_x}, {p_y})"
        )
    x = value / (2 * p_x)
    y = value / (2 * p_y)
    liquidity = value / (2 * _sqrt(p_x * p_y))
    return x, y, liquidity


def _validate_spread(direction: Direction, sigma: Numeric) -> None:
    if direction is Direction.Y_FOR_X:
        if not 0 <= sigma < 1:
            raise SpreadOutOfRange(
                f"Y-for-X spread must be in [0, 1), got {sigma}; "
                "use max_spread=None for an uncapped trade"
            )
    else:
        if sigma < 0 or math.isinf(sigma):
            raise SpreadOutOfRange(f"X-for-Y spread must be finite and >= 0, got {sigma}")


def max_input_for_spread(pool: PoolState, direction: Direction, sigma: Numeric) -> Numeric:
    """Largest net input whose execution moves the pool rate by exactly ``sigma``.

    This is the amount that enters the curve; with a fee ``phi`` the trader
    is charged up to ``q / (1 - phi)`` gross for it.
    """
    _require_active(pool)
    _validate_spread(direction, sigma)
    if direction is Direction.Y_FOR_X:
        return pool.reserve_y * (1 / _sqrt(1 - sigma) - 1)
    return pool.reserve_x * (_sqrt(1 + sigma) - 1)


def quote(
    pool: PoolState,
    direction: Direction,
    amount_in: Numeric,
    max_spread: Optional[Numeric] = None,
) -> SwapQuote:
    """Price a trade of ``amount_in`` input tokens without executing it.

    The output for a net input ``a`` is ``out * a / (in + a)`` where ``in``
    and ``out`` are the input- and output-side reserves, which keeps the
    reserve product constant.  The output-side reserve can never be drained:
    the output is strictly below it for any finite input.
    """
    _require_active(pool)
    if amount_in <= 0:
        raise NonPositiveAmount(f"trade amount must be positive, got {amount_in}")
    if max_spread is not None:
        _validate_spread(direction, max_spread)

    if direction is Direction.Y_FOR_X:
        reserve_in, reserve_out = pool.reserve_y, pool.reserve_x
    else:
        reserve_in, reserve_out = pool.reserve_x, pool.reserve_y

    phi = pool.fee_rate
    net = amount_in * (1 - phi)
    gross = amount_in
    if max_spread is not None:
        cap = max_input_for_spread(pool, direction, max_spread)
        if net > cap:
            net = cap
            gross = cap / (1 - phi)

    amount_out = reserve_out * net / (reserve_in + net)
    fee_paid = gross - net
    if gross > 0:
        realized_rate = amount_out / gross
    else:
        # Zero-size trade (cap of 0): the rate limit is the spot rate.
        realized_rate = reserve_out / reserve_in
    ratio = reserve_in / (reserve_in + net)
    if direction is Direction.Y_FOR_X:
        spread_applied = 1 - ratio * ratio
    else:
        spread_applied = 1 / (ratio * ratio) - 1

    return SwapQuote(
        direction=direction,
        requested_in=amount_in,
        capped_in=gross,
        amount_out=amount_out,
        realized_rate=realized_rate,
        spread_applied=spread_applied,
        fee_paid=fee_paid,
    )


def execute_swap(
    pool: PoolState,
    direction: Direction,
    amount_in: Numeric,
    max_spread: Optional[Numeric] = None,
) -> Tuple[PoolState, SwapReceipt]:
    """Execute a trade and return the post-trade pool plus its receipt.

    The receipt is exactly the quote for the same arguments.  With no fee the
    reserve product is preserved (bit for bit on rational inputs); an
    auto-compounded fee strictly grows it, a separately collected fee leaves
    it on the net amounts and credits the side ledger.
    """
    receipt = quote(pool, direction, amount_in, max_spread)
    net = receipt.capped_in - receipt.fee_paid
    fee = receipt.fee_paid
    ledger = pool.side_ledger

    if direction is Direction.Y_FOR_X:
        new_y = pool.reserve_y + net
        new_x = pool.reserve_x - receipt.amount_out
        if fee:
            if pool.fee_model is FeeModel.AUTO_COMPOUND:
                new_y = new_y + fee
            else:
                ledger = replace(ledger, fees_y=ledger.fees_y + fee)
    else:
        new_x = pool.reserve_x + net
        new_y = pool.reserve_y - receipt.amount_out
        if fee:
            if pool.fee_model is FeeModel.AUTO_COMPOUND:
                new_x = new_x + fee
            else:
                ledger = replace(ledger, fees_x=ledger.fees_x + fee)

    new_pool = replace(pool, reserve_x=new_x, reserve_y=new_y, side_ledger=ledger)
    return new_pool, receipt


def add_liquidity(
    pool: PoolState, provider: str, dx: Numeric, dy: Numeric
) -> Tuple[PoolState, LpPosition]:
    """Deposit ``(dx, dy)`` at the pool ratio; mints proportional shares.

    The deposit must not move the rate: ``dx / dy`` has to match
    ``reserve_x / reserve_y`` within ``DEPOSIT_RATIO_TOL`` relative.
    """
    _require_active(pool)
    if dx <= 0 or dy <= 0:
        raise NonPositiveAmount(f"deposit amounts must be positive, got ({dx}, {dy})")
    growth_x = dx / pool.reserve_x
    growth_y = dy / pool.reserve_y
    if abs(growth_x - growth_y) > DEPOSIT_RATIO_TOL * max(growth_x, growth_y):
        raise RateMismatch(
            f"deposit ratio {dx}/{dy} does not match pool ratio "
            f"{pool.reserve_x}/{pool.reserve_y}"
        )
    minted = pool.total_shares * growth_x
    ledger = dict(pool.share_ledger)
    ledger[provider] = ledger.get(provider, 0) + minted
    new_pool = replace(
        pool,
        reserve_x=pool.reserve_x + dx,
        reserve_y=pool.reserve_y + dy,
        total_shares=pool.total_shares + minted,
        share_ledger=MappingProxyType(ledger),
    )
    return new_pool, LpPosition(provider=provider, shares=minted, deposited_x=dx, deposited_y=dy)


def remove_liquidity(
    pool: PoolState, provider: str, shares: Numeric
) -> Tuple[PoolState, Tuple[Numeric, Numeric]]:
    """Burn ``shares`` and withdraw the proportional slice of both reserves.

    Withdrawing everything empties the pool; that state is terminal.
    """
    _require_active(pool)
    if shares <= 0:
        raise NonPositiveAmount(f"share amount must be positive, got {shares}")
    owned = pool.share_ledger.get(provider, 0)
    if shares > owned:
        raise InsufficientShares(f"{provider} owns {owned} shares, asked to burn {shares}")
    fraction = shares / pool.total_shares
    dx = pool.reserve_x * fraction
    dy = pool.reserve_y * fraction
    ledger = dict(pool.share_ledger)
    remaining = owned - shares
    if remaining > 0:
        ledger[provider] = remaining
    else:
        del ledger[provider]
    new_pool = replace(
        pool,
        reserve_x=pool.reserve_x - dx,
        reserve_y=pool.reserve_y - dy,
        total_shares=pool.total_shares - shares,
        share_ledger=MappingProxyType(ledger),
    )
    return new_pool, (dx, dy)


def arbitrage_input_for_rate(
    pool: PoolState, target_rate: Numeric
) -> Optional[Tuple[Direction, Numeric]]:
    """Trade that moves the pool rate to ``target_rate``, in closed form.

    After a Y-for-X swap the rate obeys ``r' = r * (y / y')**2``, so the
    input sizes solve directly: sell ``y * (sqrt(r / r') - 1)`` of Y to lower
    the rate, or ``x * (sqrt(r' / r) - 1)`` of X to raise it.  Returns None
    when the pool already sits on the target (within float precision).
    The amounts are net curve inputs; execute them fee-free.
    """
    _require_active(pool)
    if target_rate <= 0:
        raise InvalidRate(f"target rate must be positive, got {target_rate}")
    current = rate_of(pool)
    if target_rate < current:
        amount = pool.reserve_y * (_sqrt(current / target_rate) - 1)
        if amount <= 0:
            return None
        return Direction.Y_FOR_X, amount
    if target_rate > current:
        amount = pool.reserve_x * (_sqrt(target_rate / current) - 1)
        if amount <= 0:
            return None
        return Direction.X_FOR_Y, amount
    return None
