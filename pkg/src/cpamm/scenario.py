"""Declarative scenario replay against a pool.

A :class:`ScenarioScript` describes an initial pool that sits on the market
rate, plus a time-ordered list of events: trades, market price moves, fee
collections, and snapshot requests.  After every price move an idealized
arbitrageur (fee-free, instant, unlimited inventory) trades the pool back
onto the market rate, so the pool rate tracks ``p_y / p_x`` throughout.

Snapshots value the provider's pooled position against simply holding the
initial deposit at current prices; ``lambda_realized`` is the relative gap
between the two.  For scripts with price moves only, it matches the
closed-form impermanent loss for the cumulative deltas.

Scripts load from JSON files; the schema is documented in the README and in
:func:`load_script`.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple, Union

from .errors import CpammError, EmptyWindow, ScriptError
from .pool import (
    Direction,
    FeeModel,
    Numeric,
    PoolState,
    SideLedger,
    arbitrage_input_for_rate,
    create_pool,
    execute_swap,
    liquidity_of,
)

#: Initial pool rate must equal the market rate this closely.
AXIOM_REL_TOL = 1e-9


@dataclass(frozen=True)
class Trade:
    t: float
    direction: Direction
    amount_in: Numeric
    max_spread: Optional[Numeric] = None


@dataclass(frozen=True)
class PriceMove:
    """Multiply current market prices by ``(delta_x, delta_y)``."""

    t: float
    delta_x: float
    delta_y: float


@dataclass(frozen=True)
class CollectFees:
    """Withdraw the provider's share of the side ledger to their wallet."""

    t: float
    provider: str


@dataclass(frozen=True)
class Snapshot:
    t: float
    label: str


Event = Union[Trade, PriceMove, CollectFees, Snapshot]


@dataclass(frozen=True)
class ScenarioScript:
    pool_x: Numeric
    pool_y: Numeric
    fee_rate: Numeric
    fee_model: FeeModel
    p_x0: Numeric
    p_y0: Numeric
    events: Sequence[Event] = ()
    provider: str = "lp"


@dataclass(frozen=True)
class PortfolioSnapshot:
    label: str
    t: float
    reserve_x: Numeric
    reserve_y: Numeric
    fees_x: Numeric
    fees_y: Numeric
    lp_value_pooled: Numeric
    lp_value_held: Numeric
    lambda_realized: Numeric
    p_x: Numeric
    p_y: Numeric


class _Replay:
    """Mutable replay state shared by run_scenario and the alpha probe."""

    def __init__(self, script: ScenarioScript):
        market_rate = script.p_y0 / script.p_x0
        pool_rate = script.pool_x / script.pool_y
        if abs(pool_rate - market_rate) > AXIOM_REL_TOL * market_rate:
            raise ScriptError(
                f"initial pool rate {pool_rate} does not match "
                f"market rate {market_rate}"
            )
        self.script = script
        self.pool = create_pool(
            script.pool_x,
            script.pool_y,
            fee_rate=script.fee_rate,
            fee_model=script.fee_model,
            provider=script.provider,
        )
        self.p_x = script.p_x0
        self.p_y = script.p_y0
        self.t = 0.0
        self.collected_x: Numeric = 0
        self.collected_y: Numeric = 0
        self.snapshots: List[PortfolioSnapshot] = []

    def apply(self, index: int, event: Event) -> None:
        if event.t < self.t:
            raise ScriptError(
                f"event {index}: timestamp {event.t} runs backwards from {self.t}"
            )
        self.t = event.t
        try:
            if isinstance(event, Trade):
                self.pool, _ = execute_swap(
                    self.pool, event.direction, event.amount_in, event.max_spread
                )
            elif isinstance(event, PriceMove):
                self._move_prices(event)
            elif isinstance(event, CollectFees):
                self._collect(event.provider)
            elif isinstance(event, Snapshot):
                self.snapshots.append(self.take_snapshot(event.label))
            else:
                raise ScriptError(f"unknown event type {type(event).__name__}")
        except CpammError as err:
            if isinstance(err, ScriptError) and str(err).startswith("event "):
                raise
            raise type(err)(f"event {index}: {err}") from err

    def _move_prices(self, event: PriceMove) -> None:
        if event.delta_x <= 0 or event.delta_y <= 0:
            raise ScriptError(
                f"price deltas must be positive, got ({event.delta_x}, {event.delta_y})"
            )
        self.p_x = self.p_x * event.delta_x
        self.p_y = self.p_y * event.delta_y
        target = self.p_y / self.p_x
        free = replace(self.pool, fee_rate=0)
        trade = arbitrage_input_for_rate(free, target)
        if trade is not None:
            direction, amount = trade
            free, _ = execute_swap(free, direction, amount)
        self.pool = replace(free, fee_rate=self.pool.fee_rate)

    def _collect(self, provider: str) -> None:
        share = self.pool.share_ledger.get(provider, 0) / self.pool.total_shares
        ledger = self.pool.side_ledger
        take_x = ledger.fees_x * share
        take_y = ledger.fees_y * share
        self.collected_x = self.collected_x + take_x
        self.collected_y = self.collected_y + take_y
        self.pool = replace(
            self.pool,
            side_ledger=SideLedger(ledger.fees_x - take_x, ledger.fees_y - take_y),
        )

    def take_snapshot(self, label: str) -> PortfolioSnapshot:
        pooled = self.p_x * self.pool.reserve_x + self.p_y * self.pool.reserve_y
        held = self.p_x * self.script.pool_x + self.p_y * self.script.pool_y
        return PortfolioSnapshot(
            label=label,
            t=self.t,
            reserve_x=self.pool.reserve_x,
            reserve_y=self.pool.reserve_y,
            fees_x=self.pool.side_ledger.fees_x,
            fees_y=self.pool.side_ledger.fees_y,
            lp_value_pooled=pooled,
            lp_value_held=held,
            lambda_realized=(pooled - held) / held,
            p_x=self.p_x,
            p_y=self.p_y,
        )

    def run(self) -> "_Replay":
        for index, event in enumerate(self.script.events):
            self.apply(index, event)
        return self


def run_scenario(script: ScenarioScript) -> List[PortfolioSnapshot]:
    """Apply every event in order; returns all snapshots plus a final one."""
    replay = _Replay(script).run()
    replay.snapshots.append(replay.take_snapshot("final"))
    return replay.snapshots


def measure_effective_alpha(script: ScenarioScript, window: float) -> float:
    """Aggregate fee accrual of a replay, as liquidity growth per year.

    Auto-compounding pools grow their reserves, so the measure is the
    relative liquidity growth over the window.  Collect-separately pools
    leave liquidity flat; there the ledger (plus anything already collected)
    is valued at final prices and converted to its liquidity equivalent
    ``value / (2 sqrt(p_x p_y))`` before normalizing.
    """
    if window <= 0:
        raise EmptyWindow(f"window must be positive, got {window}")
    start_liquidity = liquidity_of(
        create_pool(script.pool_x, script.pool_y, script.fee_rate, script.fee_model)
    )
    replay = _Replay(script).run()
    if script.fee_model is FeeModel.AUTO_COMPOUND:
        growth = liquidity_of(replay.pool) / start_liquidity - 1
        return growth / window
    ledger = replay.pool.side_ledger
    fees_value = replay.p_x * (ledger.fees_x + replay.collected_x) + replay.p_y * (
        ledger.fees_y + replay.collected_y
    )
    liquidity_equiv = fees_value / (2 * (replay.p_x * replay.p_y) ** 0.5)
    return liquidity_equiv / (start_liquidity * window)


# -- script files ---------------------------------------------------------

_EVENT_KINDS = {"trade", "price_move", "collect_fees", "snapshot"}


def _parse_event(index: int, raw: dict) -> Event:
    kind = raw.get("type")
    if kind not in _EVENT_KINDS:
        raise ScriptError(f"event {index}: unknown type {kind!r}")
    try:
        t = float(raw.get("t", 0.0))
        if kind == "trade":
            spread = raw.get("max_spread")
            return Trade(
                t=t,
                direction=Direction(raw["direction"]),
                amount_in=raw["amount"],
                max_spread=None if spread is None else float(spread),
            )
        if kind == "price_move":
            return PriceMove(t=t, delta_x=float(raw["delta_x"]), delta_y=float(raw["delta_y"]))
        if kind == "collect_fees":
            return CollectFees(t=t, provider=str(raw["provider"]))
        return Snapshot(t=t, label=str(raw.get("label", f"snapshot-{index}")))
    except (KeyError, TypeError, ValueError) as err:
        raise ScriptError(f"event {index}: {err}") from err


def load_script(source: Union[str, os.PathLike, io.TextIOBase]) -> ScenarioScript:
    """Load a scenario from a JSON file (path or open text stream).

    Expected shape::

        {
          "pool":   {"x": 100, "y": 100, "fee_rate": 0.003,
                     "fee_model": "collect_separately"},
          "prices": {"p_x": 1.0, "p_y": 1.0},
          "provider": "lp",
          "events": [
            {"type": "trade", "t": 0.1, "direction": "y2x",
             "amount": 5, "max_spread": 0.5},
            {"type": "price_move", "t": 0.5, "delta_x": 1, "delta_y": 4},
            {"type": "collect_fees", "t": 0.9, "provider": "lp"},
            {"type": "snapshot", "t": 1.0, "label": "year-end"}
          ]
        }

    ``fee_model`` is ``auto_compound`` or ``collect_separately``; trade
    directions are ``y2x`` / ``x2y``; ``max_spread`` may be omitted or null
    for uncapped trades.  Timestamps are in years and must not decrease.
    """
    if isinstance(source, io.TextIOBase):
        raw = source.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as err:
            raise ScriptError(f"cannot read script: {err}") from err
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ScriptError(f"invalid JSON: {err}") from err
    try:
        pool = doc["pool"]
        prices = doc["prices"]
        fee_model = FeeModel(pool.get("fee_model", "auto_compound"))
        events = tuple(
            _parse_event(i, entry) for i, entry in enumerate(doc.get("events", ()))
        )
        return ScenarioScript(
            pool_x=float(pool["x"]),
            pool_y=float(pool["y"]),
            fee_rate=float(pool.get("fee_rate", 0.0)),
            fee_model=fee_model,
            p_x0=float(prices["p_x"]),
            p_y0=float(prices["p_y"]),
            events=events,
            provider=str(doc.get("provider", "lp")),
        )
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, ScriptError):
            raise
        raise ScriptError(f"malformed script: {err}") from err


def snapshots_to_csv(snapshots: Sequence[PortfolioSnapshot]) -> str:
    """Render snapshots as a CSV table with a single header row."""
    lines = [
        "label,t,reserve_x,reserve_y,fees_x,fees_y,"
        "lp_value_pooled,lp_value_held,lambda_realized,p_x,p_y"
    ]
    for snap in snapshots:
        values = (
            snap.t,
            snap.reserve_x,
            snap.reserve_y,
            snap.fees_x,
            snap.fees_y,
            snap.lp_value_pooled,
            snap.lp_value_held,
            snap.lambda_realized,
            snap.p_x,
            snap.p_y,
        )
        lines.append(snap.label + "," + ",".join(repr(float(v)) for v in values))
    return "\n".join(lines) + "\n"
