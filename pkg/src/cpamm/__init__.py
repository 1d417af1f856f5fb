"""Constant-product pool engine and liquidity-provider analytics.

The package splits into five layers:

- :mod:`cpamm.pool`: the swap engine itself (spread caps, fees, shares)
- :mod:`cpamm.rational`: an exact rational swap oracle for cross-checking
- :mod:`cpamm.analytics`: impermanent loss and fee-model value evolution
- :mod:`cpamm.compounding`: the compounding-vs-collecting ROI growth model
- :mod:`cpamm.scenario` / :mod:`cpamm.figures` / :mod:`cpamm.cli`: replay
  scripts, CSV figure emitters and the command-line front end
"""

from .analytics import (
    GrowthParams,
    IlReport,
    PriceScenario,
    hold_value_relative,
    il_brute_force,
    impermanent_loss,
    relative_evolution_collected,
    relative_evolution_compounded,
)
from .compounding import (
    RoiParams,
    RoiSample,
    RoiTrajectory,
    integrate_lc,
    lc_implicit_solve,
    roi_pair,
)
from .errors import (
    CpammError,
    DomainError,
    EmptyWindow,
    InactivePool,
    InputError,
    InsufficientShares,
    InternalError,
    InvalidFee,
    InvalidRate,
    InvalidStep,
    NoConvergence,
    NonPositiveAmount,
    NonPositiveDelta,
    NonPositiveInput,
    NonPositivePrice,
    NonPositiveReserve,
    RateMismatch,
    ScriptError,
    SpreadOutOfRange,
)
from .figures import FIGURE_IDS, FigureSpec, default_figure_spec, emit_figure
from .pool import (
    Direction,
    FeeModel,
    LpPosition,
    Numeric,
    PoolState,
    SideLedger,
    SwapQuote,
    SwapReceipt,
    add_liquidity,
    arbitrage_input_for_rate,
    create_pool,
    execute_swap,
    liquidity_of,
    max_input_for_spread,
    pool_value,
    quote,
    rate_of,
    remove_liquidity,
    reserves_from_rate_liquidity,
    reserves_from_value,
)
from .rational import RationalPool, oracle_split_sum, oracle_swap
from .scenario import (
    CollectFees,
    Event,
    PortfolioSnapshot,
    PriceMove,
    ScenarioScript,
    Snapshot,
    Trade,
    load_script,
    measure_effective_alpha,
    run_scenario,
    snapshots_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CollectFees",
    "CpammError",
    "Direction",
    "DomainError",
    "EmptyWindow",
    "Event",
    "FIGURE_IDS",
    "FeeModel",
    "FigureSpec",
    "GrowthParams",
    "IlReport",
    "InactivePool",
    "InputError",
    "InsufficientShares",
    "InternalError",
    "InvalidFee",
    "InvalidRate",
    "InvalidStep",
    "LpPosition",
    "NoConvergence",
    "NonPositiveAmount",
    "NonPositiveDelta",
    "NonPositiveInput",
    "NonPositivePrice",
    "NonPositiveReserve",
    "Numeric",
    "PoolState",
    "PortfolioSnapshot",
    "PriceMove",
    "PriceScenario",
    "RateMismatch",
    "RationalPool",
    "RoiParams",
    "RoiSample",
    "RoiTrajectory",
    "ScenarioScript",
    "ScriptError",
    "SideLedger",
    "Snapshot",
    "SpreadOutOfRange",
    "SwapQuote",
    "SwapReceipt",
    "Trade",
    "add_liquidity",
    "arbitrage_input_for_rate",
    "create_pool",
    "default_figure_spec",
    "emit_figure",
    "execute_swap",
    "hold_value_relative",
    "il_brute_force",
    "impermanent_loss",
    "integrate_lc",
    "lc_implicit_solve",
    "liquidity_of",
    "load_script",
    "max_input_for_spread",
    "measure_effective_alpha",
    "pool_value",
    "quote",
    "rate_of",
    "relative_evolution_collected",
    "relative_evolution_compounded",
    "remove_liquidity",
    "reserves_from_rate_liquidity",
    "reserves_from_value",
    "roi_pair",
    "run_scenario",
    "snapshots_to_csv",
]
