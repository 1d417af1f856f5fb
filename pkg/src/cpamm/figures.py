"""Deterministic CSV emitters for the five analysis figures.

Each figure is a table with one header row and one row per grid point, fed
by the same analytics and simulation code the rest of the package uses.
Output is plain CSV so plotting stays external; numbers are rendered with
``repr`` so repeated runs are bit-identical.

Figure ids and their series:

====================================  ==============================================
``il_one_coin``                       impermanent loss (percent) vs price change
``portfolio_one_coin``                pooled vs held portfolio value (percent)
``fee_model_comparison``              held / auto-compound / collect-separately
``roi_comparison``                    ROI over time for both compounding choices
``corrected_fee_model_comparison``    fee-model comparison with simulated ROIs
====================================  ==============================================

The x-axis for all price figures is the relative price change of coin Y in
percent; a row at ``p`` means the price ratio moved by a factor
``1 + p / 100``.  The ROI figure's x-axis is time in years.

The corrected comparison scales its curves by headline ROI percentages that
default to the one-year, 99 percent participation simulation results rounded
to displayed precision (20.02 and 18.2).  Pass exact simulator output to
``roi_compounding_pct`` / ``roi_not_compounding_pct`` when rounding matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .analytics import (
    GrowthParams,
    PriceScenario,
    hold_value_relative,
    impermanent_loss,
    relative_evolution_collected,
    relative_evolution_compounded,
)
from .compounding import RoiParams, roi_pair
from .errors import DomainError

FIGURE_IDS = (
    "il_one_coin",
    "portfolio_one_coin",
    "fee_model_comparison",
    "roi_comparison",
    "corrected_fee_model_comparison",
)

_DEFAULT_GRIDS = {
    "il_one_coin": (-99.0, 200.0, 300),
    "portfolio_one_coin": (-99.0, 200.0, 300),
    "fee_model_comparison": (-99.0, 300.0, 400),
    "roi_comparison": (0.0, 1.0, 101),
    "corrected_fee_model_comparison": (-99.0, 150.0, 250),
}


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    domain_grid: Tuple[float, float, int]
    alpha: float = 0.2
    t: float = 1.0
    frac_compounding: float = 0.99
    roi_compounding_pct: float = 20.02
    roi_not_compounding_pct: float = 18.2

    def __post_init__(self) -> None:
        if self.figure_id not in FIGURE_IDS:
            raise DomainError(f"unknown figure id {self.figure_id!r}")
        lo, hi, count = self.domain_grid
        if count < 2:
            raise DomainError(f"need at least 2 grid points, got {count}")
        if not lo < hi:
            raise DomainError(f"empty grid range [{lo}, {hi}]")
        if self.figure_id == "roi_comparison":
            if lo < 0:
                raise DomainError(f"time axis starts at 0, got {lo}")
        elif lo <= -100.0:
            raise DomainError(
                f"price change must stay above -100 percent, got {lo}"
            )
        if self.alpha < 0 or self.t < 0:
            raise DomainError("alpha and t must be non-negative")
        if not 0 <= self.frac_compounding <= 1:
            raise DomainError(
                f"frac_compounding must lie in [0, 1], got {self.frac_compounding}"
            )

    def grid_points(self) -> List[float]:
        lo, hi, count = self.domain_grid
        step = (hi - lo) / (count - 1)
        points = [lo + i * step for i in range(count)]
        points[-1] = hi
        return points


def default_figure_spec(figure_id: str, **overrides) -> FigureSpec:
    """Spec with the stock grid for ``figure_id``; kwargs override fields."""
    if figure_id not in _DEFAULT_GRIDS:
        raise DomainError(f"unknown figure id {figure_id!r}")
    overrides.setdefault("domain_grid", _DEFAULT_GRIDS[figure_id])
    return FigureSpec(figure_id=figure_id, **overrides)


def _price_rows(spec: FigureSpec):
    for pct in spec.grid_points():
        yield pct, PriceScenario(delta_x=1.0, delta_y=1.0 + pct / 100.0)


def _emit_il_one_coin(spec: FigureSpec) -> Tuple[List[str], List[List[float]]]:
    rows = []
    for pct, scenario in _price_rows(spec):
        rows.append([pct, impermanent_loss(scenario).relative_loss * 100.0])
    return ["price_change_pct", "il_pct"], rows


def _emit_portfolio_one_coin(spec: FigureSpec):
    rows = []
    for pct, scenario in _price_rows(spec):
        report = impermanent_loss(scenario)
        rows.append([pct, report.v_held * 100.0, report.v_pooled * 100.0])
    return ["price_change_pct", "not_investing", "providing_liquidity"], rows


def _emit_fee_model_comparison(spec: FigureSpec):
    growth = GrowthParams(alpha=spec.alpha, t=spec.t)
    rows = []
    for pct, scenario in _price_rows(spec):
        rows.append(
            [
                pct,
                hold_value_relative(scenario) * 100.0,
                relative_evolution_compounded(scenario, growth) * 100.0,
                relative_evolution_collected(scenario, growth) * 100.0,
            ]
        )
    return ["price_change_pct", "not_investing", "uniswap_v2", "beaker"], rows


def _emit_roi_comparison(spec: FigureSpec):
    params = RoiParams(
        frac_compounding=spec.frac_compounding,
        alpha=spec.alpha,
        horizon=spec.domain_grid[1],
    )
    rows = []
    for t in spec.grid_points():
        rho_c, rho_nc = roi_pair(params, t)
        rows.append([t, (rho_c - 1.0) * 100.0, (rho_nc - 1.0) * 100.0])
    return ["time", "compounding", "not_compounding"], rows


def _emit_corrected_comparison(spec: FigureSpec):
    scale_c = 100.0 + spec.roi_compounding_pct
    gain_nc = spec.roi_not_compounding_pct
    rows = []
    for pct, scenario in _price_rows(spec):
        delta = scenario.delta_y
        root = delta ** 0.5
        rows.append(
            [
                pct,
                hold_value_relative(scenario) * 100.0,
                scale_c * root,
                100.0 * root + gain_nc * (delta + 1.0) / 2.0,
            ]
        )
    return ["price_change_pct", "not_investing", "compounding", "not_compounding"], rows


_EMITTERS = {
    "il_one_coin": _emit_il_one_coin,
    "portfolio_one_coin": _emit_portfolio_one_coin,
    "fee_model_comparison": _emit_fee_model_comparison,
    "roi_comparison": _emit_roi_comparison,
    "corrected_fee_model_comparison": _emit_corrected_comparison,
}


def emit_figure(spec: FigureSpec) -> str:
    """Render the figure described by ``spec`` as a CSV string."""
    header, rows = _EMITTERS[spec.figure_id](spec)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(value)) for value in row))
    return "\n".join(lines) + "\n"
