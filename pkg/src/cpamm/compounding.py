"""Mixed-population compounding dynamics.

A pool with initial liquidity ``L0`` accrues fees at rate ``alpha * L0`` per
year.  Providers owning ``L_c`` of the liquidity continuously reinvest their
fee share, the rest (``L_nc``, constant) let fees pile up outside the pool.
Each instant the compounders capture the fraction ``L_c / (L_c + L_nc)`` of
the fee flow, so

    dL_c/dt = alpha * L0 * L_c / (L_c + L_nc).

Two independent solution paths are provided and cross-checked in tests:

* :func:`integrate_lc`, fixed-step RK4 on ``(L_c, F_nc)`` where ``F_nc`` is
  the fee flow to non-compounders, integrated alongside so fee conservation
  ``(L_c - L_c(0)) + F_nc = alpha * L0 * t`` is a measured property rather
  than a bookkeeping identity;
* :func:`lc_implicit_solve`, bisection on the separated-variables form
  ``L_c - L_c(0) + L_nc * ln(L_c / L_c(0)) = alpha * L0 * t``.

Returns on investment: ``rho_c = L_c(t)/L_c(0)`` for compounders and
``rho_nc = 1 + F_nc/L_nc`` for the rest.  The all-of-one-kind populations
bypass the ODE: with everyone compounding, liquidity grows linearly and
``rho_c = 1 + alpha t``; with no one compounding, ``rho_nc = 1 + alpha t``.
The ROI of the vanishing population is reported as its analytic limit
(``rho_nc -> 1 + ln(1 + alpha t)`` and ``rho_c -> exp(alpha t)``), the
return a marginally small participant of that kind would see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Tuple

from .errors import InvalidStep, NoConvergence, NonPositiveInput

#: Relative width at which the implicit-equation bisection stops.
ROOT_REL_TOL = 1e-12
_ROOT_MAX_ITER = 200


@dataclass(frozen=True)
class RoiParams:
    """Population split, fee accrual rate, and integration controls."""

    frac_compounding: float
    alpha: float
    horizon: float
    l_total0: float = 1.0
    step: float = 1e-3

    def __post_init__(self) -> None:
        if not 0 <= self.frac_compounding <= 1:
            raise NonPositiveInput(
                f"compounding fraction must be in [0, 1], got {self.frac_compounding}"
            )
        if self.alpha < 0:
            raise NonPositiveInput(f"growth rate must be >= 0, got {self.alpha}")
        if self.horizon < 0:
            raise NonPositiveInput(f"horizon must be >= 0, got {self.horizon}")
        if self.l_total0 <= 0:
            raise NonPositiveInput(f"initial liquidity must be positive, got {self.l_total0}")
        if self.step <= 0:
            raise InvalidStep(f"integration step must be positive, got {self.step}")

    @property
    def l_c0(self) -> float:
        return self.frac_compounding * self.l_total0

    @property
    def l_nc(self) -> float:
        return (1 - self.frac_compounding) * self.l_total0


@dataclass(frozen=True)
class RoiSample:
    t: float
    l_c: float
    rho_c: float
    rho_nc: float
    fees_nc: float


@dataclass(frozen=True)
class RoiTrajectory:
    samples: Tuple[RoiSample, ...]

    @property
    def final(self) -> RoiSample:
        return self.samples[-1]


def _rho_c_limit(alpha: float, t: float) -> float:
    # frac -> 0: a vanishing compounder grows against a fixed pool.
    return math.exp(alpha * t)


def _rho_nc_limit(alpha: float, t: float) -> float:
    # frac -> 1: a vanishing holdout earns the pool's diluting fee share.
    return 1 + math.log(1 + alpha * t)


def _sample_at(params: RoiParams, t: float, l_c: float, fees_nc: float) -> RoiSample:
    frac = params.frac_compounding
    if frac == 0:
        rho_c = _rho_c_limit(params.alpha, t)
        rho_nc = 1 + fees_nc / params.l_nc
    elif frac == 1:
        rho_c = l_c / params.l_c0
        rho_nc = _rho_nc_limit(params.alpha, t)
    else:
        rho_c = l_c / params.l_c0
        rho_nc = 1 + fees_nc / params.l_nc
    return RoiSample(t=t, l_c=l_c, rho_c=rho_c, rho_nc=rho_nc, fees_nc=fees_nc)


def _time_grid(horizon: float, step: float) -> Tuple[float, ...]:
    if horizon == 0:
        return (0.0,)
    whole = int(horizon / step)
    times = [i * step for i in range(whole + 1)]
    if times[-1] < horizon - 1e-12 * horizon:
        times.append(horizon)
    else:
        times[-1] = horizon
    return tuple(times)


def integrate_lc(params: RoiParams) -> RoiTrajectory:
    """Integrate the compounding ODE with fixed-step RK4 over the horizon.

    Every step is recorded.  The final sample lands exactly on the horizon
    (the last step is shortened if needed).
    """
    rate = params.alpha * params.l_total0
    times = _time_grid(params.horizon, params.step)
    frac = params.frac_compounding

    if frac == 0 or frac == 1 or params.alpha == 0:
        # Linear analytic solutions; no ODE needed.
        samples = []
        for t in times:
            if frac == 1:
                l_c = params.l_c0 + rate * t
                fees_nc = 0.0
            else:
                l_c = params.l_c0
                fees_nc = rate * t if frac == 0 else 0.0
            if params.alpha == 0:
                fees_nc = 0.0
            samples.append(_sample_at(params, t, l_c, fees_nc))
        return RoiTrajectory(samples=tuple(samples))

    l_nc = params.l_nc

    def slopes(l_c: float) -> Tuple[float, float]:
        share = l_c / (l_c + l_nc)
        return rate * share, rate * (1 - share)

    l_c = params.l_c0
    fees_nc = 0.0
    samples = [_sample_at(params, times[0], l_c, fees_nc)]
    for prev, t in zip(times, times[1:]):
        h = t - prev
        k1, j1 = slopes(l_c)
        k2, j2 = slopes(l_c + 0.5 * h * k1)
        k3, j3 = slopes(l_c + 0.5 * h * k2)
        k4, j4 = slopes(l_c + h * k3)
        l_c += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        fees_nc += h / 6 * (j1 + 2 * j2 + 2 * j3 + j4)
        samples.append(_sample_at(params, t, l_c, fees_nc))
    return RoiTrajectory(samples=tuple(samples))


def lc_implicit_solve(params: RoiParams, t: float) -> float:
    """Compounders' liquidity at ``t`` from the separated-variables equation.

    The left-hand side is strictly increasing in ``L_c``, so the root is
    unique and bracketed by ``[L_c(0), L_c(0) + alpha L0 t]``.  Requires a
    non-empty compounding population.
    """
    if params.frac_compounding == 0:
        raise NonPositiveInput("no compounding population; the equation degenerates")
    if t < 0:
        raise NonPositiveInput(f"time must be >= 0, got {t}")
    l_c0 = params.l_c0
    l_nc = params.l_nc
    target = params.alpha * params.l_total0 * t
    if target == 0:
        return l_c0
    if l_nc == 0:
        return l_c0 + target

    def gap(l_c: float) -> float:
        return l_c - l_c0 + l_nc * math.log(l_c / l_c0) - target

    lo, hi = l_c0, l_c0 + target
    for _ in range(_ROOT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= ROOT_REL_TOL * hi:
            return mid
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(
        f"bisection failed to reach {ROOT_REL_TOL} relative width "
        f"in {_ROOT_MAX_ITER} iterations"
    )


def roi_pair(params: RoiParams, t: float, method: str = "implicit") -> Tuple[float, float]:
    """Both populations' ROI at time ``t``.

    ``method`` picks the solution path for ``L_c``: ``"implicit"`` (default)
    solves the closed implicit equation, ``"rk4"`` integrates to ``t`` with
    the params' step.  The two agree to well below 1e-8 relative.
    """
    if t < 0:
        raise NonPositiveInput(f"time must be >= 0, got {t}")
    frac = params.frac_compounding
    rate = params.alpha * params.l_total0
    if frac == 0 or frac == 1 or params.alpha == 0:
        if frac == 1:
            l_c, fees_nc = params.l_c0 + rate * t, 0.0
        else:
            l_c, fees_nc = params.l_c0, rate * t if frac == 0 else 0.0
        if params.alpha == 0:
            fees_nc = 0.0
        sample = _sample_at(params, t, l_c, fees_nc)
        return sample.rho_c, sample.rho_nc
    if method == "implicit":
        l_c = lc_implicit_solve(params, t)
        fees_nc = rate * t - (l_c - params.l_c0)
    elif method == "rk4":
        final = integrate_lc(replace(params, horizon=t)).final
        l_c, fees_nc = final.l_c, final.fees_nc
    else:
        raise NonPositiveInput(f"unknown method {method!r}; use 'implicit' or 'rk4'")
    sample = _sample_at(params, t, l_c, fees_nc)
    return sample.rho_c, sample.rho_nc
