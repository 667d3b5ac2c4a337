"""Stage game: actions, payoffs, and the precedent-setting state transition.

The state of the repeated game is the current status quo split of one unit
of surplus.  Each period both players either stay flexible or commit to a
demand in [1/2, 1] at cost ``cost``.  Incompatible commitments destroy the
period's surplus and leave the status quo unchanged; any successful split
becomes the next period's status quo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = [
    "UtilityFn",
    "Action",
    "StatusQuo",
    "Params",
    "stage_payoffs",
    "transition",
    "pareto_distance",
]

# float slack tolerated on interval bounds before rejecting an input outright
_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class UtilityFn:
    """Power utility u(x) = x**gamma on [0, 1], strictly concave for gamma < 1."""

    gamma: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma out of range (0, 1]")

    def __call__(self, x):
        return np.asarray(x) ** self.gamma if isinstance(x, np.ndarray) else x**self.gamma

    def inverse(self, y):
        return y ** (1.0 / self.gamma)


@dataclass(frozen=True)
class Action:
    """A stage action: flexible (demand is None) or commit to demand in [1/2, 1]."""

    demand: float | None = None

    def __post_init__(self):
        if self.demand is not None:
            d = float(self.demand)
            if d < 0.5 - _EDGE_TOL or d > 1.0 + _EDGE_TOL:
                raise ValueError(f"demand {d} outside [1/2, 1]")
            object.__setattr__(self, "demand", min(max(d, 0.5), 1.0))

    @classmethod
    def flexible(cls) -> "Action":
        return cls(None)

    @classmethod
    def commit(cls, demand: float) -> "Action":
        return cls(demand)

    @property
    def is_commit(self) -> bool:
        return self.demand is not None

    def __str__(self) -> str:
        return "f" if self.demand is None else f"{self.demand:g}"


@dataclass(frozen=True)
class StatusQuo:
    """Current split of the unit surplus; player 2 holds ``1 - alpha1``."""

    alpha1: float

    def __post_init__(self):
        if not -_EDGE_TOL <= self.alpha1 <= 1.0 + _EDGE_TOL:
            raise ValueError(f"status quo share {self.alpha1} outside [0, 1]")
        object.__setattr__(self, "alpha1", min(max(float(self.alpha1), 0.0), 1.0))

    @property
    def alpha2(self) -> float:
        return 1.0 - self.alpha1

    def swapped(self) -> "StatusQuo":
        return StatusQuo(self.alpha2)


@dataclass(frozen=True)
class Params:
    """Model primitives: discounting, commitment cost, utility, initial split."""

    delta: float
    cost: float
    utility: UtilityFn = field(default_factory=UtilityFn)
    alpha0: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta out of range (0, 1)")
        if not self.cost > 0.0:
            raise ValueError("cost out of range (0, inf)")
        if not 0.0 < self.alpha0 < 1.0:
            raise ValueError("alpha0 out of range (0, 1)")


def stage_payoffs(a1: Action, a2: Action, q: StatusQuo, p: Params) -> tuple[float, float]:
    """Per-period payoff pair for an action pair at status quo ``q``.

    Two commitments are compatible only when both demand exactly 1/2
    (demands live in [1/2, 1], so any other pair sums above one and the
    surplus is destroyed).
    """
    u = p.utility
    if a1.is_commit and a2.is_commit:
        if a1.demand + a2.demand > 1.0:
            return (-p.cost, -p.cost)
        return (u(a1.demand) - p.cost, u(a2.demand) - p.cost)
    if a1.is_commit:
        return (u(a1.demand) - p.cost, u(1.0 - a1.demand))
    if a2.is_commit:
        return (u(1.0 - a2.demand), u(a2.demand) - p.cost)
    return (u(q.alpha1), u(q.alpha2))


def transition(a1: Action, a2: Action, q: StatusQuo) -> StatusQuo:
    """Next status quo: the realized split, or ``q`` after conflict / mutual flexibility."""
    if a1.is_commit and a2.is_commit:
        if a1.demand + a2.demand > 1.0:
            return q
        return StatusQuo(a1.demand)
    if a1.is_commit:
        return StatusQuo(a1.demand)
    if a2.is_commit:
        return StatusQuo(1.0 - a2.demand)
    return q


def pareto_distance(payoff_pair: tuple[float, float], utility: UtilityFn) -> float:
    """Euclidean distance from a payoff pair to the lossless-division frontier.

    The frontier is {(u(a), u(1-a)) : a in [0, 1]}.  A coarse scan brackets
    the minimizer before the bounded refinement, so the result is accurate
    to well below 1e-9 in absolute terms.
    """
    px, py = float(payoff_pair[0]), float(payoff_pair[1])

    def dist(a: float) -> float:
        return math.hypot(utility(a) - px, utility(1.0 - a) - py)

    grid = np.linspace(0.0, 1.0, 129)
    vals = np.hypot(grid**utility.gamma - px, (1.0 - grid) ** utility.gamma - py)
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(dist, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return min(float(res.fun), float(vals[i]), dist(0.0), dist(1.0))
