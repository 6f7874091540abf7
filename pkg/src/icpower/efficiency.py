"""Two-player efficiency analysis on the utility plane.

Samples the achievable utility region over [0, power_cap]^2, extracts the
Pareto frontier, maximizes weighted social welfare, and computes the Nash
bargaining solution over the improvement region of a disagreement point
(typically the noncooperative equilibrium).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .continuous import ee_utility
from .network import NetworkModel, PowerProfile, Powers, power_tuple
from .numerics import refine_coordinatewise

__all__ = [
    "UtilityPoint",
    "Weights",
    "EmptyImprovementRegionError",
    "utility_point",
    "utility_grid",
    "pareto_frontier",
    "social_optimum",
    "in_improvement_region",
    "nash_bargaining",
    "fairness_projection",
    "distance_to_frontier",
    "grid_csv_rows",
]


class UtilityPoint(NamedTuple):
    """A power profile with its utility pair, raw and in noise units."""

    profile: PowerProfile
    utilities: tuple[float, ...]
    normalized: tuple[float, ...]


@dataclass(frozen=True)
class Weights:
    """Convex welfare weights, one per player."""

    w: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.w)
        object.__setattr__(self, "w", vals)
        if any(v < 0 for v in vals):
            raise ValueError("weights must be >= 0")
        if abs(sum(vals) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 (got {sum(vals)})")


class EmptyImprovementRegionError(ValueError):
    """No sampled profile weakly improves on the disagreement point."""


def utility_point(model: NetworkModel, profile: Powers) -> UtilityPoint:
    s = power_tuple(profile, model.num_players)
    utilities = tuple(ee_utility(model, s, k) for k in range(model.num_players))
    scale = model.noise_power / model.rate_scale
    return UtilityPoint(profile=PowerProfile(s), utilities=utilities,
                        normalized=tuple(u * scale for u in utilities))


def _require_two_players(model: NetworkModel) -> None:
    if model.num_players != 2:
        raise ValueError(
            f"utility-plane analysis supports exactly 2 players, got {model.num_players}"
        )


def _surfaces(model: NetworkModel, axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized utility surfaces u1(s1, s2), u2(s1, s2) on axis x axis."""
    g = model.gain_matrix()
    s1, s2 = np.meshgrid(axis, axis, indexing="ij")
    out = []
    for k, (own, other) in enumerate(((s1, s2), (s2, s1))):
        gamma = model.processing_gain * g[k, k] * own / (
            model.noise_power + g[k, 1 - k] * other)
        tput = model.rate_scale * (-np.expm1(-gamma)) ** model.packet_bits
        with np.errstate(divide="ignore", invalid="ignore"):
            out.append(np.where(own > 0, tput / own, 0.0))
    return out[0], out[1]


def utility_grid(model: NetworkModel, n_per_axis: int = 400) -> list[UtilityPoint]:
    """Sample [0, power_cap]^2 uniformly (endpoints included), s1-major order."""
    _require_two_players(model)
    if n_per_axis < 2:
        raise ValueError("n_per_axis must be >= 2")
    axis = np.linspace(0.0, model.power_cap, n_per_axis)
    u1, u2 = _surfaces(model, axis)
    scale = model.noise_power / model.rate_scale
    points = []
    for i, a in enumerate(axis):
        for j, b in enumerate(axis):
            utilities = (float(u1[i, j]), float(u2[i, j]))
            points.append(UtilityPoint(
                profile=PowerProfile((float(a), float(b))),
                utilities=utilities,
                normalized=(utilities[0] * scale, utilities[1] * scale),
            ))
    return points


def pareto_frontier(points: Sequence[UtilityPoint]) -> list[UtilityPoint]:
    """Non-dominated subset, sorted by u1 ascending (u2 then non-increasing).

    Dominance is weak-in-all, strict-in-some.  Points with identical utility
    pairs are collapsed to the one with the lexicographically smallest
    profile before the sweep.
    """
    if not points:
        raise ValueError("need at least one point")
    unique: dict[tuple[float, ...], UtilityPoint] = {}
    for pt in points:
        key = pt.utilities
        held = unique.get(key)
        if held is None or pt.profile.powers < held.profile.powers:
            unique[key] = pt
    ordered = sorted(unique.values(), key=lambda pt: (-pt.utilities[0], -pt.utilities[1]))
    frontier: list[UtilityPoint] = []
    best_u2 = -math.inf
    for pt in ordered:
        if pt.utilities[1] > best_u2:
            frontier.append(pt)
            best_u2 = pt.utilities[1]
    frontier.reverse()
    return frontier


def social_optimum(model: NetworkModel, weights: Weights, n_per_axis: int = 400,
                   refine_tol: float = 1e-10) -> UtilityPoint:
    """Maximize w1*u1 + w2*u2 over [0, power_cap]^2: grid scan, then
    coordinate-wise golden-section polish around the best cell."""
    _require_two_players(model)
    if len(weights.w) != 2:
        raise ValueError(f"need 2 weights, got {len(weights.w)}")
    w1, w2 = weights.w
    axis = np.linspace(0.0, model.power_cap, n_per_axis)
    u1, u2 = _surfaces(model, axis)
    welfare = w1 * u1 + w2 * u2
    i, j = np.unravel_index(int(np.argmax(welfare)), welfare.shape)
    x0 = (float(axis[i]), float(axis[j]))

    def objective(s: Sequence[float]) -> float:
        return w1 * ee_utility(model, s, 0) + w2 * ee_utility(model, s, 1)

    span = float(axis[1] - axis[0])
    best, _ = refine_coordinatewise(objective, x0, 0.0, model.power_cap, span,
                                    tol=refine_tol)
    return utility_point(model, best)


def in_improvement_region(candidate: UtilityPoint, baseline: UtilityPoint) -> bool:
    """Component-wise weak dominance of the baseline's utilities."""
    if len(candidate.utilities) != len(baseline.utilities):
        raise ValueError("utility vectors differ in length")
    return all(c >= b for c, b in zip(candidate.utilities, baseline.utilities))


def _bargain(model: NetworkModel, disagreement: UtilityPoint, n_per_axis: int,
             refine_tol: float, combine) -> UtilityPoint:
    """Shared grid-then-refine driver for improvement-region objectives.

    ``combine(g1, g2)`` scores nonnegative utility gains; infeasible points
    are scored by their (negative) total shortfall, so any nonnegative score
    certifies feasibility and refinement never walks out of the region.
    """
    _require_two_players(model)
    d1, d2 = disagreement.utilities
    axis = np.linspace(0.0, model.power_cap, n_per_axis)
    u1, u2 = _surfaces(model, axis)
    g1, g2 = u1 - d1, u2 - d2
    feasible = (g1 >= 0.0) & (g2 >= 0.0)
    if not feasible.any():
        raise EmptyImprovementRegionError(
            "no sampled profile weakly improves on the disagreement utilities"
        )
    score = np.where(feasible, combine(g1, g2), -np.inf)
    i, j = np.unravel_index(int(np.argmax(score)), score.shape)
    x0 = (float(axis[i]), float(axis[j]))

    def objective(s: Sequence[float]) -> float:
        a = ee_utility(model, s, 0) - d1
        b = ee_utility(model, s, 1) - d2
        if a >= 0.0 and b >= 0.0:
            return combine(a, b)
        return min(a, 0.0) + min(b, 0.0)

    span = float(axis[1] - axis[0])
    best, _ = refine_coordinatewise(objective, x0, 0.0, model.power_cap, span,
                                    tol=refine_tol)
    return utility_point(model, best)


def nash_bargaining(model: NetworkModel, disagreement: UtilityPoint,
                    n_per_axis: int = 400, refine_tol: float = 1e-10) -> UtilityPoint:
    """Maximize the product of utility gains over the improvement region."""
    return _bargain(model, disagreement, n_per_axis, refine_tol,
                    lambda a, b: a * b)


def fairness_projection(model: NetworkModel, baseline: UtilityPoint,
                        n_per_axis: int = 400, refine_tol: float = 1e-10) -> UtilityPoint:
    """Equal-gain point: push both utilities up by the same amount until the
    frontier is reached (diagnostic; maximizes the smaller gain)."""
    return _bargain(model, baseline, n_per_axis, refine_tol, np.minimum)


def distance_to_frontier(point: UtilityPoint, frontier: Sequence[UtilityPoint]) -> float:
    """Euclidean distance, in normalized units, to the nearest frontier point."""
    if not frontier:
        raise ValueError("empty frontier")
    x, y = point.normalized
    return min(math.hypot(x - fx, y - fy) for fx, fy in (f.normalized for f in frontier))


def grid_csv_rows(points: Sequence[UtilityPoint],
                  frontier: Sequence[UtilityPoint]) -> tuple[list[str], list[list]]:
    """Header and rows for the utility-plane CSV export."""
    header = ["s1", "s2", "u1", "u2", "u1_norm", "u2_norm", "on_frontier"]
    marked = {f.profile.powers for f in frontier}
    rows = []
    for pt in points:
        rows.append([pt.profile.powers[0], pt.profile.powers[1],
                     pt.utilities[0], pt.utilities[1],
                     pt.normalized[0], pt.normalized[1],
                     int(pt.profile.powers in marked)])
    return header, rows
