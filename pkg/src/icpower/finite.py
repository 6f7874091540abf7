"""Finite strategic-form games: payoff tensors, dominance, pure equilibria.

Strategies are transmit power levels; the two bundled constructions are the
near-far scenario (one strong, one weak transmitter) and the symmetric
on/off scenario where both links share one gain.  Joint profiles are tuples
of per-player strategy indices, player 0 first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGame",
    "FiniteGameParams",
    "JointDistribution",
    "Elimination",
    "build_nfe_game",
    "build_ic_game",
    "payoff",
    "strictly_dominated",
    "iterated_dominance",
    "best_responses_finite",
    "pure_nash",
    "is_correlated_equilibrium",
]

# Success threshold comparisons allow this relative slack: the on/off games
# place the lone transmitter exactly at the required SINR, and rounding in
# the power level must not flip that case to a failure.
_THRESHOLD_RTOL = 1e-9


@dataclass(frozen=True)
class FiniteGameParams:
    """Reward/cost parameters of the on/off transmission games."""

    throughput_reward: float = 1.0
    power_cost: float = 0.01
    sinr_threshold: float = 4.0

    def __post_init__(self) -> None:
        if not self.throughput_reward > self.power_cost > 0:
            raise ValueError("need throughput_reward > power_cost > 0")
        if not self.sinr_threshold > 0:
            raise ValueError("sinr_threshold must be > 0")


@dataclass(frozen=True)
class FiniteGame:
    """A finite game: per-player strategy lists plus a payoff tensor.

    ``payoffs`` has one axis per player (player 0 outermost) and a trailing
    axis holding the per-player utility vector.
    """

    strategies: tuple[tuple[float, ...], ...]
    payoffs: tuple

    def __post_init__(self) -> None:
        strategies = tuple(tuple(float(v) for v in row) for row in self.strategies)
        if not strategies or any(not row for row in strategies):
            raise ValueError("every player needs at least one strategy")
        object.__setattr__(self, "strategies", strategies)
        arr = np.asarray(self.payoffs, dtype=float)
        shape = tuple(len(row) for row in strategies) + (len(strategies),)
        if arr.shape != shape:
            raise ValueError(f"payoff tensor shape {arr.shape} != expected {shape}")
        object.__setattr__(self, "payoffs", _nested(arr))

    @property
    def num_players(self) -> int:
        return len(self.strategies)

    def payoff_tensor(self) -> np.ndarray:
        return np.asarray(self.payoffs, dtype=float)

    def joint_indices(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(len(s)) for s in self.strategies))

    def profile_values(self, joint_index: Sequence[int]) -> tuple[float, ...]:
        """Map a joint strategy-index tuple to the power levels it selects."""
        return tuple(self.strategies[k][i] for k, i in enumerate(joint_index))

    def to_json_dict(self) -> dict:
        return {"strategies": [list(r) for r in self.strategies],
                "payoffs": self.payoffs}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteGame":
        return cls(strategies=tuple(tuple(r) for r in data["strategies"]),
                   payoffs=data["payoffs"])


def _nested(arr: np.ndarray):
    if arr.ndim == 1:
        return tuple(float(v) for v in arr)
    return tuple(_nested(sub) for sub in arr)


@dataclass(frozen=True)
class JointDistribution:
    """A probability distribution over joint strategy profiles."""

    probabilities: tuple

    def __post_init__(self) -> None:
        arr = np.asarray(self.probabilities, dtype=float)
        if (arr < 0).any():
            raise ValueError("probabilities must be >= 0")
        total = float(arr.sum())
        if not math.isclose(total, 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError(f"probabilities must sum to 1 (got {total})")
        object.__setattr__(self, "probabilities", _nested(arr))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probabilities, dtype=float)

    @classmethod
    def point_mass(cls, shape: Sequence[int], joint_index: Sequence[int]) -> "JointDistribution":
        arr = np.zeros(tuple(shape))
        arr[tuple(joint_index)] = 1.0
        return cls(probabilities=arr)

    @classmethod
    def uniform_over(cls, shape: Sequence[int],
                     joint_indices: Iterable[Sequence[int]]) -> "JointDistribution":
        arr = np.zeros(tuple(shape))
        idx = list(joint_indices)
        if not idx:
            raise ValueError("need at least one profile")
        for j in idx:
            arr[tuple(j)] = 1.0 / len(idx)
        return cls(probabilities=arr)


@dataclass(frozen=True)
class Elimination:
    """One dominance-elimination step: who lost what to what."""

    round: int
    player: int
    strategy: float
    dominator: float


def _on_off_payoffs(params: FiniteGameParams, gains: np.ndarray,
                    noise_power: float, processing_gain: float,
                    power_level: float) -> np.ndarray:
    """Payoff tensor of a 2-player {0, p} game under the threshold rule.

    A player scores ``throughput_reward`` when its SINR clears the required
    threshold, zero otherwise, and always pays ``power_cost`` * s/p.
    """
    t, c, req = params.throughput_reward, params.power_cost, params.sinr_threshold
    levels = (0.0, power_level)
    out = np.zeros((2, 2, 2))
    for i, s1 in enumerate(levels):
        for j, s2 in enumerate(levels):
            s = (s1, s2)
            for k in range(2):
                interference = gains[k, 1 - k] * s[1 - k]
                gamma = processing_gain * gains[k, k] * s[k] / (noise_power + interference)
                reward = t if gamma >= req * (1.0 - _THRESHOLD_RTOL) else 0.0
                out[i, j, k] = reward - c * s[k] / power_level
    return out


def build_nfe_game(params: FiniteGameParams, h1: float, h2: float,
                   noise_power: float, processing_gain: float) -> FiniteGame:
    """Build the 2x2 on/off game for a weak (h1) and a strong (h2) transmitter.

    Each transmitter reaches both receivers with its own single gain.  The
    shared power level is chosen so the weak transmitter alone sits exactly at
    the SINR threshold; the gain ratio must satisfy
    h1/h2 < 1 / (1 + sinr_threshold / processing_gain), which guarantees the
    strong transmitter still succeeds through the weak one's interference.
    """
    if not (h1 > 0 and h2 > 0):
        raise ValueError("gains must be > 0")
    if not noise_power > 0:
        raise ValueError("noise_power must be > 0")
    if not processing_gain >= 1:
        raise ValueError("processing_gain must be >= 1")
    bound = 1.0 / (1.0 + params.sinr_threshold / processing_gain)
    if not h1 / h2 < bound:
        raise ValueError(
            f"near-far assumption violated: h1/h2 = {h1 / h2:g} must be < "
            f"1/(1 + sinr_threshold/processing_gain) = {bound:g}"
        )
    p = noise_power * params.sinr_threshold / (h1 * processing_gain)
    gains = np.array([[h1, h2], [h1, h2]])
    return FiniteGame(strategies=((0.0, p), (0.0, p)),
                      payoffs=_on_off_payoffs(params, gains, noise_power,
                                              processing_gain, p))


def build_ic_game(params: FiniteGameParams, h: float,
                  noise_power: float, processing_gain: float) -> FiniteGame:
    """Build the symmetric 2x2 on/off game where every link has gain h.

    The power level puts a lone transmitter exactly at the SINR threshold, so
    simultaneous transmission fails for both players.
    """
    if not h > 0:
        raise ValueError("gain must be > 0")
    if not noise_power > 0:
        raise ValueError("noise_power must be > 0")
    if not processing_gain >= 1:
        raise ValueError("processing_gain must be >= 1")
    p = noise_power * params.sinr_threshold / (h * processing_gain)
    gains = np.full((2, 2), h)
    return FiniteGame(strategies=((0.0, p), (0.0, p)),
                      payoffs=_on_off_payoffs(params, gains, noise_power,
                                              processing_gain, p))


def payoff(game: FiniteGame, joint_index: Sequence[int]) -> tuple[float, ...]:
    """Utility vector at a joint strategy-index profile."""
    idx = tuple(joint_index)
    if len(idx) != game.num_players:
        raise IndexError(f"joint index has {len(idx)} entries for {game.num_players} players")
    for k, i in enumerate(idx):
        if not 0 <= i < len(game.strategies[k]):
            raise IndexError(f"strategy index {i} out of range for player {k}")
    node = game.payoffs
    for i in idx:
        node = node[i]
    return node


def _opponent_ranges(game: FiniteGame, k: int):
    return itertools.product(*(range(len(s)) for j, s in enumerate(game.strategies) if j != k))


def _insert(opp: Sequence[int], k: int, value: int) -> tuple[int, ...]:
    opp = tuple(opp)
    return opp[:k] + (value,) + opp[k:]


def strictly_dominated(game: FiniteGame, k: int, strat_index: int) -> tuple[bool, int | None]:
    """Whether some single alternative beats ``strat_index`` against every
    opponent profile.  Returns (dominated, dominating index or None)."""
    n_k = len(game.strategies[k])
    if not 0 <= k < game.num_players:
        raise IndexError(f"player index {k} out of range")
    if not 0 <= strat_index < n_k:
        raise IndexError(f"strategy index {strat_index} out of range for player {k}")
    for alt in range(n_k):
        if alt == strat_index:
            continue
        if all(payoff(game, _insert(opp, k, alt))[k] > payoff(game, _insert(opp, k, strat_index))[k]
               for opp in _opponent_ranges(game, k)):
            return True, alt
    return False, None


def iterated_dominance(game: FiniteGame) -> tuple[FiniteGame, list[Elimination]]:
    """Repeatedly remove strictly dominated strategies.

    Returns the reduced game plus the elimination log.  For strict dominance
    the surviving strategy sets do not depend on removal order.
    """
    active = [list(range(len(s))) for s in game.strategies]
    log: list[Elimination] = []
    rnd = 0
    while True:
        rnd += 1
        removal = _find_dominated(game, active)
        if removal is None:
            break
        k, pos, dominator = removal
        removed_idx = active[k].pop(pos)
        log.append(Elimination(round=rnd, player=k,
                               strategy=game.strategies[k][removed_idx],
                               dominator=game.strategies[k][dominator]))
    reduced = _subgame(game, active)
    return reduced, log


def _find_dominated(game: FiniteGame, active: list[list[int]]):
    """First (player, position, dominator index) strictly dominated within the
    active sub-game, or None."""
    tensor = game.payoff_tensor()
    for k in range(game.num_players):
        if len(active[k]) <= 1:
            continue
        opp_sets = [active[j] for j in range(game.num_players) if j != k]
        for pos, idx in enumerate(active[k]):
            for alt in active[k]:
                if alt == idx:
                    continue
                if all(tensor[_insert(opp, k, alt)][k] > tensor[_insert(opp, k, idx)][k]
                       for opp in itertools.product(*opp_sets)):
                    return k, pos, alt
    return None


def _subgame(game: FiniteGame, active: list[list[int]]) -> FiniteGame:
    tensor = game.payoff_tensor()
    for k, keep in enumerate(active):
        tensor = np.take(tensor, keep, axis=k)
    strategies = tuple(tuple(game.strategies[k][i] for i in keep)
                       for k, keep in enumerate(active))
    return FiniteGame(strategies=strategies, payoffs=tensor)


def best_responses_finite(game: FiniteGame, k: int, opp_profile: Sequence[int]) -> set[int]:
    """All utility-maximizing strategy indices of player k against fixed
    opponent indices (ties kept)."""
    opp = tuple(opp_profile)
    if len(opp) != game.num_players - 1:
        raise IndexError(f"opponent profile needs {game.num_players - 1} entries")
    values = [payoff(game, _insert(opp, k, i))[k] for i in range(len(game.strategies[k]))]
    top = max(values)
    return {i for i, v in enumerate(values) if v == top}


def pure_nash(game: FiniteGame) -> set[tuple[int, ...]]:
    """All joint index profiles where every player plays a best response."""
    result = set()
    for joint in game.joint_indices():
        if all(joint[k] in best_responses_finite(game, k, joint[:k] + joint[k + 1:])
               for k in range(game.num_players)):
            result.add(joint)
    return result


def is_correlated_equilibrium(game: FiniteGame, dist: JointDistribution,
                              tol: float = 1e-9) -> tuple[bool, float]:
    """Check the obedience inequalities of a recommendation distribution.

    For every player k and every pair (recommended, alternative) of its
    strategies, the expected gain of obeying, weighted by the distribution,
    must be >= -tol.  Returns (holds, worst slack).
    """
    q = dist.as_array()
    shape = tuple(len(s) for s in game.strategies)
    if q.shape != shape:
        raise ValueError(f"distribution shape {q.shape} != game shape {shape}")
    worst = math.inf
    for k in range(game.num_players):
        n_k = len(game.strategies[k])
        for rec in range(n_k):
            for alt in range(n_k):
                if alt == rec:
                    continue
                slack = sum(
                    float(q[_insert(opp, k, rec)])
                    * (payoff(game, _insert(opp, k, rec))[k]
                       - payoff(game, _insert(opp, k, alt))[k])
                    for opp in _opponent_ranges(game, k)
                )
                worst = min(worst, slack)
    if math.isinf(worst):
        worst = 0.0  # single-strategy players: nothing to deviate to
    return worst >= -tol, worst
