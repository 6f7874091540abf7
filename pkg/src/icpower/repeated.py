"""Repeated play of the power game under a grim-trigger arrangement.

Players are meant to hold a cooperative profile (the social optimum); any
defection is met by permanent reversion to the static equilibrium.  The
module evaluates discounted utility streams, one-shot deviation values, and
the smallest discount factor that makes cooperation self-enforcing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .continuous import best_response_ee, ee_utility
from .network import NetworkModel, PowerProfile

__all__ = [
    "TriggerPolicy",
    "DiscountSpec",
    "CooperationNotRationalError",
    "discounted_utility",
    "deviation_payoff",
    "min_discount",
    "min_discount_from_utilities",
    "simulate_trigger",
    "trigger_csv_rows",
]


class CooperationNotRationalError(ValueError):
    """Cooperation pays no better than punishment; trigger logic is vacuous."""


@dataclass(frozen=True)
class TriggerPolicy:
    """The two profiles of a grim trigger: hold the first, revert to the
    second forever after any defection."""

    cooperate_profile: PowerProfile
    punish_profile: PowerProfile

    def __post_init__(self) -> None:
        if len(self.cooperate_profile) != len(self.punish_profile):
            raise ValueError("profiles must have the same number of players")

    def check_against(self, model: NetworkModel) -> None:
        for name, prof in (("cooperate_profile", self.cooperate_profile),
                           ("punish_profile", self.punish_profile)):
            if len(prof) != model.num_players:
                raise ValueError(f"{name} has {len(prof)} entries for "
                                 f"{model.num_players} players")
            for i, s in enumerate(prof.powers):
                if s > model.power_cap:
                    raise ValueError(f"{name}[{i}] exceeds power_cap")


@dataclass(frozen=True)
class DiscountSpec:
    """Geometric discounting: factor delta, horizon N (None = infinite)."""

    delta: float
    horizon: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must be in [0, 1]")
        if self.horizon is not None and not (
                isinstance(self.horizon, int) and self.horizon >= 0):
            raise ValueError("horizon must be None or an integer >= 0")


def discounted_utility(stage_utilities: Sequence[float], spec: DiscountSpec) -> float:
    """Discounted value of a utility stream.

    Finite horizon N: the plain sum over delta^n * u_n for the N + 1 given
    stages.  Infinite horizon: the stream's last entry is taken to repeat
    forever and the normalized value (1 - delta) * sum(delta^n * u_n) is
    evaluated in closed form, so a constant stream is worth its stage value.
    """
    seq = [float(u) for u in stage_utilities]
    if not seq:
        raise ValueError("stage_utilities must be non-empty")
    d = spec.delta
    if spec.horizon is not None:
        if len(seq) != spec.horizon + 1:
            raise ValueError(
                f"horizon {spec.horizon} needs {spec.horizon + 1} stage "
                f"utilities, got {len(seq)}"
            )
        return sum(d ** n * u for n, u in enumerate(seq))
    if d == 1.0:
        raise ValueError("delta must be < 1 for an infinite horizon")
    if len(seq) == 1:
        return seq[0]
    head = sum(d ** n * u for n, u in enumerate(seq[:-1]))
    return (1.0 - d) * head + d ** (len(seq) - 1) * seq[-1]


def _deviation_profile(model: NetworkModel, policy: TriggerPolicy, k: int) -> tuple[float, ...]:
    coop = policy.cooperate_profile.powers
    dev = list(coop)
    dev[k] = best_response_ee(model, coop, k)
    return tuple(dev)


def deviation_payoff(model: NetworkModel, policy: TriggerPolicy, k: int) -> float:
    """Best one-shot deviation value: player k's utility when it best-responds
    while the others still cooperate."""
    policy.check_against(model)
    return ee_utility(model, _deviation_profile(model, policy, k), k)


def min_discount_from_utilities(u_dev: Sequence[float], u_coop: Sequence[float],
                                u_punish: Sequence[float]) -> float:
    """Smallest delta at which no player gains from a one-shot deviation.

    Cooperation holds iff (1 - delta) * u_dev_k + delta * u_punish_k <=
    u_coop_k for every k, i.e. delta >= (u_dev_k - u_coop_k) /
    (u_dev_k - u_punish_k); the binding player sets the threshold.
    """
    if not len(u_dev) == len(u_coop) == len(u_punish):
        raise ValueError("utility vectors differ in length")
    threshold = 0.0
    for k, (dev, coop, punish) in enumerate(zip(u_dev, u_coop, u_punish)):
        if not coop > punish:
            raise CooperationNotRationalError(
                f"player {k}: cooperation utility {coop} does not beat "
                f"punishment utility {punish}"
            )
        if dev > coop:
            threshold = max(threshold, (dev - coop) / (dev - punish))
    return threshold


def min_discount(model: NetworkModel, policy: TriggerPolicy) -> float:
    """Minimum discount factor sustaining the policy's cooperative profile."""
    policy.check_against(model)
    ks = range(model.num_players)
    u_coop = [ee_utility(model, policy.cooperate_profile.powers, k) for k in ks]
    u_punish = [ee_utility(model, policy.punish_profile.powers, k) for k in ks]
    u_dev = [deviation_payoff(model, policy, k) for k in ks]
    return min_discount_from_utilities(u_dev, u_coop, u_punish)


def _stage_profiles(model: NetworkModel, policy: TriggerPolicy,
                    deviant: Optional[int], deviate_at: int):
    """The trigger path as (profile per distinct phase): cooperation until
    ``deviate_at``, the deviation profile there, punishment ever after."""
    coop = policy.cooperate_profile.powers
    if deviant is None:
        return [coop]
    if not 0 <= deviant < model.num_players:
        raise IndexError(f"deviant index {deviant} out of range")
    if deviate_at < 0:
        raise ValueError("deviate_at must be >= 0")
    dev = _deviation_profile(model, policy, deviant)
    punish = policy.punish_profile.powers
    return [coop] * deviate_at + [dev, punish]


def _profile_at(path: list, n: int) -> tuple[float, ...]:
    return path[n] if n < len(path) else path[-1]


def simulate_trigger(model: NetworkModel, policy: TriggerPolicy, spec: DiscountSpec,
                     deviant: Optional[int] = None, deviate_at: int = 0,
                     ) -> tuple[float, ...]:
    """Per-player discounted utilities along the trigger path.

    With no deviant the path is constant cooperation; otherwise the deviant
    one-shot best-responds at stage ``deviate_at`` and everyone reverts to
    the punishment profile from the next stage on.
    """
    policy.check_against(model)
    path = _stage_profiles(model, policy, deviant, deviate_at)
    ks = range(model.num_players)
    if spec.horizon is not None:
        stages = [_profile_at(path, n) for n in range(spec.horizon + 1)]
    else:
        stages = path
    streams = [[ee_utility(model, prof, k) for prof in stages] for k in ks]
    return tuple(discounted_utility(stream, spec) for stream in streams)


def trigger_csv_rows(model: NetworkModel, policy: TriggerPolicy, spec: DiscountSpec,
                     deviant: Optional[int] = None, deviate_at: int = 0,
                     stages: int = 20) -> tuple[list[str], list[list]]:
    """Stage-by-stage trigger trace with running discounted sums."""
    policy.check_against(model)
    path = _stage_profiles(model, policy, deviant, deviate_at)
    ks = range(model.num_players)
    header = (["stage"] + [f"s_{k + 1}" for k in ks] + [f"u_{k + 1}" for k in ks]
              + [f"disc_u_{k + 1}" for k in ks])
    running = [0.0] * model.num_players
    rows = []
    for n in range(stages):
        prof = _profile_at(path, n)
        stage_u = [ee_utility(model, prof, k) for k in ks]
        for k in ks:
            running[k] += spec.delta ** n * stage_u[k]
        rows.append([n, *prof, *stage_u, *running])
    return header, rows
