"""Episodic mission environment for multi-target debris removal.

Scenario generation, the mission state machine (visit / refuel actions,
rewards in {-1, 0, +1}, termination), flat observation vectors with a
fixed layout, action masking, and bit-faithful scenario files.

The API is functional: ``step`` consumes a frozen ``MissionState`` and
returns a new one, so planners can branch search trees off any state
without copying or undo logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np

from .errors import ContractViolationError, DomainError
from .orbital import (
    Constants,
    DEFAULT_CONSTANTS,
    OrbitalElements,
    TransferConfig,
    TransferPlan,
    coelliptic_sequence,
)
from .serialize import dump_17g, load

__all__ = [
    "OBSERVATION_LAYOUT_VERSION",
    "ScenarioConfig",
    "Scenario",
    "MissionState",
    "ActionKind",
    "Action",
    "DoneReason",
    "StepOutcome",
    "SplitMix64",
    "generate_scenario",
    "reset",
    "step",
    "observe",
    "action_mask",
    "observation_length",
    "save_scenario",
    "load_scenario",
]

_TWO_PI = 2.0 * math.pi

# Version tag written into exported policy-weight files; bump on any
# change to the observation layout or normalization below.
OBSERVATION_LAYOUT_VERSION = 1


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of scenario sampling and mission limits.

    Attributes:
        n_debris: number of debris targets per episode.
        altitude_band: (low, high) debris altitude above the surface, m.
        inclination_band: (low, high) debris inclination, rad.
        raan_band: (low, high) debris RAAN, rad; values are folded into
            [0, 2*pi) after sampling, so the band may straddle zero.
        station_altitude: refueling-station altitude, m.
        station_inclination: refueling-station inclination, rad.
        max_delta_v: chaser delta-v budget, m/s.
        max_duration: mission clock limit, s.
        seed: 64-bit unsigned scenario seed.
    """

    n_debris: int = 50
    altitude_band: tuple[float, float] = (700e3, 800e3)
    inclination_band: tuple[float, float] = (
        math.radians(95.0),
        math.radians(97.0),
    )
    raan_band: tuple[float, float] = (math.radians(-1.0), math.radians(1.0))
    station_altitude: float = 700e3
    station_inclination: float = math.radians(96.0)
    max_delta_v: float = 3000.0
    max_duration: float = 604800.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_debris < 1:
            raise DomainError(f"n_debris must be at least 1, got {self.n_debris}")
        for name in ("altitude_band", "inclination_band", "raan_band"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise DomainError(f"{name} must satisfy low < high, got ({lo}, {hi})")
        if self.altitude_band[0] <= 0.0:
            raise DomainError(
                f"altitude_band must sit above the surface, got {self.altitude_band}"
            )
        if self.max_delta_v <= 0.0:
            raise DomainError(f"max_delta_v must be positive, got {self.max_delta_v}")
        if self.max_duration <= 0.0:
            raise DomainError(f"max_duration must be positive, got {self.max_duration}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


class SplitMix64:
    """Deterministic 64-bit generator used for scenario sampling.

    The splitmix64 finalizer over a Weyl sequence: state advances by
    0x9E3779B97F4A7C15 per draw and each output is the mix

        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        z = z ^ (z >> 31)

    all modulo 2^64.  Doubles take the top 53 bits, giving uniform
    values in [0, 1).  Chosen for trivial cross-language portability.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self._state = seed & self._MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return (z ^ (z >> 31)) & self._MASK

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.next_double()


def splitmix64_mix(value: int) -> int:
    """One application of the splitmix64 output mix to ``value``."""
    mask = (1 << 64) - 1
    z = (value + 0x9E3779B97F4A7C15) & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return (z ^ (z >> 31)) & mask


@dataclass(frozen=True)
class Scenario:
    """One sampled episode: debris set, station orbit, and limits.

    Immutable after generation; safe to share read-only between
    concurrently running episodes.
    """

    debris: tuple[OrbitalElements, ...]
    station: OrbitalElements
    config: ScenarioConfig

    @property
    def n_debris(self) -> int:
        return len(self.debris)

    @cached_property
    def _static_debris_block(self) -> np.ndarray:
        """Normalized six-element block per debris; constant per episode."""
        block = np.empty(6 * self.n_debris, dtype=np.float64)
        for k, elements in enumerate(self.debris):
            block[6 * k : 6 * k + 6] = _normalize_elements(elements, self.config)
        block.flags.writeable = False
        return block

    @cached_property
    def _plan_cache(self) -> dict[tuple, TransferPlan]:
        return {}

    def transfer_plan(
        self,
        chaser: OrbitalElements,
        target: OrbitalElements,
        cfg: TransferConfig,
        constants: Constants = DEFAULT_CONSTANTS,
        target_index: int | None = None,
    ) -> TransferPlan:
        """Transfer plan between two of the scenario's orbit nodes.

        Within an episode the chaser only ever sits on the station
        orbit or a previously visited debris orbit, so plans are pure
        functions of the (chaser, target) node pair and are cached.
        """
        key = (chaser, target, cfg, constants)
        plan = self._plan_cache.get(key)
        if plan is None:
            plan = coelliptic_sequence(
                chaser, target, cfg, target_index=target_index, constants=constants
            )
            self._plan_cache[key] = plan
        return plan


class DoneReason(Enum):
    """Why an episode is (or is not yet) finished."""

    RUNNING = "Running"
    ALL_VISITED = "AllVisited"
    FUEL_EXHAUSTED = "FuelExhausted"
    TIME_EXHAUSTED = "TimeExhausted"
    INVALID_ACTION = "InvalidAction"


@dataclass(frozen=True)
class MissionState:
    """Snapshot of one episode between decisions.

    Attributes:
        chaser: current chaser orbit.
        visited: per-debris visited flags.
        remaining_delta_v: unspent budget, m/s.
        elapsed_time: mission clock, s.
        visits_this_episode: count of true entries in ``visited``.
        refuel_count: refuels performed so far.
        done: terminal flag.
        done_reason: RUNNING until terminal.
    """

    chaser: OrbitalElements
    visited: tuple[bool, ...]
    remaining_delta_v: float
    elapsed_time: float
    visits_this_episode: int = 0
    refuel_count: int = 0
    done: bool = False
    done_reason: DoneReason = DoneReason.RUNNING


class ActionKind(Enum):
    VISIT_DEBRIS = "VisitDebris"
    REFUEL = "Refuel"


@dataclass(frozen=True)
class Action:
    """A planner decision: visit one debris object or refuel.

    Actions also map onto the flat index space 0..n_debris used by the
    mask and the learned policy, with index n_debris meaning refuel.
    """

    kind: ActionKind
    index: int | None = None

    def __post_init__(self) -> None:
        if self.kind is ActionKind.VISIT_DEBRIS:
            if self.index is None or self.index < 0:
                raise DomainError(f"VisitDebris requires a debris index, got {self.index}")
        elif self.index is not None:
            raise DomainError(f"Refuel takes no index, got {self.index}")

    @classmethod
    def visit(cls, index: int) -> "Action":
        return cls(ActionKind.VISIT_DEBRIS, index)

    @classmethod
    def refuel(cls) -> "Action":
        return cls(ActionKind.REFUEL)

    @classmethod
    def from_index(cls, flat_index: int, n_debris: int) -> "Action":
        """Decode a flat action index (n_debris denotes refuel)."""
        if not 0 <= flat_index <= n_debris:
            raise DomainError(
                f"flat action index must be in [0, {n_debris}], got {flat_index}"
            )
        if flat_index == n_debris:
            return cls.refuel()
        return cls.visit(flat_index)

    def to_index(self, n_debris: int) -> int:
        if self.kind is ActionKind.REFUEL:
            return n_debris
        return self.index  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class StepOutcome:
    """Observable result of one environment step."""

    observation: np.ndarray
    reward: int
    done: bool
    info: dict[str, Any]


def observation_length(n_debris: int) -> int:
    """Flat observation length: mask + 2 fractions + 6 chaser + 6 per debris."""
    return n_debris + 2 + 6 + 6 * n_debris


def _normalize_elements(elements: OrbitalElements, cfg: ScenarioConfig) -> np.ndarray:
    """Six-entry normalized block for one set of elements.

    Semi-major axis maps affinely from the altitude band to [0, 1],
    eccentricity passes through raw, inclination divides by pi, and the
    remaining angles divide by 2*pi.
    """
    r_lo = DEFAULT_CONSTANTS.earth_radius + cfg.altitude_band[0]
    r_hi = DEFAULT_CONSTANTS.earth_radius + cfg.altitude_band[1]
    return np.array(
        [
            (elements.semi_major_axis - r_lo) / (r_hi - r_lo),
            elements.eccentricity,
            elements.inclination / math.pi,
            elements.raan / _TWO_PI,
            elements.arg_periapsis / _TWO_PI,
            elements.true_anomaly / _TWO_PI,
        ],
        dtype=np.float64,
    )


def generate_scenario(cfg: ScenarioConfig) -> Scenario:
    """Sample a scenario deterministically from its config seed.

    Draw order is fixed and documented for cross-language replay: for
    each debris index in ascending order, one splitmix64 double each
    for altitude, inclination, RAAN, argument of periapsis, and true
    anomaly.  RAAN draws are folded into [0, 2*pi).  Eccentricity is
    zero throughout; the maneuver model prices transfers between
    circular orbits.

    Args:
        cfg: validated scenario configuration.

    Returns:
        Scenario with ``cfg.n_debris`` debris objects and the station
        orbit implied by the config.
    """
    rng = SplitMix64(cfg.seed)
    earth_radius = DEFAULT_CONSTANTS.earth_radius
    debris = []
    for _ in range(cfg.n_debris):
        altitude = rng.uniform(*cfg.altitude_band)
        inclination = rng.uniform(*cfg.inclination_band)
        raan = rng.uniform(*cfg.raan_band) % _TWO_PI
        arg_periapsis = rng.uniform(0.0, _TWO_PI)
        true_anomaly = rng.uniform(0.0, _TWO_PI)
        debris.append(
            OrbitalElements(
                semi_major_axis=earth_radius + altitude,
                eccentricity=0.0,
                inclination=inclination,
                raan=raan,
                arg_periapsis=arg_periapsis,
                true_anomaly=true_anomaly,
            )
        )
    station = OrbitalElements(
        semi_major_axis=earth_radius + cfg.station_altitude,
        eccentricity=0.0,
        inclination=cfg.station_inclination,
        raan=0.0,
        arg_periapsis=0.0,
        true_anomaly=0.0,
    )
    return Scenario(debris=tuple(debris), station=station, config=cfg)


def reset(scenario: Scenario) -> tuple[MissionState, np.ndarray]:
    """Initial state: chaser docked at the station with full budget."""
    state = MissionState(
        chaser=scenario.station,
        visited=(False,) * scenario.n_debris,
        remaining_delta_v=scenario.config.max_delta_v,
        elapsed_time=0.0,
    )
    return state, observe(state, scenario)


def action_mask(state: MissionState) -> np.ndarray:
    """Legal-action mask of length n_debris + 1 (last entry is refuel).

    A debris entry is legal while unvisited; refuel becomes legal after
    the first successful visit.  Legality here is structural only;
    affordability is resolved by ``step``.
    """
    mask = np.empty(len(state.visited) + 1, dtype=bool)
    mask[:-1] = [not v for v in state.visited]
    mask[-1] = state.visits_this_episode >= 1
    return mask


def observe(state: MissionState, scenario: Scenario) -> np.ndarray:
    """Flat observation vector for ``state``.

    Layout (n = n_debris): indices [0, n) visited mask; [n] remaining
    delta-v fraction; [n+1] remaining time fraction; [n+2, n+8) chaser
    elements normalized; [n+8+6k, n+14+6k) debris k elements
    normalized.  Length 358 for the default 50-debris config.
    """
    cfg = scenario.config
    n = scenario.n_debris
    out = np.empty(observation_length(n), dtype=np.float64)
    out[:n] = state.visited
    out[n] = state.remaining_delta_v / cfg.max_delta_v
    out[n + 1] = (cfg.max_duration - state.elapsed_time) / cfg.max_duration
    out[n + 2 : n + 8] = _normalize_elements(state.chaser, cfg)
    out[n + 8 :] = scenario._static_debris_block
    return out


def _frozen_failure(
    state: MissionState, reason: DoneReason, info: dict[str, Any]
) -> tuple[MissionState, int, dict[str, Any]]:
    info["done_reason"] = reason.value
    return replace(state, done=True, done_reason=reason), -1, info


def _transition(
    state: MissionState,
    scenario: Scenario,
    action: Action,
    transfer_cfg: TransferConfig,
    constants: Constants,
) -> tuple[MissionState, int, dict[str, Any]]:
    """Step semantics without building the observation vector.

    Search planners roll out thousands of hypothetical steps per
    decision and never look at observations, so this core is split out
    of :func:`step`.
    """
    if state.done:
        raise ContractViolationError(
            f"episode already ended with {state.done_reason.value}; reset before stepping"
        )
    cfg = scenario.config
    info: dict[str, Any] = {"transfer_delta_v": 0.0, "transfer_duration": 0.0}

    if action.kind is ActionKind.VISIT_DEBRIS:
        index = action.index
        assert index is not None
        if index >= scenario.n_debris:
            raise DomainError(
                f"debris index {index} outside scenario with {scenario.n_debris} objects"
            )
        if state.visited[index]:
            return _frozen_failure(state, DoneReason.INVALID_ACTION, info)
        plan = scenario.transfer_plan(
            state.chaser, scenario.debris[index], transfer_cfg, constants, index
        )
        if plan.total_delta_v > state.remaining_delta_v:
            return _frozen_failure(state, DoneReason.FUEL_EXHAUSTED, info)
        if state.elapsed_time + plan.total_duration > cfg.max_duration:
            return _frozen_failure(state, DoneReason.TIME_EXHAUSTED, info)
        visited = tuple(
            True if k == index else flag for k, flag in enumerate(state.visited)
        )
        all_visited = all(visited)
        new_state = MissionState(
            chaser=scenario.debris[index],
            visited=visited,
            remaining_delta_v=state.remaining_delta_v - plan.total_delta_v,
            elapsed_time=state.elapsed_time + plan.total_duration,
            visits_this_episode=state.visits_this_episode + 1,
            refuel_count=state.refuel_count,
            done=all_visited,
            done_reason=DoneReason.ALL_VISITED if all_visited else DoneReason.RUNNING,
        )
        info["transfer_delta_v"] = plan.total_delta_v
        info["transfer_duration"] = plan.total_duration
        info["done_reason"] = new_state.done_reason.value
        return new_state, 1, info

    # Refuel.
    if state.visits_this_episode == 0:
        return _frozen_failure(state, DoneReason.INVALID_ACTION, info)
    plan = scenario.transfer_plan(state.chaser, scenario.station, transfer_cfg, constants)
    if plan.total_delta_v > state.remaining_delta_v:
        return _frozen_failure(state, DoneReason.FUEL_EXHAUSTED, info)
    if state.elapsed_time + plan.total_duration > cfg.max_duration:
        return _frozen_failure(state, DoneReason.TIME_EXHAUSTED, info)
    new_state = MissionState(
        chaser=scenario.station,
        visited=state.visited,
        remaining_delta_v=cfg.max_delta_v,
        elapsed_time=state.elapsed_time + plan.total_duration,
        visits_this_episode=state.visits_this_episode,
        refuel_count=state.refuel_count + 1,
        done=False,
        done_reason=DoneReason.RUNNING,
    )
    info["transfer_delta_v"] = plan.total_delta_v
    info["transfer_duration"] = plan.total_duration
    info["done_reason"] = new_state.done_reason.value
    return new_state, 0, info


def step(
    state: MissionState,
    scenario: Scenario,
    action: Action,
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
) -> tuple[MissionState, StepOutcome]:
    """Advance one decision; returns the successor state and outcome.

    Semantics:
      - Visiting an unvisited debris prices the full rendezvous
        sequence.  If it fits the remaining delta-v and mission clock,
        the budget is deducted, the clock advances, the chaser adopts
        the debris orbit, and the reward is +1 (terminal with
        ``AllVisited`` when it was the last one).  If it does not fit,
        the episode ends with reward -1 and the state frozen at its
        pre-action values; insufficient delta-v is reported ahead of
        insufficient time when both fail.
      - Visiting an already-visited debris, or refueling before the
        first visit, ends the episode with ``InvalidAction`` and -1.
      - A legal refuel prices the transfer back to the station; if
        affordable the budget is restored to ``max_delta_v`` after the
        deduction and the reward is 0.

    Args:
        state: current non-terminal state.
        scenario: episode scenario.
        action: decision to apply.
        transfer_cfg: maneuver-sequence shape parameters.
        constants: gravitational environment.

    Returns:
        (new_state, outcome); ``outcome.info`` carries the transfer
        delta-v and duration actually spent plus the done reason.

    Raises:
        ContractViolationError: if ``state`` is already terminal.
        DomainError: on a debris index outside the scenario.
    """
    new_state, reward, info = _transition(state, scenario, action, transfer_cfg, constants)
    outcome = StepOutcome(
        observation=observe(new_state, scenario),
        reward=reward,
        done=new_state.done,
        info=info,
    )
    return new_state, outcome


def _elements_to_doc(elements: OrbitalElements) -> dict[str, float]:
    return {
        "semi_major_axis": elements.semi_major_axis,
        "eccentricity": elements.eccentricity,
        "inclination": elements.inclination,
        "raan": elements.raan,
        "arg_periapsis": elements.arg_periapsis,
        "true_anomaly": elements.true_anomaly,
    }


def _elements_from_doc(doc: dict[str, float]) -> OrbitalElements:
    return OrbitalElements(
        semi_major_axis=doc["semi_major_axis"],
        eccentricity=doc["eccentricity"],
        inclination=doc["inclination"],
        raan=doc["raan"],
        arg_periapsis=doc["arg_periapsis"],
        true_anomaly=doc["true_anomaly"],
    )


def save_scenario(scenario: Scenario, path) -> None:
    """Write a scenario file that round-trips bit-faithfully.

    Floats are serialized with 17 significant digits, enough to
    reproduce every IEEE double exactly on read-back.
    """
    cfg = scenario.config
    document = {
        "format": "scenario",
        "version": 1,
        "config": {
            "n_debris": cfg.n_debris,
            "altitude_band": list(cfg.altitude_band),
            "inclination_band": list(cfg.inclination_band),
            "raan_band": list(cfg.raan_band),
            "station_altitude": cfg.station_altitude,
            "station_inclination": cfg.station_inclination,
            "max_delta_v": cfg.max_delta_v,
            "max_duration": cfg.max_duration,
            "seed": cfg.seed,
        },
        "station": _elements_to_doc(scenario.station),
        "debris": [_elements_to_doc(d) for d in scenario.debris],
    }
    dump_17g(document, path)


def load_scenario(path) -> Scenario:
    """Read a scenario file written by :func:`save_scenario`."""
    document = load(path)
    if document.get("format") != "scenario":
        raise DomainError(f"not a scenario file: format={document.get('format')!r}")
    cfg_doc = document["config"]
    cfg = ScenarioConfig(
        n_debris=cfg_doc["n_debris"],
        altitude_band=tuple(cfg_doc["altitude_band"]),
        inclination_band=tuple(cfg_doc["inclination_band"]),
        raan_band=tuple(cfg_doc["raan_band"]),
        station_altitude=cfg_doc["station_altitude"],
        station_inclination=cfg_doc["station_inclination"],
        max_delta_v=cfg_doc["max_delta_v"],
        max_duration=cfg_doc["max_duration"],
        seed=cfg_doc["seed"],
    )
    return Scenario(
        debris=tuple(_elements_from_doc(d) for d in document["debris"]),
        station=_elements_from_doc(document["station"]),
        config=cfg,
    )
