"""Shared episode runner and per-episode metrics record."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from ..environment import Action, MissionState, Scenario, reset, step
from ..errors import DomainError
from ..orbital import Constants, DEFAULT_CONSTANTS, TransferConfig

__all__ = ["EpisodeResult", "run_episode"]

SelectFn = Callable[[MissionState, Scenario], Action]


@dataclass(frozen=True)
class EpisodeResult:
    """Metrics of one completed episode.

    Attributes:
        case_id: scenario case index within a campaign.
        iteration_id: repeat index within the case.
        planner_id: short planner name ("greedy", "mcts", "policy").
        debris_visited: successful rendezvous count.
        total_delta_v_spent: delta-v actually burned, m/s, including
            refuel transfers.
        refuel_count: refuels performed.
        elapsed_mission_time: final mission clock, s.
        planner_wall_clock: wall time spent inside planner decision
            calls, s; environment stepping is excluded.
        done_reason: terminal reason string.
    """

    case_id: int
    iteration_id: int
    planner_id: str
    debris_visited: int
    total_delta_v_spent: float
    refuel_count: int
    elapsed_mission_time: float
    planner_wall_clock: float
    done_reason: str

    def __post_init__(self) -> None:
        numeric = (
            self.case_id,
            self.iteration_id,
            self.debris_visited,
            self.total_delta_v_spent,
            self.refuel_count,
            self.elapsed_mission_time,
            self.planner_wall_clock,
        )
        if any(value < 0 for value in numeric):
            raise DomainError(f"episode metrics must be non-negative, got {self}")


def run_episode(
    scenario: Scenario,
    select_action: SelectFn,
    planner_id: str,
    case_id: int = 0,
    iteration_id: int = 0,
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
) -> EpisodeResult:
    """Run one reset/step loop to termination and collect metrics.

    ``select_action`` is called once per decision on the live state;
    only the time spent inside those calls counts toward
    ``planner_wall_clock``.
    """
    state, _ = reset(scenario)
    delta_v_spent = 0.0
    wall_clock = 0.0
    while not state.done:
        started = time.perf_counter()
        action = select_action(state, scenario)
        wall_clock += time.perf_counter() - started
        state, outcome = step(state, scenario, action, transfer_cfg, constants)
        delta_v_spent += outcome.info["transfer_delta_v"]
    return EpisodeResult(
        case_id=case_id,
        iteration_id=iteration_id,
        planner_id=planner_id,
        debris_visited=state.visits_this_episode,
        total_delta_v_spent=delta_v_spent,
        refuel_count=state.refuel_count,
        elapsed_mission_time=state.elapsed_time,
        planner_wall_clock=wall_clock,
        done_reason=state.done_reason.value,
    )
