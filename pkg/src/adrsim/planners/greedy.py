"""Greedy incremental-cost planner.

Each decision prices every unvisited debris with the full rendezvous
sequence and takes the cheapest one under a weighted delta-v/time cost.
No lookahead: the planner that a learned or search strategy has to beat.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..environment import Action, MissionState, Scenario
from ..errors import ContractViolationError, DomainError
from ..orbital import Constants, DEFAULT_CONSTANTS, TransferConfig
from .episodes import EpisodeResult, run_episode

__all__ = ["GreedyConfig", "greedy_select", "greedy_episode"]


@dataclass(frozen=True)
class GreedyConfig:
    """Cost weights: cost(d) = alpha * delta_v(d) + beta * duration(d).

    The default (1, 0) ranks purely by delta-v.
    """

    alpha: float = 1.0
    beta: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha < 0.0 or self.beta < 0.0:
            raise DomainError(f"weights must be non-negative, got ({self.alpha}, {self.beta})")
        if self.alpha + self.beta <= 0.0:
            raise DomainError("at least one of alpha, beta must be positive")


def greedy_select(
    state: MissionState,
    scenario: Scenario,
    cfg: GreedyConfig = GreedyConfig(),
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
) -> Action:
    """Pick the cheapest affordable unvisited debris, else refuel.

    Affordable means the full transfer fits both the remaining delta-v
    and the mission clock.  When nothing is affordable the planner
    refuels if that is legal and itself affordable; failing that it
    returns the cheapest debris anyway and accepts the resulting
    termination.  Ties go to the lowest debris index.

    Raises:
        ContractViolationError: when called on a terminal state.
    """
    if state.done:
        raise ContractViolationError("no legal actions: episode already ended")
    cheapest: tuple[float, int] | None = None
    cheapest_affordable: tuple[float, int] | None = None
    budget = state.remaining_delta_v
    deadline = scenario.config.max_duration - state.elapsed_time
    for index, visited in enumerate(state.visited):
        if visited:
            continue
        plan = scenario.transfer_plan(
            state.chaser, scenario.debris[index], transfer_cfg, constants, index
        )
        cost = cfg.alpha * plan.total_delta_v + cfg.beta * plan.total_duration
        if cheapest is None or cost < cheapest[0]:
            cheapest = (cost, index)
        if plan.total_delta_v <= budget and plan.total_duration <= deadline:
            if cheapest_affordable is None or cost < cheapest_affordable[0]:
                cheapest_affordable = (cost, index)
    if cheapest is None:
        raise ContractViolationError("no unvisited debris in a non-terminal state")
    if cheapest_affordable is not None:
        return Action.visit(cheapest_affordable[1])
    if state.visits_this_episode >= 1:
        plan = scenario.transfer_plan(state.chaser, scenario.station, transfer_cfg, constants)
        if plan.total_delta_v <= budget and plan.total_duration <= deadline:
            return Action.refuel()
    return Action.visit(cheapest[1])


def greedy_episode(
    scenario: Scenario,
    cfg: GreedyConfig = GreedyConfig(),
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
    case_id: int = 0,
    iteration_id: int = 0,
) -> EpisodeResult:
    """Run one episode under greedy selection; deterministic per scenario."""

    def select(state: MissionState, scn: Scenario) -> Action:
        return greedy_select(state, scn, cfg, transfer_cfg, constants)

    return run_episode(
        scenario,
        select,
        planner_id="greedy",
        case_id=case_id,
        iteration_id=iteration_id,
        transfer_cfg=transfer_cfg,
        constants=constants,
    )
