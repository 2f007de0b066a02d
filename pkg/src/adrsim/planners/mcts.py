"""Monte Carlo tree search over mission states.

A fresh tree is built for every decision: UCB selection, one expansion
per iteration, seeded uniform-random rollouts, and backpropagation of
the cumulative-from-root return.  The returned action is the root child
with the highest visit count (mean value selectable by config).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ..environment import (
    Action,
    MissionState,
    Scenario,
    _transition,
    splitmix64_mix,
)
from ..errors import ContractViolationError, DomainError
from ..orbital import Constants, DEFAULT_CONSTANTS, TransferConfig
from .episodes import EpisodeResult, run_episode

__all__ = ["MctsConfig", "MctsNode", "ucb_score", "mcts_select_action", "mcts_episode"]

_SELECTION_MODES = ("visit_count", "mean_value")


@dataclass(frozen=True)
class MctsConfig:
    """Search-budget and exploration parameters.

    Attributes:
        exploration_c: UCB exploration constant.
        simulations_per_step: tree iterations per decision.
        rollout_depth: total simulated horizon per iteration, counted
            in steps from the root (tree edges plus rollout steps), so
            every backed-up return lies in [-1, rollout_depth].
        rollout_seed: 64-bit seed of the rollout stream.
        selection: how the final root action is chosen, "visit_count"
            (default) or "mean_value".
    """

    exploration_c: float = 1.5
    simulations_per_step: int = 200
    rollout_depth: int = 15
    rollout_seed: int = 0
    selection: str = "visit_count"

    def __post_init__(self) -> None:
        if self.exploration_c <= 0.0:
            raise DomainError(f"exploration_c must be positive, got {self.exploration_c}")
        if self.simulations_per_step < 1:
            raise DomainError(
                f"simulations_per_step must be at least 1, got {self.simulations_per_step}"
            )
        if self.rollout_depth < 1:
            raise DomainError(f"rollout_depth must be at least 1, got {self.rollout_depth}")
        if not 0 <= self.rollout_seed < 2**64:
            raise DomainError(
                f"rollout_seed must be an unsigned 64-bit integer, got {self.rollout_seed}"
            )
        if self.selection not in _SELECTION_MODES:
            raise DomainError(
                f"selection must be one of {_SELECTION_MODES}, got {self.selection!r}"
            )


class MctsNode:
    """One search-tree node.

    ``value_sum / visit_count`` is the mean cumulative-from-root return
    of iterations that passed through this node; ``edge_reward`` is the
    immediate reward of the step that created it.
    """

    __slots__ = ("state", "edge_reward", "children", "untried", "visit_count", "value_sum")

    def __init__(self, state: MissionState, edge_reward: int = 0) -> None:
        self.state = state
        self.edge_reward = edge_reward
        self.children: dict[int, MctsNode] = {}
        self.untried: list[int] = []
        self.visit_count = 0
        self.value_sum = 0.0

    @property
    def mean_value(self) -> float:
        return self.value_sum / self.visit_count


def ucb_score(q_i: float, n_i: int, n_parent: int, c: float) -> float:
    """Upper confidence bound Q_i + c * sqrt(ln(N) / n_i).

    Unvisited children score +infinity so each is expanded before any
    sibling is revisited.
    """
    if n_parent < 1:
        raise DomainError(f"n_parent must be at least 1, got {n_parent}")
    if n_i < 0:
        raise DomainError(f"n_i must be non-negative, got {n_i}")
    if n_i == 0:
        return math.inf
    return q_i + c * math.sqrt(math.log(n_parent) / n_i)


def _legal_indices(state: MissionState, n_debris: int) -> list[int]:
    legal = [i for i, visited in enumerate(state.visited) if not visited]
    if state.visits_this_episode >= 1:
        legal.append(n_debris)
    return legal


def _best_child(node: MctsNode, c: float) -> MctsNode:
    """Child maximizing UCB; ties go to the lowest action index."""
    best: MctsNode | None = None
    best_score = -math.inf
    for action in sorted(node.children):
        child = node.children[action]
        score = ucb_score(child.mean_value, child.visit_count, node.visit_count, c)
        if score > best_score:
            best = child
            best_score = score
    assert best is not None
    return best


def _search(
    state: MissionState,
    scenario: Scenario,
    cfg: MctsConfig,
    transfer_cfg: TransferConfig,
    constants: Constants,
) -> MctsNode:
    """Build the search tree for one decision and return its root."""
    n = scenario.n_debris
    rng = np.random.Generator(np.random.PCG64(cfg.rollout_seed))
    root = MctsNode(state)
    root.untried = _legal_indices(state, n)
    depth_limit = cfg.rollout_depth

    for _ in range(cfg.simulations_per_step):
        node = root
        path = [root]
        value = 0
        depth = 0
        while (
            depth < depth_limit
            and not node.state.done
            and not node.untried
            and node.children
        ):
            node = _best_child(node, cfg.exploration_c)
            value += node.edge_reward
            depth += 1
            path.append(node)
        if depth < depth_limit and not node.state.done and node.untried:
            action_index = node.untried.pop(0)
            child_state, reward, _ = _transition(
                node.state, scenario, Action.from_index(action_index, n), transfer_cfg, constants
            )
            child = MctsNode(child_state, reward)
            if not child_state.done:
                child.untried = _legal_indices(child_state, n)
            node.children[action_index] = child
            node = child
            value += reward
            depth += 1
            path.append(node)
        sim_state = node.state
        while depth < depth_limit and not sim_state.done:
            legal = _legal_indices(sim_state, n)
            chosen = legal[rng.integers(0, len(legal))]
            sim_state, reward, _ = _transition(
                sim_state, scenario, Action.from_index(chosen, n), transfer_cfg, constants
            )
            value += reward
            depth += 1
        for visited_node in path:
            visited_node.visit_count += 1
            visited_node.value_sum += value
    return root


def mcts_select_action(
    state: MissionState,
    scenario: Scenario,
    cfg: MctsConfig = MctsConfig(),
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
) -> Action:
    """Choose one action by building a search tree from ``state``.

    Each of ``cfg.simulations_per_step`` iterations descends the tree
    by UCB, expands at most one new child (untried actions taken in
    ascending index order), completes the horizon with uniform-random
    legal actions from a generator seeded by ``cfg.rollout_seed``, and
    adds the cumulative return to every node on the path.  Rollouts
    run on value-type state snapshots; the live episode state is never
    touched.  The call is a pure function of (state, scenario, cfg).

    Raises:
        ContractViolationError: when called on a terminal state.
    """
    if state.done:
        raise ContractViolationError("no legal actions: episode already ended")
    n = scenario.n_debris
    root_legal = _legal_indices(state, n)
    if not root_legal:
        raise ContractViolationError("no legal actions available")
    if len(root_legal) == 1:
        return Action.from_index(root_legal[0], n)

    root = _search(state, scenario, cfg, transfer_cfg, constants)
    by_mean = cfg.selection == "mean_value"
    best_action: int | None = None
    best_key = -math.inf
    for action in sorted(root.children):
        child = root.children[action]
        key = child.mean_value if by_mean else float(child.visit_count)
        if key > best_key:
            best_action = action
            best_key = key
    assert best_action is not None
    return Action.from_index(best_action, n)


def mcts_episode(
    scenario: Scenario,
    cfg: MctsConfig = MctsConfig(),
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
    case_id: int = 0,
    iteration_id: int = 0,
) -> EpisodeResult:
    """Run one episode selecting every action with a fresh search tree.

    Decision k uses rollout seed splitmix64_mix(cfg.rollout_seed XOR k)
    so rollouts differ across the episode while the whole trajectory
    stays a deterministic function of (scenario, cfg).
    """
    decision = 0

    def select(state: MissionState, scn: Scenario) -> Action:
        nonlocal decision
        seed_k = splitmix64_mix(cfg.rollout_seed ^ decision)
        decision += 1
        return mcts_select_action(
            state, scn, replace(cfg, rollout_seed=seed_k), transfer_cfg, constants
        )

    return run_episode(
        scenario,
        select,
        planner_id="mcts",
        case_id=case_id,
        iteration_id=iteration_id,
        transfer_cfg=transfer_cfg,
        constants=constants,
    )
