"""Deterministic mission simulator for multi-target debris removal.

Circular-orbit maneuver math, an episodic visit/refuel environment,
three sequencing planners (greedy, Monte Carlo tree search, learned
policy inference), and a benchmark harness with seeded campaigns.
"""

from .bench import (
    CampaignConfig,
    OUTPUT_DIR_ENV_VAR,
    PLANNER_IDS,
    RESULTS_HEADER,
    read_results,
    run_campaign,
    summarize,
    write_results,
)
from .environment import (
    Action,
    ActionKind,
    DoneReason,
    MissionState,
    OBSERVATION_LAYOUT_VERSION,
    Scenario,
    ScenarioConfig,
    SplitMix64,
    StepOutcome,
    action_mask,
    generate_scenario,
    load_scenario,
    observation_length,
    observe,
    reset,
    save_scenario,
    step,
)
from .errors import ContractViolationError, DegenerateGeometryError, DomainError
from .orbital import (
    Burn,
    BurnLabel,
    Constants,
    DEFAULT_CONSTANTS,
    OrbitalElements,
    TransferConfig,
    TransferPlan,
    circular_velocity,
    coelliptic_sequence,
    hohmann,
    orbital_period,
    phasing_wait,
    plane_angle,
    plane_change_dv,
)
from .planners import (
    EpisodeResult,
    GreedyConfig,
    MctsConfig,
    MctsNode,
    PolicyLayer,
    PolicyWeights,
    greedy_episode,
    greedy_select,
    load_policy_weights,
    mcts_episode,
    mcts_select_action,
    policy_episode,
    policy_forward,
    policy_select,
    random_policy_weights,
    run_episode,
    save_policy_weights,
    ucb_score,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "DomainError",
    "DegenerateGeometryError",
    "ContractViolationError",
    # orbital core
    "Constants",
    "DEFAULT_CONSTANTS",
    "OrbitalElements",
    "BurnLabel",
    "Burn",
    "TransferPlan",
    "TransferConfig",
    "circular_velocity",
    "orbital_period",
    "hohmann",
    "plane_change_dv",
    "plane_angle",
    "phasing_wait",
    "coelliptic_sequence",
    # environment
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
    # planners
    "EpisodeResult",
    "run_episode",
    "GreedyConfig",
    "greedy_select",
    "greedy_episode",
    "MctsConfig",
    "MctsNode",
    "ucb_score",
    "mcts_select_action",
    "mcts_episode",
    "PolicyLayer",
    "PolicyWeights",
    "policy_forward",
    "policy_select",
    "policy_episode",
    "save_policy_weights",
    "load_policy_weights",
    "random_policy_weights",
    # bench
    "PLANNER_IDS",
    "RESULTS_HEADER",
    "OUTPUT_DIR_ENV_VAR",
    "CampaignConfig",
    "run_campaign",
    "write_results",
    "read_results",
    "summarize",
]
