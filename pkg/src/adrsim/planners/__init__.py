"""Sequencing planners over the mission environment.

Three interchangeable strategies: greedy incremental-cost selection,
Monte Carlo tree search with UCB, and argmax inference over exported
policy weights, plus the shared episode runner that times them.
"""

from .episodes import EpisodeResult, run_episode
from .greedy import GreedyConfig, greedy_episode, greedy_select
from .mcts import MctsConfig, MctsNode, mcts_episode, mcts_select_action, ucb_score
from .policy import (
    PolicyLayer,
    PolicyWeights,
    load_policy_weights,
    policy_episode,
    policy_forward,
    policy_select,
    random_policy_weights,
    save_policy_weights,
)

__all__ = [
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
]
