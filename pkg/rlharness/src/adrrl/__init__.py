"""Reinforcement-learning harness for the orbital removal simulator.

Binds the simulator's episodic environment to a step/reset interface,
trains a masked-action PPO policy on it, and exports weights in the
simulator's portable format so trained policies run through the same
inference path as the benchmark harness.
"""

from .bindings import BoundEnv
from .ppo import (
    ArchitectureMismatchError,
    DivergenceError,
    MaskedPolicy,
    TrainConfig,
    export_weights,
    masked_logits,
    policy_from_weights,
)
from .train import (
    TrainResult,
    UpdateRecord,
    evaluate,
    greedy_baseline,
    results_summary,
    train,
)

__all__ = [
    "BoundEnv",
    "TrainConfig",
    "MaskedPolicy",
    "masked_logits",
    "export_weights",
    "policy_from_weights",
    "ArchitectureMismatchError",
    "DivergenceError",
    "train",
    "evaluate",
    "greedy_baseline",
    "results_summary",
    "TrainResult",
    "UpdateRecord",
]

__version__ = "0.1.0"
