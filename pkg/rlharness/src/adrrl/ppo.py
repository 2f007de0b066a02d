"""Masked PPO building blocks: config, networks, and weight export.

The policy and value networks are separate MLPs with tanh hidden
layers, trained in double precision so the exported file reproduces the
trainer's forward pass primary-side to well inside the 1e-5 parity
bound.  Invalid actions are excluded by forcing their logits to the
dtype minimum (a numerically safe minus infinity) before the action
distribution is formed, so a masked action has exactly zero sampling
probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from adrsim import PolicyLayer, PolicyWeights, ScenarioConfig

__all__ = [
    "ArchitectureMismatchError",
    "DivergenceError",
    "TrainConfig",
    "MaskedPolicy",
    "masked_logits",
    "export_weights",
    "policy_from_weights",
]


class ArchitectureMismatchError(ValueError):
    """Model layer shapes do not match the declared architecture."""


class DivergenceError(RuntimeError):
    """Training produced a non-finite mean episode reward."""


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of one training run.

    The first block mirrors the published operating point (learning
    rate 5e-6, batch 2048, gamma 0.99, clip 0.2, two 256-unit hidden
    layers); total_steps defaults to the desk-scale budget of 1e6, the
    full 1e7 run is a flag away.  The second block is conventional PPO
    plumbing (GAE, epochs, minibatching, gradient clipping).

    Attributes:
        scenario: scenario template for training episodes; each episode
            draws a fresh seed, so the agent trains on randomized
            debris fields of this shape.
    """

    learning_rate: float = 5e-6
    total_steps: int = 1_000_000
    batch_size: int = 2048
    gamma: float = 0.99
    clip_epsilon: float = 0.2
    hidden_sizes: tuple[int, ...] = (256, 256)
    seed: int = 0
    n_envs: int = 16
    update_epochs: int = 4
    minibatch_size: int = 256
    gae_lambda: float = 0.95
    value_coef: float = 0.5
    entropy_coef: float = 0.0
    max_grad_norm: float = 0.5
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)

    def __post_init__(self) -> None:
        positive = {
            "learning_rate": self.learning_rate,
            "batch_size": self.batch_size,
            "clip_epsilon": self.clip_epsilon,
            "n_envs": self.n_envs,
            "update_epochs": self.update_epochs,
            "minibatch_size": self.minibatch_size,
            "value_coef": self.value_coef,
            "max_grad_norm": self.max_grad_norm,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.total_steps < 0:
            raise ValueError(f"total_steps must be non-negative, got {self.total_steps}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if not 0.0 <= self.gae_lambda <= 1.0:
            raise ValueError(f"gae_lambda must be in [0, 1], got {self.gae_lambda}")
        if self.entropy_coef < 0.0:
            raise ValueError(f"entropy_coef must be non-negative, got {self.entropy_coef}")
        if not self.hidden_sizes or any(h < 1 for h in self.hidden_sizes):
            raise ValueError(f"hidden_sizes must all be positive, got {self.hidden_sizes}")
        if self.batch_size % self.n_envs:
            raise ValueError(
                f"batch_size {self.batch_size} must divide evenly over "
                f"{self.n_envs} envs"
            )
        if self.minibatch_size > self.batch_size:
            raise ValueError(
                f"minibatch_size {self.minibatch_size} exceeds batch_size {self.batch_size}"
            )


def _mlp(input_size: int, hidden_sizes: tuple[int, ...], output_size: int) -> nn.Sequential:
    layers: list[nn.Module] = []
    last = input_size
    for width in hidden_sizes:
        layers.append(nn.Linear(last, width))
        layers.append(nn.Tanh())
        last = width
    layers.append(nn.Linear(last, output_size))
    return nn.Sequential(*layers)


class MaskedPolicy(nn.Module):
    """Separate policy and value MLPs over the flat observation.

    Only the policy net is exported; the value net exists for the
    training baseline.  Both run in double precision.
    """

    def __init__(
        self,
        observation_size: int,
        n_actions: int,
        hidden_sizes: tuple[int, ...] = (256, 256),
    ) -> None:
        super().__init__()
        self.observation_size = observation_size
        self.n_actions = n_actions
        self.hidden_sizes = tuple(hidden_sizes)
        self.policy_net = _mlp(observation_size, self.hidden_sizes, n_actions)
        self.value_net = _mlp(observation_size, self.hidden_sizes, 1)
        self.double()

    def forward(self, observation: torch.Tensor) -> torch.Tensor:
        return self.policy_net(observation)

    def value(self, observation: torch.Tensor) -> torch.Tensor:
        return self.value_net(observation).squeeze(-1)

    def act_greedy(self, observation: torch.Tensor, mask: torch.Tensor) -> int:
        """Evaluation-mode selection: argmax over masked logits.

        Matches the simulator's policy_select on identical inputs (same
        masking, first-maximum tie break).
        """
        with torch.no_grad():
            logits = masked_logits(self.forward(observation), mask)
        return int(torch.argmax(logits).item())


def masked_logits(logits: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    """Force illegal entries to the dtype minimum.

    exp(min - max) underflows to exactly 0.0, so masked actions carry
    zero probability, while finite values keep Categorical's entropy
    free of 0 * inf.
    """
    return logits.masked_fill(~mask.bool(), torch.finfo(logits.dtype).min)


def _policy_linears(policy: MaskedPolicy) -> list[nn.Linear]:
    return [module for module in policy.policy_net if isinstance(module, nn.Linear)]


def export_weights(
    policy: MaskedPolicy,
    observation_size: int | None = None,
    n_actions: int | None = None,
    hidden_sizes: tuple[int, ...] | None = None,
) -> PolicyWeights:
    """Extract the policy net in the simulator's weight schema.

    Any expectation passed as an argument is checked against the actual
    module shapes first, so an architecture drift fails loudly instead
    of producing a weight file nothing can use.

    Raises:
        ArchitectureMismatchError: when the module's layer shapes do not
            match the expectations.
    """
    linears = _policy_linears(policy)
    actual_hidden = tuple(layer.out_features for layer in linears[:-1])
    actual_in = linears[0].in_features
    actual_out = linears[-1].out_features
    if observation_size is not None and actual_in != observation_size:
        raise ArchitectureMismatchError(
            f"policy takes {actual_in} inputs, expected {observation_size}"
        )
    if n_actions is not None and actual_out != n_actions:
        raise ArchitectureMismatchError(
            f"policy emits {actual_out} logits, expected {n_actions}"
        )
    if hidden_sizes is not None and actual_hidden != tuple(hidden_sizes):
        raise ArchitectureMismatchError(
            f"policy hidden sizes {actual_hidden}, expected {tuple(hidden_sizes)}"
        )
    layers = []
    last = len(linears) - 1
    for k, linear in enumerate(linears):
        layers.append(
            PolicyLayer(
                weights=linear.weight.detach().cpu().numpy().astype(np.float64),
                bias=linear.bias.detach().cpu().numpy().astype(np.float64),
                activation="identity" if k == last else "tanh",
            )
        )
    return PolicyWeights(layers=tuple(layers))


def policy_from_weights(weights: PolicyWeights) -> MaskedPolicy:
    """Rebuild a trainer module from exported weights.

    The value net comes back freshly initialized (it is not part of the
    file); the policy net reproduces the exported forward pass exactly.
    """
    hidden = tuple(layer.outputs for layer in weights.layers[:-1])
    policy = MaskedPolicy(weights.input_size, weights.output_size, hidden)
    with torch.no_grad():
        for linear, layer in zip(_policy_linears(policy), weights.layers):
            linear.weight.copy_(torch.from_numpy(np.array(layer.weights)))
            linear.bias.copy_(torch.from_numpy(np.array(layer.bias)))
    return policy
