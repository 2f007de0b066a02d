"""Inference over exported policy weights.

A small dense network maps the flat observation to one logit per
action; selection is deterministic masked argmax.  Weights live in a
portable text format with 17-significant-digit decimals so any trainer
that writes the format can be evaluated here bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..environment import (
    Action,
    MissionState,
    OBSERVATION_LAYOUT_VERSION,
    Scenario,
    action_mask,
    observe,
)
from ..errors import DomainError
from ..orbital import Constants, DEFAULT_CONSTANTS, TransferConfig
from ..serialize import dump_17g, load
from .episodes import EpisodeResult, run_episode

__all__ = [
    "PolicyLayer",
    "PolicyWeights",
    "policy_forward",
    "policy_select",
    "policy_episode",
    "save_policy_weights",
    "load_policy_weights",
    "random_policy_weights",
]

_ACTIVATIONS = ("tanh", "identity")


@dataclass(frozen=True, eq=False)
class PolicyLayer:
    """One dense layer: y = activation(weights @ x + bias).

    ``weights`` has shape (outputs, inputs), row-major per output
    neuron, matching the serialized layout.
    """

    weights: np.ndarray
    bias: np.ndarray
    activation: str

    def __post_init__(self) -> None:
        weights = np.asarray(self.weights, dtype=np.float64)
        bias = np.asarray(self.bias, dtype=np.float64)
        if weights.ndim != 2:
            raise DomainError(f"weights must be a matrix, got shape {weights.shape}")
        if bias.shape != (weights.shape[0],):
            raise DomainError(
                f"bias shape {bias.shape} does not match {weights.shape[0]} outputs"
            )
        if self.activation not in _ACTIVATIONS:
            raise DomainError(
                f"activation must be one of {_ACTIVATIONS}, got {self.activation!r}"
            )
        if not (np.isfinite(weights).all() and np.isfinite(bias).all()):
            raise DomainError("layer parameters must all be finite")
        weights.flags.writeable = False
        bias.flags.writeable = False
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", bias)

    @property
    def inputs(self) -> int:
        return self.weights.shape[1]

    @property
    def outputs(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class PolicyWeights:
    """Full network: an ordered layer chain plus the layout version.

    The layout version pins which observation layout the network was
    trained against; the loader refuses files with a different one.
    """

    layers: tuple[PolicyLayer, ...]
    observation_layout_version: int = OBSERVATION_LAYOUT_VERSION

    def __post_init__(self) -> None:
        if not self.layers:
            raise DomainError("policy needs at least one layer")
        for first, second in zip(self.layers, self.layers[1:]):
            if second.inputs != first.outputs:
                raise DomainError(
                    f"layer chain broken: {first.outputs} outputs feed "
                    f"{second.inputs} inputs"
                )

    @property
    def input_size(self) -> int:
        return self.layers[0].inputs

    @property
    def output_size(self) -> int:
        return self.layers[-1].outputs


def policy_forward(weights: PolicyWeights, observation: np.ndarray) -> np.ndarray:
    """Dense forward pass; returns one raw logit per action.

    Raises:
        DomainError: if the observation length does not match the
            network input dimension.
    """
    x = np.asarray(observation, dtype=np.float64)
    if x.shape != (weights.input_size,):
        raise DomainError(
            f"observation shape {x.shape} does not match network input "
            f"({weights.input_size},)"
        )
    for layer in weights.layers:
        x = layer.weights @ x + layer.bias
        if layer.activation == "tanh":
            x = np.tanh(x)
    return x


def policy_select(
    weights: PolicyWeights, observation: np.ndarray, mask: np.ndarray
) -> Action:
    """Masked deterministic action choice.

    Masked-out logits are forced to -infinity before the argmax, so the
    result is always a legal action; ties go to the lowest index.

    Raises:
        DomainError: if the mask allows nothing or its length does not
            match the network output.
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim != 1 or not mask.any():
        raise DomainError("mask must allow at least one action")
    logits = policy_forward(weights, observation)
    if logits.shape != mask.shape:
        raise DomainError(
            f"mask length {mask.shape[0]} does not match {logits.shape[0]} actions"
        )
    masked = np.where(mask, logits, -np.inf)
    return Action.from_index(int(np.argmax(masked)), len(mask) - 1)


def policy_episode(
    scenario: Scenario,
    weights: PolicyWeights,
    transfer_cfg: TransferConfig = TransferConfig(),
    constants: Constants = DEFAULT_CONSTANTS,
    case_id: int = 0,
    iteration_id: int = 0,
) -> EpisodeResult:
    """Run one episode under masked argmax inference."""

    def select(state: MissionState, scn: Scenario) -> Action:
        return policy_select(weights, observe(state, scn), action_mask(state))

    return run_episode(
        scenario,
        select,
        planner_id="policy",
        case_id=case_id,
        iteration_id=iteration_id,
        transfer_cfg=transfer_cfg,
        constants=constants,
    )


def save_policy_weights(weights: PolicyWeights, path) -> None:
    """Write the portable weight file (17-significant-digit decimals)."""
    document = {
        "format": "policy-weights",
        "version": 1,
        "observation_layout_version": weights.observation_layout_version,
        "layers": [
            {
                "inputs": layer.inputs,
                "outputs": layer.outputs,
                "activation": layer.activation,
                "weights": layer.weights.reshape(-1).tolist(),
                "bias": layer.bias.tolist(),
            }
            for layer in weights.layers
        ],
    }
    dump_17g(document, path)


def load_policy_weights(path) -> PolicyWeights:
    """Read a weight file, validating shape chain and layout version.

    Raises:
        DomainError: on a malformed file or an observation layout
            version other than the one this build produces.
    """
    document = load(path)
    if document.get("format") != "policy-weights":
        raise DomainError(f"not a policy weight file: format={document.get('format')!r}")
    layout = document.get("observation_layout_version")
    if layout != OBSERVATION_LAYOUT_VERSION:
        raise DomainError(
            f"weight file uses observation layout {layout}, "
            f"this build expects {OBSERVATION_LAYOUT_VERSION}"
        )
    layers = []
    for entry in document["layers"]:
        inputs = entry["inputs"]
        outputs = entry["outputs"]
        flat = np.asarray(entry["weights"], dtype=np.float64)
        if flat.size != inputs * outputs:
            raise DomainError(
                f"layer declares {outputs}x{inputs} but carries {flat.size} weights"
            )
        layers.append(
            PolicyLayer(
                weights=flat.reshape(outputs, inputs),
                bias=np.asarray(entry["bias"], dtype=np.float64),
                activation=entry["activation"],
            )
        )
    return PolicyWeights(layers=tuple(layers), observation_layout_version=layout)


def random_policy_weights(
    layer_sizes: tuple[int, ...] = (358, 256, 256, 51), seed: int = 0
) -> PolicyWeights:
    """Untrained network with scaled-normal weights (tanh hidden layers).

    Used for fixtures and as the initialization a trainer starts from;
    scale 1/sqrt(fan_in) keeps tanh units away from saturation.
    """
    if len(layer_sizes) < 2:
        raise DomainError(f"need at least input and output sizes, got {layer_sizes}")
    rng = np.random.Generator(np.random.PCG64(seed))
    layers = []
    last = len(layer_sizes) - 2
    for k in range(len(layer_sizes) - 1):
        fan_in, fan_out = layer_sizes[k], layer_sizes[k + 1]
        layers.append(
            PolicyLayer(
                weights=rng.normal(0.0, 1.0 / np.sqrt(fan_in), size=(fan_out, fan_in)),
                bias=np.zeros(fan_out),
                activation="identity" if k == last else "tanh",
            )
        )
    return PolicyWeights(layers=tuple(layers))
