"""Episodic RL bindings over the mission simulator.

``BoundEnv`` adapts the simulator's functional core (frozen states,
explicit transitions) to the mutable reset/step interface training
loops expect.  It holds nothing but the current state and scenario, so
a trajectory driven through the binding is bit-identical to the same
action list replayed against the simulator directly.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from adrsim import (
    Action,
    Scenario,
    ScenarioConfig,
    action_mask,
    generate_scenario,
    observation_length,
    reset,
    step,
)
from adrsim.errors import ContractViolationError

__all__ = ["BoundEnv"]


class BoundEnv:
    """One mission episode behind a conventional reset/step interface.

    Attributes:
        config: scenario template; its seed field is overridden on every
            reset, everything else (debris count, bands, budgets) is
            shared by all episodes of this instance.
        scenario: the current episode's scenario, None before the first
            reset.
    """

    def __init__(self, config: ScenarioConfig = ScenarioConfig()) -> None:
        self.config = config
        self.scenario: Scenario | None = None
        self._state = None

    @property
    def n_actions(self) -> int:
        """Debris count plus the refuel action."""
        return self.config.n_debris + 1

    @property
    def observation_size(self) -> int:
        return observation_length(self.config.n_debris)

    @property
    def done(self) -> bool:
        self._require_reset()
        return self._state.done

    def bound_reset(self, seed: int) -> np.ndarray:
        """Start a fresh episode on the scenario drawn from ``seed``."""
        self.scenario = generate_scenario(replace(self.config, seed=seed))
        self._state, observation = reset(self.scenario)
        return observation

    def action_mask(self) -> np.ndarray:
        """Structural legality mask for the current state."""
        self._require_reset()
        return action_mask(self._state)

    def bound_step(self, action_index: int) -> tuple[np.ndarray, int, bool, dict]:
        """Apply one flat action index; returns (obs, reward, done, info).

        The info dict is the simulator's, extended with the post-step
        ``action_mask``.

        Raises:
            ContractViolationError: when the episode is already done.
            DomainError: on an out-of-range action index.
        """
        self._require_reset()
        action = Action.from_index(action_index, self.scenario.n_debris)
        self._state, outcome = step(self._state, self.scenario, action)
        info = dict(outcome.info)
        info["action_mask"] = action_mask(self._state)
        return outcome.observation, outcome.reward, outcome.done, info

    def _require_reset(self) -> None:
        if self._state is None:
            raise ContractViolationError("call bound_reset before using the env")
