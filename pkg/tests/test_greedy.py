"""Greedy planner selection rules and episode behavior."""

import math
from dataclasses import replace

import numpy as np
import pytest

from adrsim import (
    Action,
    DoneReason,
    GreedyConfig,
    OrbitalElements,
    Scenario,
    ScenarioConfig,
    action_mask,
    generate_scenario,
    greedy_episode,
    greedy_select,
    reset,
    step,
)
from adrsim.errors import ContractViolationError, DomainError
from support import result_key

EARTH_RADIUS = 6.378137e6
INCL = math.radians(96.0)


def station() -> OrbitalElements:
    return OrbitalElements(EARTH_RADIUS + 700e3, inclination=INCL)


def debris_at(altitude_km: float, tilt_deg: float = 0.0, nu: float = 0.0) -> OrbitalElements:
    return OrbitalElements(
        EARTH_RADIUS + altitude_km * 1e3,
        inclination=INCL + math.radians(tilt_deg),
        true_anomaly=nu,
    )


def hand_scenario(debris, **config_kwargs) -> Scenario:
    cfg = ScenarioConfig(n_debris=len(debris), seed=0, **config_kwargs)
    return Scenario(debris=tuple(debris), station=station(), config=cfg)


class TestGreedySelect:
    def test_picks_the_cheaper_debris(self):
        # index 0 is ~40 km away, index 1 only ~20 km: clearly cheaper.
        scenario = hand_scenario([debris_at(740.0), debris_at(720.0)])
        state, _ = reset(scenario)
        assert greedy_select(state, scenario) == Action.visit(1)

    def test_equal_costs_break_to_lowest_index(self):
        twins = debris_at(750.0, nu=1.0)
        filler = debris_at(795.0, tilt_deg=0.9)
        debris = [filler] * 3 + [twins] + [filler] * 5 + [twins]
        scenario = hand_scenario(debris)
        state, _ = reset(scenario)
        assert greedy_select(state, scenario) == Action.visit(3)

    def test_refuels_when_no_debris_affordable(self):
        scenario = hand_scenario([debris_at(701.0), debris_at(760.0, tilt_deg=1.5)])
        state, _ = reset(scenario)
        state, _ = step(state, scenario, Action.visit(0))
        # Debris 1 costs ~200 m/s; going home costs a few m/s.
        broke = replace(state, remaining_delta_v=50.0)
        assert greedy_select(broke, scenario) == Action.refuel()

    def test_falls_back_to_cheapest_debris_when_even_refuel_unaffordable(self):
        scenario = hand_scenario([debris_at(701.0), debris_at(760.0, tilt_deg=1.5)])
        state, _ = reset(scenario)
        state, _ = step(state, scenario, Action.visit(0))
        destitute = replace(state, remaining_delta_v=1.0)
        assert greedy_select(destitute, scenario) == Action.visit(1)

    def test_terminal_state_rejected(self, default_scenario):
        state, _ = reset(default_scenario)
        state = replace(state, done=True, done_reason=DoneReason.TIME_EXHAUSTED)
        with pytest.raises(ContractViolationError):
            greedy_select(state, default_scenario)

    def test_weight_scaling_leaves_choice_unchanged(self, default_scenario):
        state, _ = reset(default_scenario)
        for _ in range(5):
            base = greedy_select(state, default_scenario, GreedyConfig(1.0, 0.001))
            scaled = greedy_select(state, default_scenario, GreedyConfig(7.0, 0.007))
            assert base == scaled
            state, _ = step(state, default_scenario, base)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            GreedyConfig(alpha=-1.0)
        with pytest.raises(DomainError):
            GreedyConfig(alpha=0.0, beta=0.0)


class TestGreedyEpisode:
    def test_single_debris_forced_sequence(self):
        scenario = generate_scenario(ScenarioConfig(n_debris=1, seed=3))
        result = greedy_episode(scenario)
        assert result.debris_visited == 1
        assert result.done_reason == "AllVisited"

    def test_deterministic_apart_from_wall_clock(self, default_scenario):
        first = greedy_episode(default_scenario)
        second = greedy_episode(default_scenario)
        assert result_key(first) == result_key(second)

    def test_default_scenario_lands_in_the_teens(self, default_scenario):
        result = greedy_episode(default_scenario)
        assert 10 <= result.debris_visited <= 25

    def test_mask_compliance_across_episodes(self):
        """Greedy never proposes a masked action."""
        for seed in range(30):
            scenario = generate_scenario(ScenarioConfig(n_debris=6, seed=seed))
            state, _ = reset(scenario)
            while not state.done:
                action = greedy_select(state, scenario)
                assert action_mask(state)[action.to_index(scenario.n_debris)]
                state, _ = step(state, scenario, action)
            assert state.done_reason is not DoneReason.INVALID_ACTION
