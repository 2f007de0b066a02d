"""Policy inference: forward pass, masked selection, and the weight file format."""

import math

import numpy as np
import pytest

from adrsim import (
    Action,
    PolicyLayer,
    PolicyWeights,
    ScenarioConfig,
    generate_scenario,
    load_policy_weights,
    observation_length,
    policy_episode,
    policy_forward,
    policy_select,
    random_policy_weights,
    save_policy_weights,
)
from adrsim.errors import DomainError
from adrsim.serialize import dump_17g
from support import result_key


def single_tap_network(input_size, tap):
    """Two-layer net whose only logit is tanh(observation[tap])."""
    first = np.zeros((1, input_size))
    first[0, tap] = 1.0
    return PolicyWeights(
        layers=(
            PolicyLayer(weights=first, bias=np.zeros(1), activation="tanh"),
            PolicyLayer(weights=np.ones((1, 1)), bias=np.zeros(1), activation="identity"),
        )
    )


class TestLayerValidation:
    def test_rejects_unknown_activation(self):
        with pytest.raises(DomainError):
            PolicyLayer(weights=np.ones((2, 2)), bias=np.zeros(2), activation="relu")

    def test_rejects_bias_shape_mismatch(self):
        with pytest.raises(DomainError):
            PolicyLayer(weights=np.ones((2, 3)), bias=np.zeros(3), activation="tanh")

    def test_rejects_vector_weights(self):
        with pytest.raises(DomainError):
            PolicyLayer(weights=np.ones(4), bias=np.zeros(4), activation="tanh")

    def test_rejects_non_finite(self):
        bad = np.ones((2, 2))
        bad[1, 1] = np.nan
        with pytest.raises(DomainError):
            PolicyLayer(weights=bad, bias=np.zeros(2), activation="tanh")

    def test_parameters_are_frozen(self):
        layer = PolicyLayer(weights=np.ones((2, 2)), bias=np.zeros(2), activation="tanh")
        with pytest.raises(ValueError):
            layer.weights[0, 0] = 5.0

    def test_rejects_broken_chain(self):
        a = PolicyLayer(weights=np.ones((3, 4)), bias=np.zeros(3), activation="tanh")
        b = PolicyLayer(weights=np.ones((2, 5)), bias=np.zeros(2), activation="identity")
        with pytest.raises(DomainError):
            PolicyWeights(layers=(a, b))

    def test_rejects_empty_network(self):
        with pytest.raises(DomainError):
            PolicyWeights(layers=())


class TestForward:
    def test_zero_weights_give_zero_logits(self):
        net = PolicyWeights(
            layers=(
                PolicyLayer(weights=np.zeros((4, 6)), bias=np.zeros(4), activation="tanh"),
                PolicyLayer(weights=np.zeros((3, 4)), bias=np.zeros(3), activation="identity"),
            )
        )
        assert np.array_equal(policy_forward(net, np.ones(6)), np.zeros(3))

    def test_single_tap_trace(self):
        net = single_tap_network(5, tap=2)
        obs = np.array([0.1, 0.2, 0.7, 0.4, 0.5])
        assert policy_forward(net, obs)[0] == np.tanh(obs[2])

    def test_identity_last_layer_applies_bias(self):
        net = PolicyWeights(
            layers=(
                PolicyLayer(
                    weights=np.zeros((2, 3)),
                    bias=np.array([1.5, -2.5]),
                    activation="identity",
                ),
            )
        )
        assert np.array_equal(policy_forward(net, np.zeros(3)), [1.5, -2.5])

    def test_dimension_mismatch_rejected(self):
        net = single_tap_network(5, tap=0)
        with pytest.raises(DomainError):
            policy_forward(net, np.zeros(6))

    def test_matches_scalar_reference(self):
        net = random_policy_weights((7, 5, 4), seed=3)
        rng = np.random.Generator(np.random.PCG64(99))
        obs = rng.uniform(-1.0, 1.0, size=7)

        x = [float(v) for v in obs]
        for layer in net.layers:
            y = []
            for row, b in zip(layer.weights, layer.bias):
                acc = float(b)
                for w, v in zip(row, x):
                    acc += float(w) * v
                y.append(math.tanh(acc) if layer.activation == "tanh" else acc)
            x = y
        assert np.allclose(policy_forward(net, obs), x, rtol=1e-12, atol=1e-14)


class TestSelect:
    def test_only_legal_action_wins_regardless_of_logits(self):
        net = random_policy_weights((5, 6), seed=1)
        mask = np.zeros(6, dtype=bool)
        mask[2] = True
        assert policy_select(net, np.ones(5), mask) == Action.visit(2)

    def test_refuel_slot_is_last_index(self):
        net = random_policy_weights((5, 6), seed=1)
        mask = np.zeros(6, dtype=bool)
        mask[5] = True
        assert policy_select(net, np.ones(5), mask) == Action.refuel()

    def test_masked_maximum_is_skipped(self):
        logits = np.array([0.0, 9.0, 3.0, 1.0])
        net = PolicyWeights(
            layers=(
                PolicyLayer(
                    weights=np.zeros((4, 4)), bias=logits, activation="identity"
                ),
            )
        )
        mask = np.array([True, False, True, False])
        assert policy_select(net, np.zeros(4), mask) == Action.visit(2)

    def test_uniform_logits_break_ties_low(self):
        net = PolicyWeights(
            layers=(
                PolicyLayer(
                    weights=np.zeros((4, 3)), bias=np.zeros(4), activation="identity"
                ),
            )
        )
        assert policy_select(net, np.zeros(3), np.ones(4, dtype=bool)) == Action.visit(0)

    def test_invariant_under_constant_logit_shift(self):
        base = random_policy_weights((6, 5, 4), seed=7)
        last = base.layers[-1]
        shifted = PolicyWeights(
            layers=base.layers[:-1]
            + (
                PolicyLayer(
                    weights=last.weights,
                    bias=last.bias + 100.0,
                    activation=last.activation,
                ),
            )
        )
        rng = np.random.Generator(np.random.PCG64(2024))
        for _ in range(50):
            obs = rng.uniform(-1.0, 1.0, size=6)
            mask = rng.uniform(size=4) < 0.6
            if not mask.any():
                continue
            assert policy_select(base, obs, mask) == policy_select(shifted, obs, mask)

    def test_all_masked_rejected(self):
        net = random_policy_weights((5, 6), seed=1)
        with pytest.raises(DomainError):
            policy_select(net, np.ones(5), np.zeros(6, dtype=bool))

    def test_mask_length_mismatch_rejected(self):
        net = random_policy_weights((5, 6), seed=1)
        with pytest.raises(DomainError):
            policy_select(net, np.ones(5), np.ones(7, dtype=bool))

    def test_never_emits_masked_action(self):
        net = random_policy_weights((10, 8, 7), seed=5)
        rng = np.random.Generator(np.random.PCG64(31))
        for _ in range(200):
            obs = rng.uniform(-1.0, 1.0, size=10)
            mask = rng.uniform(size=7) < 0.4
            if not mask.any():
                mask[int(rng.integers(0, 7))] = True
            action = policy_select(net, obs, mask)
            assert mask[action.to_index(6)]


class TestWeightFile:
    def test_round_trip_is_bit_exact(self, tmp_path):
        net = random_policy_weights((9, 7, 5), seed=11)
        path = tmp_path / "weights.json"
        save_policy_weights(net, path)
        loaded = load_policy_weights(path)
        for a, b in zip(net.layers, loaded.layers):
            assert np.array_equal(a.weights, b.weights)
            assert np.array_equal(a.bias, b.bias)
            assert a.activation == b.activation
        obs = np.linspace(-1.0, 1.0, 9)
        assert np.array_equal(policy_forward(net, obs), policy_forward(loaded, obs))

    def test_layout_version_mismatch_rejected(self, tmp_path):
        net = random_policy_weights((4, 3), seed=0)
        stale = PolicyWeights(layers=net.layers, observation_layout_version=2)
        path = tmp_path / "stale.json"
        save_policy_weights(stale, path)
        with pytest.raises(DomainError, match="layout"):
            load_policy_weights(path)

    def test_wrong_format_rejected(self, tmp_path):
        path = tmp_path / "other.json"
        dump_17g({"format": "scenario", "version": 1}, path)
        with pytest.raises(DomainError, match="format"):
            load_policy_weights(path)

    def test_weight_count_mismatch_rejected(self, tmp_path):
        path = tmp_path / "short.json"
        dump_17g(
            {
                "format": "policy-weights",
                "version": 1,
                "observation_layout_version": 1,
                "layers": [
                    {
                        "inputs": 3,
                        "outputs": 2,
                        "activation": "identity",
                        "weights": [1.0, 2.0, 3.0],
                        "bias": [0.0, 0.0],
                    }
                ],
            },
            path,
        )
        with pytest.raises(DomainError, match="weights"):
            load_policy_weights(path)


class TestRandomWeights:
    def test_shapes_follow_layer_sizes(self):
        net = random_policy_weights((358, 256, 256, 51), seed=0)
        assert [layer.weights.shape for layer in net.layers] == [
            (256, 358),
            (256, 256),
            (51, 256),
        ]
        assert [layer.activation for layer in net.layers] == [
            "tanh",
            "tanh",
            "identity",
        ]
        assert all(np.array_equal(l.bias, np.zeros(l.outputs)) for l in net.layers)

    def test_seed_controls_draws(self):
        a = random_policy_weights((6, 4), seed=1)
        b = random_policy_weights((6, 4), seed=1)
        c = random_policy_weights((6, 4), seed=2)
        assert np.array_equal(a.layers[0].weights, b.layers[0].weights)
        assert not np.array_equal(a.layers[0].weights, c.layers[0].weights)

    def test_too_few_sizes_rejected(self):
        with pytest.raises(DomainError):
            random_policy_weights((8,), seed=0)


class TestPolicyEpisode:
    def test_deterministic_and_mask_compliant(self):
        scenario = generate_scenario(ScenarioConfig(n_debris=5, seed=13))
        sizes = (observation_length(5), 32, 6)
        net = random_policy_weights(sizes, seed=40)
        first = policy_episode(scenario, net)
        second = policy_episode(scenario, net)
        assert result_key(first) == result_key(second)
        assert first.done_reason != "InvalidAction"
        assert first.planner_id == "policy"

    def test_single_debris_completes(self):
        scenario = generate_scenario(ScenarioConfig(n_debris=1, seed=3))
        net = random_policy_weights((observation_length(1), 8, 2), seed=4)
        result = policy_episode(scenario, net)
        assert result.debris_visited == 1
        assert result.done_reason == "AllVisited"
