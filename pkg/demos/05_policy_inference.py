"""Evaluate a policy network through the weight file round trip.

Builds an untrained network, writes it to the portable weight format,
loads it back, and runs masked-argmax episodes.  A trained network from
any framework can be evaluated the same way by writing the same format;
the untrained one here just shows the plumbing (and loses to greedy).
"""

import tempfile
from pathlib import Path

from adrsim import (
    ScenarioConfig,
    generate_scenario,
    greedy_episode,
    load_policy_weights,
    observation_length,
    policy_episode,
    random_policy_weights,
    save_policy_weights,
)


def main() -> None:
    n_debris = 20
    sizes = (observation_length(n_debris), 128, 128, n_debris + 1)
    network = random_policy_weights(sizes, seed=5)

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "weights.json"
        save_policy_weights(network, path)
        loaded = load_policy_weights(path)
        print(f"weight file: {path.stat().st_size} bytes, "
              f"{len(loaded.layers)} layers, input {loaded.input_size}")

    for seed in range(3):
        scenario = generate_scenario(ScenarioConfig(n_debris=n_debris, seed=seed))
        p = policy_episode(scenario, loaded)
        g = greedy_episode(scenario)
        print(
            f"seed {seed}: untrained policy visited {p.debris_visited:>2} "
            f"({p.done_reason}), greedy visited {g.debris_visited:>2}"
        )


if __name__ == "__main__":
    main()
