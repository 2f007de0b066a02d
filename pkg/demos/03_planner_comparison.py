"""Greedy baseline against tree search on a handful of sampled missions.

Runs both planners over the same five scenarios and prints a per-case
comparison plus means.  The search planner spends its simulation budget
looking ahead through the same deterministic transfer model the greedy
planner scores one step at a time.
"""

import numpy as np

from adrsim import (
    MctsConfig,
    ScenarioConfig,
    generate_scenario,
    greedy_episode,
    mcts_episode,
)


def main() -> None:
    cases = range(5)
    mcts_cfg = MctsConfig(simulations_per_step=100)

    print(f"{'case':>4} {'greedy':>7} {'mcts':>6} {'greedy dv':>10} {'mcts dv':>9}")
    greedy_visits = []
    mcts_visits = []
    for case in cases:
        scenario = generate_scenario(ScenarioConfig(seed=case))
        g = greedy_episode(scenario, case_id=case)
        m = mcts_episode(scenario, mcts_cfg, case_id=case)
        greedy_visits.append(g.debris_visited)
        mcts_visits.append(m.debris_visited)
        print(
            f"{case:>4} {g.debris_visited:>7} {m.debris_visited:>6} "
            f"{g.total_delta_v_spent:>10.1f} {m.total_delta_v_spent:>9.1f}"
        )

    print(
        f"mean visits: greedy {np.mean(greedy_visits):.2f}, "
        f"mcts {np.mean(mcts_visits):.2f}"
    )


if __name__ == "__main__":
    main()
