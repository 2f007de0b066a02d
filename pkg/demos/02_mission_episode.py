"""Step through one mission episode by hand.

Generates a 6-debris scenario, then repeatedly asks the greedy selector
for the next action and applies it, printing the running fuel and clock
after each step.  The same loop underlies every planner.
"""

from adrsim import (
    ScenarioConfig,
    action_mask,
    generate_scenario,
    greedy_select,
    reset,
    step,
)


def main() -> None:
    scenario = generate_scenario(ScenarioConfig(n_debris=6, seed=11))
    state, _ = reset(scenario)

    print(f"{scenario.n_debris} debris, budget {state.remaining_delta_v:.0f} m/s, "
          f"window {scenario.config.max_duration / 86400.0:.0f} days")

    while not state.done:
        legal = action_mask(state)
        action = greedy_select(state, scenario)
        state, outcome = step(state, scenario, action)
        label = "refuel" if action.index is None else f"visit {action.index}"
        print(
            f"  {label:<9} reward {outcome.reward:+d}   "
            f"fuel {state.remaining_delta_v:7.1f} m/s   "
            f"day {state.elapsed_time / 86400.0:5.2f}   "
            f"legal were {[int(i) for i in legal.nonzero()[0]]}"
        )

    print(
        f"done: {state.done_reason.value}, visited "
        f"{state.visits_this_episode}/{scenario.n_debris}, "
        f"refueled {state.refuel_count}x"
    )


if __name__ == "__main__":
    main()
