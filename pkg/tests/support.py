"""Helpers shared across test modules (plain module, not fixtures)."""

ACCEPTANCE_LINES: list[str] = []
"""Verdict lines collected by the acceptance tests; echoed after the run."""


def result_key(result):
    """EpisodeResult fields that must be deterministic.

    Wall-clock is measured time and legitimately differs between runs.
    """
    return (
        result.case_id,
        result.iteration_id,
        result.planner_id,
        result.debris_visited,
        result.total_delta_v_spent,
        result.refuel_count,
        result.elapsed_mission_time,
        result.done_reason,
    )
