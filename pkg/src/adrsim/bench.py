"""Benchmark campaigns: seeded cases, per-planner metrics, summaries.

A campaign fixes one scenario per case (seed = base_seed + case),
repeats each case for a number of iterations per planner, and emits a
results table, a statistics summary, and plot-ready per-case series.
Deterministic planners yield identical iterations by construction;
search iterations differ through derived planner seeds.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .environment import Scenario, ScenarioConfig, generate_scenario, splitmix64_mix
from .errors import DomainError
from .orbital import Constants, DEFAULT_CONSTANTS, TransferConfig
from .planners import (
    EpisodeResult,
    GreedyConfig,
    MctsConfig,
    PolicyWeights,
    greedy_episode,
    load_policy_weights,
    mcts_episode,
    policy_episode,
)
from .serialize import dump_17g, format_17g

__all__ = [
    "PLANNER_IDS",
    "RESULTS_HEADER",
    "OUTPUT_DIR_ENV_VAR",
    "CampaignConfig",
    "run_campaign",
    "write_results",
    "read_results",
    "summarize",
]

PLANNER_IDS = ("greedy", "mcts", "policy")

RESULTS_HEADER = (
    "case",
    "iteration",
    "planner",
    "debris_visited",
    "total_delta_v_spent",
    "refuel_count",
    "elapsed_mission_time",
    "planner_wall_clock",
    "done_reason",
)

OUTPUT_DIR_ENV_VAR = "ADRSIM_OUTPUT_DIR"


@dataclass(frozen=True)
class CampaignConfig:
    """Everything a campaign run depends on.

    Attributes:
        n_cases: number of seeded scenarios.
        iterations_per_case: episode repeats per case and planner.
        planners: subset of ("greedy", "mcts", "policy").
        base_seed: campaign seed; case c uses scenario seed
            (base_seed + c) mod 2^64, search iterations i use planner
            seed base_seed XOR splitmix64_mix(i).
        scenario: scenario template; its seed field is overridden per
            case.
        greedy / mcts / transfer / constants: planner and physics
            settings shared by every episode.
        policy_weights_path: weight file, required when "policy" is in
            ``planners``.
        output_dir: when set, run_campaign writes its files here.
        workers: process count; results are byte-identical to the
            sequential order regardless.
    """

    n_cases: int = 100
    iterations_per_case: int = 10
    planners: tuple[str, ...] = ("greedy",)
    base_seed: int = 0
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    greedy: GreedyConfig = field(default_factory=GreedyConfig)
    mcts: MctsConfig = field(default_factory=MctsConfig)
    transfer: TransferConfig = field(default_factory=TransferConfig)
    constants: Constants = DEFAULT_CONSTANTS
    policy_weights_path: str | None = None
    output_dir: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_cases < 1:
            raise DomainError(f"n_cases must be at least 1, got {self.n_cases}")
        if self.iterations_per_case < 1:
            raise DomainError(
                f"iterations_per_case must be at least 1, got {self.iterations_per_case}"
            )
        if not self.planners:
            raise DomainError("select at least one planner")
        unknown = [p for p in self.planners if p not in PLANNER_IDS]
        if unknown:
            raise DomainError(f"unknown planners {unknown}; valid ids are {PLANNER_IDS}")
        if len(set(self.planners)) != len(self.planners):
            raise DomainError(f"duplicate planner ids in {self.planners}")
        if "policy" in self.planners and not self.policy_weights_path:
            raise DomainError("the policy planner needs policy_weights_path")
        if not 0 <= self.base_seed < 2**64:
            raise DomainError(f"base_seed must be an unsigned 64-bit integer, got {self.base_seed}")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")


def _case_scenario(cfg: CampaignConfig, case: int) -> Scenario:
    seed = (cfg.base_seed + case) % 2**64
    return generate_scenario(replace(cfg.scenario, seed=seed))


def _run_case(
    cfg: CampaignConfig, case: int, weights: PolicyWeights | None
) -> list[EpisodeResult]:
    scenario = _case_scenario(cfg, case)
    rows: list[EpisodeResult] = []
    for iteration in range(cfg.iterations_per_case):
        planner_seed = cfg.base_seed ^ splitmix64_mix(iteration)
        for planner in cfg.planners:
            if planner == "greedy":
                result = greedy_episode(
                    scenario, cfg.greedy, cfg.transfer, cfg.constants, case, iteration
                )
            elif planner == "mcts":
                mcts_cfg = replace(cfg.mcts, rollout_seed=planner_seed)
                result = mcts_episode(
                    scenario, mcts_cfg, cfg.transfer, cfg.constants, case, iteration
                )
            else:
                assert weights is not None
                result = policy_episode(
                    scenario, weights, cfg.transfer, cfg.constants, case, iteration
                )
            rows.append(result)
    return rows


_WORKER_STATE: dict = {}


def _init_worker(cfg: CampaignConfig, weights: PolicyWeights | None) -> None:
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["weights"] = weights


def _run_case_in_worker(case: int) -> list[EpisodeResult]:
    return _run_case(_WORKER_STATE["cfg"], case, _WORKER_STATE["weights"])


def run_campaign(cfg: CampaignConfig) -> tuple[list[EpisodeResult], dict]:
    """Execute the campaign; optionally write outputs.

    Returns:
        (results, summary).  Results are sorted by (case, iteration,
        planner) so worker scheduling never changes output bytes; the
        summary is computed from exactly those rows.  When
        ``cfg.output_dir`` is set the table, summary, and series files
        are written there.

    Raises:
        DomainError: on config problems, including a missing weight
            file when the policy planner is selected.
    """
    weights = None
    if "policy" in cfg.planners:
        assert cfg.policy_weights_path is not None
        if not Path(cfg.policy_weights_path).is_file():
            raise DomainError(f"policy weight file not found: {cfg.policy_weights_path}")
        weights = load_policy_weights(cfg.policy_weights_path)

    if cfg.workers == 1:
        per_case = [_run_case(cfg, case, weights) for case in range(cfg.n_cases)]
    else:
        with ProcessPoolExecutor(
            max_workers=cfg.workers, initializer=_init_worker, initargs=(cfg, weights)
        ) as pool:
            per_case = list(pool.map(_run_case_in_worker, range(cfg.n_cases)))

    results = [row for rows in per_case for row in rows]
    results.sort(key=lambda r: (r.case_id, r.iteration_id, r.planner_id))
    summary = _summarize_rows(results, cfg)
    if cfg.output_dir is not None:
        write_results(results, summary, cfg.output_dir)
    return results, summary


def _moments(values: list[float]) -> dict:
    data = np.asarray(values, dtype=np.float64)
    return {
        "mean": float(np.mean(data)),
        "min": float(np.min(data)),
        "max": float(np.max(data)),
        "stddev": float(np.std(data)),
    }


def _summarize_rows(results: list[EpisodeResult], cfg: CampaignConfig | None = None) -> dict:
    """Per-planner moment statistics over the given rows.

    The standard deviation is the population form (divisor N).
    """
    planners: dict[str, dict] = {}
    for planner in sorted({r.planner_id for r in results}):
        rows = [r for r in results if r.planner_id == planner]
        planners[planner] = {
            "episodes": len(rows),
            "debris_visited": _moments([float(r.debris_visited) for r in rows]),
            "planner_wall_clock": _moments([r.planner_wall_clock for r in rows]),
        }
    summary: dict = {"format": "campaign-summary", "version": 1}
    if cfg is not None:
        summary["n_cases"] = cfg.n_cases
        summary["iterations_per_case"] = cfg.iterations_per_case
        summary["base_seed"] = cfg.base_seed
    summary["planners"] = planners
    return summary


def _result_to_row(result: EpisodeResult) -> list[str]:
    return [
        str(result.case_id),
        str(result.iteration_id),
        result.planner_id,
        str(result.debris_visited),
        format_17g(result.total_delta_v_spent),
        str(result.refuel_count),
        format_17g(result.elapsed_mission_time),
        format_17g(result.planner_wall_clock),
        result.done_reason,
    ]


def write_results(results: list[EpisodeResult], summary: dict, output_dir) -> list[Path]:
    """Write the results table, summary document, and per-planner series.

    Emits ``results.csv`` (fixed header, floats as 17-significant-digit
    decimals), ``summary.json``, and for each planner two plot-ready
    series of per-case iteration means: ``<planner>_visits_series.csv``
    and ``<planner>_wall_clock_series.csv``.

    Returns:
        Paths written, results table first.

    Raises:
        OSError: I/O failures, annotated with the offending path.
    """
    directory = Path(output_dir)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {directory}: {exc}") from exc

    written: list[Path] = []

    def _write(path: Path, writer_fn) -> None:
        try:
            writer_fn(path)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        written.append(path)

    def _write_table(path: Path) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(RESULTS_HEADER)
            for result in results:
                writer.writerow(_result_to_row(result))

    _write(directory / "results.csv", _write_table)
    _write(directory / "summary.json", lambda p: dump_17g(summary, p))

    for planner in sorted({r.planner_id for r in results}):
        rows = [r for r in results if r.planner_id == planner]
        cases = sorted({r.case_id for r in rows})

        def _series(path: Path, column: str, values_by_case: dict) -> None:
            with open(path, "w", newline="") as handle:
                writer = csv.writer(handle)
                writer.writerow(("case", column))
                for case in cases:
                    writer.writerow((str(case), format_17g(values_by_case[case])))

        visit_means = {
            c: float(np.mean([r.debris_visited for r in rows if r.case_id == c]))
            for c in cases
        }
        clock_means = {
            c: float(np.mean([r.planner_wall_clock for r in rows if r.case_id == c]))
            for c in cases
        }
        _write(
            directory / f"{planner}_visits_series.csv",
            lambda p, vm=visit_means: _series(p, "mean_debris_visited", vm),
        )
        _write(
            directory / f"{planner}_wall_clock_series.csv",
            lambda p, cm=clock_means: _series(p, "mean_planner_wall_clock", cm),
        )
    return written


def read_results(path) -> list[EpisodeResult]:
    """Parse a results table back into episode records.

    The 17-significant-digit cells reproduce the original doubles
    exactly, so statistics recomputed from the file match statistics
    computed from the in-memory rows.
    """
    rows: list[EpisodeResult] = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != RESULTS_HEADER:
            raise DomainError(f"unexpected results header in {path}: {header}")
        for record in reader:
            rows.append(
                EpisodeResult(
                    case_id=int(record[0]),
                    iteration_id=int(record[1]),
                    planner_id=record[2],
                    debris_visited=int(record[3]),
                    total_delta_v_spent=float(record[4]),
                    refuel_count=int(record[5]),
                    elapsed_mission_time=float(record[6]),
                    planner_wall_clock=float(record[7]),
                    done_reason=record[8],
                )
            )
    return rows


def summarize(results_path) -> dict:
    """Recompute the summary document from a written results table."""
    return _summarize_rows(read_results(results_path))
