"""Command-line benchmark harness.

Three subcommands: ``generate`` emits seeded scenario files, ``run``
executes a campaign, ``summarize`` recomputes statistics from a results
table.  Settings resolve in precedence order: built-in defaults, then
the config file (``--config``), then explicit flags.  Angles are
degrees on the command line and radians everywhere else.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import fields
from pathlib import Path

from .bench import (
    OUTPUT_DIR_ENV_VAR,
    PLANNER_IDS,
    CampaignConfig,
    run_campaign,
    summarize,
)
from .environment import ScenarioConfig, generate_scenario, save_scenario
from .errors import DomainError
from .orbital import Constants, TransferConfig
from .planners import GreedyConfig, MctsConfig
from .serialize import dump_17g, dumps_17g, load

__all__ = ["main"]


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("scenario")
    group.add_argument("--n-debris", type=int, help="debris objects per scenario")
    group.add_argument(
        "--altitude-band", type=float, nargs=2, metavar=("LO", "HI"),
        help="debris altitude band in meters",
    )
    group.add_argument(
        "--inclination-band", type=float, nargs=2, metavar=("LO", "HI"),
        help="debris inclination band in degrees",
    )
    group.add_argument(
        "--raan-band", type=float, nargs=2, metavar=("LO", "HI"),
        help="debris RAAN band in degrees",
    )
    group.add_argument("--station-altitude", type=float, help="station altitude in meters")
    group.add_argument(
        "--station-inclination", type=float, help="station inclination in degrees"
    )
    group.add_argument("--max-delta-v", type=float, help="delta-v budget in m/s")
    group.add_argument("--max-duration", type=float, help="mission duration limit in seconds")


def _scenario_overrides(args: argparse.Namespace) -> dict:
    overrides: dict = {}
    if args.n_debris is not None:
        overrides["n_debris"] = args.n_debris
    if args.altitude_band is not None:
        overrides["altitude_band"] = tuple(args.altitude_band)
    if args.inclination_band is not None:
        overrides["inclination_band"] = tuple(math.radians(v) for v in args.inclination_band)
    if args.raan_band is not None:
        overrides["raan_band"] = tuple(math.radians(v) for v in args.raan_band)
    if args.station_altitude is not None:
        overrides["station_altitude"] = args.station_altitude
    if args.station_inclination is not None:
        overrides["station_inclination"] = math.radians(args.station_inclination)
    if args.max_delta_v is not None:
        overrides["max_delta_v"] = args.max_delta_v
    if args.max_duration is not None:
        overrides["max_duration"] = args.max_duration
    return overrides


def _build_dataclass(cls, document: dict, overrides: dict, what: str):
    known = {f.name for f in fields(cls)}
    merged = {**document, **overrides}
    unknown = set(merged) - known
    if unknown:
        raise DomainError(f"unknown {what} settings: {sorted(unknown)}")
    for key in ("altitude_band", "inclination_band", "raan_band"):
        if key in merged and isinstance(merged[key], list):
            merged[key] = tuple(merged[key])
    return cls(**merged)


def _resolve_output_dir(flag_value: str | None, file_value: str | None) -> str | None:
    if flag_value is not None:
        return flag_value
    if file_value is not None:
        return file_value
    return os.environ.get(OUTPUT_DIR_ENV_VAR)


def _cmd_generate(args: argparse.Namespace) -> int:
    document = {}
    if args.config is not None:
        document = load(args.config).get("scenario", {})
    overrides = _scenario_overrides(args)
    output_dir = _resolve_output_dir(args.output_dir, None)
    if output_dir is None:
        raise DomainError(
            f"no output directory: pass --output-dir or set {OUTPUT_DIR_ENV_VAR}"
        )
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for case in range(args.cases):
        seed = (args.base_seed + case) % 2**64
        cfg = _build_dataclass(
            ScenarioConfig, document, {**overrides, "seed": seed}, "scenario"
        )
        path = directory / f"scenario_{case:04d}.json"
        save_scenario(generate_scenario(cfg), path)
        print(path)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    file_doc: dict = {}
    if args.config is not None:
        file_doc = load(args.config)

    scenario = _build_dataclass(
        ScenarioConfig, file_doc.get("scenario", {}), _scenario_overrides(args), "scenario"
    )

    greedy_overrides: dict = {}
    if args.greedy_alpha is not None:
        greedy_overrides["alpha"] = args.greedy_alpha
    if args.greedy_beta is not None:
        greedy_overrides["beta"] = args.greedy_beta
    greedy = _build_dataclass(GreedyConfig, file_doc.get("greedy", {}), greedy_overrides, "greedy")

    mcts_overrides: dict = {}
    if args.mcts_simulations is not None:
        mcts_overrides["simulations_per_step"] = args.mcts_simulations
    if args.mcts_depth is not None:
        mcts_overrides["rollout_depth"] = args.mcts_depth
    if args.mcts_exploration is not None:
        mcts_overrides["exploration_c"] = args.mcts_exploration
    if args.mcts_selection is not None:
        mcts_overrides["selection"] = args.mcts_selection
    mcts = _build_dataclass(MctsConfig, file_doc.get("mcts", {}), mcts_overrides, "mcts")

    transfer_overrides: dict = {}
    if args.first_leg_fraction is not None:
        transfer_overrides["first_leg_fraction"] = args.first_leg_fraction
    if args.terminal_offset is not None:
        transfer_overrides["terminal_offset"] = args.terminal_offset
    if args.safety_ellipse_dv is not None:
        transfer_overrides["safety_ellipse_dv"] = args.safety_ellipse_dv
    if args.max_phasing_periods is not None:
        transfer_overrides["max_phasing_periods"] = args.max_phasing_periods
    transfer = _build_dataclass(
        TransferConfig, file_doc.get("transfer", {}), transfer_overrides, "transfer"
    )

    constants = _build_dataclass(Constants, file_doc.get("constants", {}), {}, "constants")

    campaign_doc = {
        key: file_doc[key]
        for key in (
            "n_cases",
            "iterations_per_case",
            "planners",
            "base_seed",
            "policy_weights_path",
            "workers",
        )
        if key in file_doc
    }
    campaign_overrides: dict = {}
    if args.n_cases is not None:
        campaign_overrides["n_cases"] = args.n_cases
    if args.iterations is not None:
        campaign_overrides["iterations_per_case"] = args.iterations
    if args.planners is not None:
        campaign_overrides["planners"] = tuple(args.planners)
    if args.base_seed is not None:
        campaign_overrides["base_seed"] = args.base_seed
    if args.policy_weights is not None:
        campaign_overrides["policy_weights_path"] = args.policy_weights
    if args.workers is not None:
        campaign_overrides["workers"] = args.workers
    merged = {**campaign_doc, **campaign_overrides}
    if "planners" in merged:
        merged["planners"] = tuple(merged["planners"])

    output_dir = _resolve_output_dir(args.output_dir, file_doc.get("output_dir"))
    if output_dir is None:
        raise DomainError(
            f"no output directory: pass --output-dir or set {OUTPUT_DIR_ENV_VAR}"
        )

    cfg = CampaignConfig(
        scenario=scenario,
        greedy=greedy,
        mcts=mcts,
        transfer=transfer,
        constants=constants,
        output_dir=output_dir,
        **merged,
    )
    results, summary = run_campaign(cfg)
    print(f"{len(results)} episodes -> {output_dir}")
    for planner, block in summary["planners"].items():
        visits = block["debris_visited"]
        print(
            f"  {planner}: mean visits {visits['mean']:.2f} "
            f"(min {visits['min']:.0f}, max {visits['max']:.0f}) "
            f"over {block['episodes']} episodes"
        )
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    summary = summarize(args.results)
    if args.output is not None:
        dump_17g(summary, args.output)
        print(args.output)
    else:
        print(dumps_17g(summary), end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adr-bench",
        description="Benchmark harness for the debris-removal mission simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write seeded scenario files")
    gen.add_argument("--cases", type=int, default=1, help="number of scenarios")
    gen.add_argument("--base-seed", type=int, default=0)
    gen.add_argument("--output-dir", help=f"defaults to ${OUTPUT_DIR_ENV_VAR}")
    gen.add_argument("--config", help="config file supplying scenario defaults")
    _add_scenario_flags(gen)
    gen.set_defaults(handler=_cmd_generate)

    run = sub.add_parser("run", help="run a benchmark campaign")
    run.add_argument("--n-cases", type=int)
    run.add_argument("--iterations", type=int, help="episodes per case and planner")
    run.add_argument("--planners", nargs="+", choices=PLANNER_IDS)
    run.add_argument("--base-seed", type=int)
    run.add_argument("--output-dir", help=f"defaults to ${OUTPUT_DIR_ENV_VAR}")
    run.add_argument("--config", help="config file overriding defaults")
    run.add_argument("--workers", type=int)
    run.add_argument("--policy-weights", help="policy weight file path")
    run.add_argument("--greedy-alpha", type=float)
    run.add_argument("--greedy-beta", type=float)
    run.add_argument("--mcts-simulations", type=int)
    run.add_argument("--mcts-depth", type=int)
    run.add_argument("--mcts-exploration", type=float)
    run.add_argument("--mcts-selection", choices=("visit_count", "mean_value"))
    run.add_argument("--first-leg-fraction", type=float)
    run.add_argument("--terminal-offset", type=float)
    run.add_argument("--safety-ellipse-dv", type=float)
    run.add_argument("--max-phasing-periods", type=float)
    _add_scenario_flags(run)
    run.set_defaults(handler=_cmd_run)

    summ = sub.add_parser("summarize", help="recompute statistics from a results table")
    summ.add_argument("results", help="path to a results.csv")
    summ.add_argument("--output", help="write the summary here instead of stdout")
    summ.set_defaults(handler=_cmd_summarize)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"adr-bench: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
