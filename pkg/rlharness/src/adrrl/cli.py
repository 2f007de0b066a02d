"""Command line front end: ``adr-rl train`` and ``adr-rl evaluate``.

The trainer writes weight files in the simulator's portable format and
the evaluator writes the benchmark's results table, so both ends plug
straight into the existing tooling.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from adrsim import ScenarioConfig, load_policy_weights, write_results

from .ppo import TrainConfig
from .train import evaluate, greedy_baseline, results_summary, train

__all__ = ["main", "build_parser"]

PROG = "adr-rl"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Train and evaluate removal policies against the orbital simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train_p = sub.add_parser("train", help="run masked PPO and export a weight file")
    train_p.add_argument("--output", required=True, help="weight file to write")
    train_p.add_argument("--steps", type=int, default=TrainConfig.total_steps,
                         help="total environment steps")
    train_p.add_argument("--batch-size", type=int, default=TrainConfig.batch_size)
    train_p.add_argument("--minibatch-size", type=int, default=None,
                         help="default: min(batch size, 256)")
    train_p.add_argument("--lr", type=float, default=TrainConfig.learning_rate)
    train_p.add_argument("--seed", type=int, default=TrainConfig.seed)
    train_p.add_argument("--n-envs", type=int, default=TrainConfig.n_envs)
    train_p.add_argument("--hidden", type=int, nargs="+",
                         default=list(TrainConfig.hidden_sizes))
    train_p.add_argument("--entropy-coef", type=float, default=TrainConfig.entropy_coef)
    train_p.add_argument("--n-debris", type=int, default=ScenarioConfig.n_debris)
    train_p.add_argument("--checkpoint-every", type=int, default=None,
                         help="also export every N updates")
    train_p.add_argument("--quiet", action="store_true",
                         help="suppress per-update progress lines")

    eval_p = sub.add_parser("evaluate", help="run argmax episodes on held-out seeds")
    eval_p.add_argument("--weights", required=True, help="weight file to load")
    eval_p.add_argument("--output-dir", required=True,
                        help="directory for the results table and summary")
    eval_p.add_argument("--seeds", type=int, default=20, help="number of seeds")
    eval_p.add_argument("--first-seed", type=int, default=1_000_000)
    eval_p.add_argument("--n-debris", type=int, default=ScenarioConfig.n_debris)
    eval_p.add_argument("--with-greedy", action="store_true",
                        help="also run the greedy baseline on the same seeds")
    return parser


def _cmd_train(args: argparse.Namespace) -> int:
    minibatch = args.minibatch_size
    if minibatch is None:
        minibatch = min(args.batch_size, TrainConfig.minibatch_size)
    cfg = TrainConfig(
        learning_rate=args.lr,
        total_steps=args.steps,
        batch_size=args.batch_size,
        minibatch_size=minibatch,
        hidden_sizes=tuple(args.hidden),
        seed=args.seed,
        n_envs=args.n_envs,
        entropy_coef=args.entropy_coef,
        scenario=replace(ScenarioConfig(), n_debris=args.n_debris),
    )

    def progress(record):
        print(
            f"update {record.update + 1}: steps={record.env_steps}"
            f" episodes={record.episodes}"
            f" mean_reward={record.mean_episode_reward:.3f}"
            f" policy_loss={record.policy_loss:.4f}"
            f" value_loss={record.value_loss:.4f}",
            flush=True,
        )

    result = train(
        cfg,
        output_path=args.output,
        checkpoint_interval=args.checkpoint_every,
        progress=None if args.quiet else progress,
    )
    print(f"trained {result.env_steps} steps, wrote {args.output}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    weights = load_policy_weights(args.weights)
    seeds = [args.first_seed + k for k in range(args.seeds)]
    scenario_cfg = replace(ScenarioConfig(), n_debris=args.n_debris)
    rows = evaluate(weights, seeds, scenario_cfg)
    if args.with_greedy:
        rows.extend(greedy_baseline(seeds, scenario_cfg))
    summary = results_summary(rows)
    write_results(rows, summary, args.output_dir)
    for planner, block in summary["planners"].items():
        visits = block["debris_visited"]
        print(
            f"{planner}: mean visits {visits['mean']:.2f}"
            f" (min {visits['min']:.0f}, max {visits['max']:.0f})"
            f" over {block['episodes']} episodes"
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            return _cmd_train(args)
        return _cmd_evaluate(args)
    except (ValueError, FileNotFoundError, RuntimeError) as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
