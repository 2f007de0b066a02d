"""Training loop, evaluation, and the weight-file lifecycle.

One process drives a bank of bound environments, collects fixed-size
batches, and applies clipped-surrogate policy-gradient updates with
generalized advantage estimation.  Scenario seeds are drawn fresh per
episode so the agent never trains on a fixed debris field.  Exported
checkpoints use the simulator's portable weight format, so anything the
trainer produces can be evaluated by the benchmark harness directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import torch

from adrsim import (
    EpisodeResult,
    PolicyWeights,
    ScenarioConfig,
    generate_scenario,
    greedy_episode,
    policy_episode,
    save_policy_weights,
)

from .bindings import BoundEnv
from .ppo import (
    DivergenceError,
    MaskedPolicy,
    TrainConfig,
    export_weights,
    masked_logits,
)

__all__ = [
    "UpdateRecord",
    "TrainResult",
    "train",
    "evaluate",
    "greedy_baseline",
    "results_summary",
]


@dataclass(frozen=True)
class UpdateRecord:
    """One optimizer-update row of the training log."""

    update: int
    env_steps: int
    episodes: int
    mean_episode_reward: float
    policy_loss: float
    value_loss: float
    entropy: float


@dataclass(frozen=True)
class TrainResult:
    """Final exported weights plus the per-update log."""

    weights: PolicyWeights
    records: tuple[UpdateRecord, ...]
    env_steps: int


def _reset_all(envs: list[BoundEnv], seed_stream: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    observations = np.stack(
        [env.bound_reset(int(seed_stream.integers(0, 2**63))) for env in envs]
    )
    masks = np.stack([env.action_mask() for env in envs])
    return observations, masks


def train(
    cfg: TrainConfig = TrainConfig(),
    output_path=None,
    checkpoint_interval: int | None = None,
    progress=None,
) -> TrainResult:
    """Run masked PPO for ``cfg.total_steps`` environment steps.

    Args:
        cfg: hyperparameters; ``total_steps`` of 0 exports the untrained
            initialization.
        output_path: when given, the final weights are written here in
            the portable format.
        checkpoint_interval: additionally export every this many updates
            to ``<output_path>.ckpt<N>`` (requires output_path).
        progress: optional callable receiving each UpdateRecord.

    Returns:
        TrainResult with the exported weights and the training log.

    Raises:
        DivergenceError: if a batch's mean episode reward goes
            non-finite.
    """
    torch.manual_seed(cfg.seed)
    envs = [BoundEnv(cfg.scenario) for _ in range(cfg.n_envs)]
    observation_size = envs[0].observation_size
    n_actions = envs[0].n_actions
    policy = MaskedPolicy(observation_size, n_actions, cfg.hidden_sizes)
    optimizer = torch.optim.Adam(policy.parameters(), lr=cfg.learning_rate)

    seed_stream = np.random.Generator(np.random.PCG64(cfg.seed))
    observations, masks = _reset_all(envs, seed_stream)
    episode_reward = np.zeros(cfg.n_envs)

    steps_per_env = cfg.batch_size // cfg.n_envs
    n_updates = cfg.total_steps // cfg.batch_size
    records: list[UpdateRecord] = []

    obs_buf = np.zeros((steps_per_env, cfg.n_envs, observation_size))
    mask_buf = np.zeros((steps_per_env, cfg.n_envs, n_actions), dtype=bool)
    action_buf = np.zeros((steps_per_env, cfg.n_envs), dtype=np.int64)
    logp_buf = np.zeros((steps_per_env, cfg.n_envs))
    value_buf = np.zeros((steps_per_env, cfg.n_envs))
    reward_buf = np.zeros((steps_per_env, cfg.n_envs))
    done_buf = np.zeros((steps_per_env, cfg.n_envs))

    for update in range(n_updates):
        completed: list[float] = []
        for t in range(steps_per_env):
            obs_buf[t] = observations
            mask_buf[t] = masks
            obs_t = torch.from_numpy(observations)
            with torch.no_grad():
                logits = masked_logits(policy(obs_t), torch.from_numpy(masks))
                dist = torch.distributions.Categorical(logits=logits)
                actions = dist.sample()
                logp_buf[t] = dist.log_prob(actions).numpy()
                value_buf[t] = policy.value(obs_t).numpy()
            action_buf[t] = actions.numpy()
            for i, env in enumerate(envs):
                obs_i, reward, done, info = env.bound_step(int(action_buf[t, i]))
                reward_buf[t, i] = reward
                done_buf[t, i] = float(done)
                episode_reward[i] += reward
                if done:
                    completed.append(episode_reward[i])
                    episode_reward[i] = 0.0
                    obs_i = env.bound_reset(int(seed_stream.integers(0, 2**63)))
                    mask_i = env.action_mask()
                else:
                    mask_i = info["action_mask"]
                observations[i] = obs_i
                masks[i] = mask_i

        with torch.no_grad():
            next_value = policy.value(torch.from_numpy(observations)).numpy()

        advantages = np.zeros_like(reward_buf)
        carry = np.zeros(cfg.n_envs)
        for t in reversed(range(steps_per_env)):
            nonterminal = 1.0 - done_buf[t]
            delta = reward_buf[t] + cfg.gamma * next_value * nonterminal - value_buf[t]
            carry = delta + cfg.gamma * cfg.gae_lambda * nonterminal * carry
            advantages[t] = carry
            next_value = value_buf[t]
        returns = advantages + value_buf

        flat = cfg.batch_size
        obs_f = torch.from_numpy(obs_buf.reshape(flat, observation_size).copy())
        mask_f = torch.from_numpy(mask_buf.reshape(flat, n_actions).copy())
        action_f = torch.from_numpy(action_buf.reshape(flat).copy())
        logp_f = torch.from_numpy(logp_buf.reshape(flat).copy())
        return_f = torch.from_numpy(returns.reshape(flat).copy())
        adv = advantages.reshape(flat)
        adv_f = torch.from_numpy((adv - adv.mean()) / (adv.std() + 1e-8))

        policy_losses: list[float] = []
        value_losses: list[float] = []
        entropies: list[float] = []
        for _ in range(cfg.update_epochs):
            order = torch.randperm(flat)
            for start in range(0, flat, cfg.minibatch_size):
                mb = order[start : start + cfg.minibatch_size]
                logits = masked_logits(policy(obs_f[mb]), mask_f[mb])
                dist = torch.distributions.Categorical(logits=logits)
                new_logp = dist.log_prob(action_f[mb])
                ratio = torch.exp(new_logp - logp_f[mb])
                clipped = torch.clamp(ratio, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon)
                surrogate = torch.min(ratio * adv_f[mb], clipped * adv_f[mb]).mean()
                value_loss = torch.mean((policy.value(obs_f[mb]) - return_f[mb]) ** 2)
                entropy = dist.entropy().mean()
                loss = -surrogate + cfg.value_coef * value_loss - cfg.entropy_coef * entropy
                optimizer.zero_grad()
                loss.backward()
                torch.nn.utils.clip_grad_norm_(policy.parameters(), cfg.max_grad_norm)
                optimizer.step()
                policy_losses.append(-float(surrogate.detach()))
                value_losses.append(float(value_loss.detach()))
                entropies.append(float(entropy.detach()))

        mean_reward = float(np.mean(completed)) if completed else float("nan")
        if completed and not math.isfinite(mean_reward):
            raise DivergenceError(
                f"mean episode reward went non-finite at update {update}"
            )
        record = UpdateRecord(
            update=update,
            env_steps=(update + 1) * cfg.batch_size,
            episodes=len(completed),
            mean_episode_reward=mean_reward,
            policy_loss=float(np.mean(policy_losses)),
            value_loss=float(np.mean(value_losses)),
            entropy=float(np.mean(entropies)),
        )
        records.append(record)
        if progress is not None:
            progress(record)
        if (
            checkpoint_interval is not None
            and output_path is not None
            and (update + 1) % checkpoint_interval == 0
        ):
            snapshot = export_weights(policy, observation_size, n_actions, cfg.hidden_sizes)
            save_policy_weights(snapshot, f"{output_path}.ckpt{update + 1}")

    weights = export_weights(policy, observation_size, n_actions, cfg.hidden_sizes)
    if output_path is not None:
        save_policy_weights(weights, output_path)
    return TrainResult(
        weights=weights, records=tuple(records), env_steps=n_updates * cfg.batch_size
    )


def evaluate(
    weights: PolicyWeights,
    seeds,
    scenario_cfg: ScenarioConfig = ScenarioConfig(),
) -> list[EpisodeResult]:
    """Deterministic argmax evaluation through the simulator's own
    inference path, one case per seed; rows match the benchmark table."""
    rows = []
    for case, seed in enumerate(seeds):
        scenario = generate_scenario(replace(scenario_cfg, seed=int(seed)))
        rows.append(policy_episode(scenario, weights, case_id=case))
    return rows


def greedy_baseline(
    seeds, scenario_cfg: ScenarioConfig = ScenarioConfig()
) -> list[EpisodeResult]:
    """Greedy rows on the same seeds, for side-by-side comparison."""
    rows = []
    for case, seed in enumerate(seeds):
        scenario = generate_scenario(replace(scenario_cfg, seed=int(seed)))
        rows.append(greedy_episode(scenario, case_id=case))
    return rows


def _moments(values: list[float]) -> dict:
    data = np.asarray(values, dtype=np.float64)
    return {
        "mean": float(np.mean(data)),
        "min": float(np.min(data)),
        "max": float(np.max(data)),
        "stddev": float(np.std(data)),
    }


def results_summary(rows: list[EpisodeResult]) -> dict:
    """Summary document in the benchmark's shape for evaluation rows."""
    planners: dict[str, dict] = {}
    for planner in sorted({r.planner_id for r in rows}):
        mine = [r for r in rows if r.planner_id == planner]
        planners[planner] = {
            "episodes": len(mine),
            "debris_visited": _moments([float(r.debris_visited) for r in mine]),
            "planner_wall_clock": _moments([r.planner_wall_clock for r in mine]),
        }
    return {"format": "campaign-summary", "version": 1, "planners": planners}
