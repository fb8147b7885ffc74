"""Episode generation, transition-probability drift, and measure samples.

Randomness is organized as named substreams: every consumer derives its own
PCG64 generator from (seed, purpose tag, indices), so results are
bit-reproducible and independent of execution order or thread count.

Persistence formats (stable):
  * episode sets as JSON Lines, one object per episode with fields
    ``seed_index``, ``tokens`` (integer array), ``completed``;
  * measure samples as CSV with header ``measure,condition,sample``.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .gridmdp import (
    GridSpec,
    N_ACTIONS,
    Policy,
    StochasticPolicy,
    TransitionModel,
    decode_state,
    encode_state,
)
from .measures import MeasureKind, suffix_measures

_MASK64 = (1 << 64) - 1


def substream(seed: int, tag: str, *indices: int) -> np.random.Generator:
    """Named, splittable random stream: hash of (seed, tag, indices)."""
    entropy = [seed & _MASK64, zlib.crc32(tag.encode("utf-8")), *indices]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, tag: str, *indices: int) -> int:
    """A 64-bit child seed, for handing a whole component its own stream."""
    entropy = [seed & _MASK64, zlib.crc32(tag.encode("utf-8")), *indices]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class Episode:
    states: list[int]  # visited state tokens, start first
    completed: bool  # reached the terminal condition before the step cap
    seed_index: int = 0


@dataclass
class EpisodeSet:
    episodes: list[Episode]
    seed: int
    condition: str = ""
    retries: int = 0  # incomplete draws that were regenerated

    def __len__(self) -> int:
        return len(self.episodes)


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float  # standard deviation of the Gaussian perturbation
    seed: int

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")


@dataclass
class MeasureSampleSet:
    kind: MeasureKind
    values: list[float]
    condition: str = ""
    skipped: int = 0  # (position, episode) pairs without a defined sample


class _MazeSampler:
    """Per-(state, action) successor tables for fast inverse-CDF sampling."""

    def __init__(self, model: TransitionModel, policy: Policy):
        probs = model.probs
        n = probs.shape[0]
        self.succ: list[list[np.ndarray]] = []
        self.cum: list[list[np.ndarray]] = []
        for s in range(n):
            succ_row, cum_row = [], []
            for a in range(N_ACTIONS):
                idx = np.nonzero(probs[s, a])[0]
                succ_row.append(idx)
                cum_row.append(np.cumsum(probs[s, a, idx]))
            self.succ.append(succ_row)
            self.cum.append(cum_row)
        if isinstance(policy, StochasticPolicy):
            self.action_cum = np.cumsum(policy.dist, axis=1)
            self.actions = None
        else:
            self.action_cum = None
            self.actions = np.asarray(policy, dtype=int)

    def action(self, s: int, rng: np.random.Generator) -> int:
        if self.actions is not None:
            return int(self.actions[s])
        u = rng.random()
        row = self.action_cum[s]
        for a in range(N_ACTIONS):
            if u < row[a]:
                return a
        return N_ACTIONS - 1

    def successor(self, s: int, a: int, rng: np.random.Generator) -> int:
        u = rng.random()
        cum = self.cum[s][a]
        succ = self.succ[s][a]
        for k in range(len(cum)):
            if u < cum[k]:
                return int(succ[k])
        return int(succ[-1])


def _run_episode(
    sampler: _MazeSampler, grid: GridSpec, rng: np.random.Generator, cap: int, seed_index: int
) -> Episode:
    goal = grid.goal_token
    cur = grid.start_token
    states = [cur]
    while cur != goal and len(states) < cap:
        a = sampler.action(cur, rng)
        cur = sampler.successor(cur, a, rng)
        states.append(cur)
    return Episode(states=states, completed=cur == goal, seed_index=seed_index)


def generate_episode(
    model: TransitionModel,
    policy: Policy,
    grid: GridSpec,
    rng: np.random.Generator,
    cap: int = 1000,
) -> Episode:
    """One rollout from the start state under the policy and model.

    Records every visited state token including start and goal; cap
    exhaustion yields ``completed=False`` instead of an error.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    return _run_episode(_MazeSampler(model, policy), grid, rng, cap)


def generate_episodes(
    model: TransitionModel,
    policy: Policy,
    grid: GridSpec,
    n: int,
    seed: int,
    cap: int = 1000,
    condition: str = "",
    max_retries: int = 100,
) -> EpisodeSet:
    """n completed episodes; episode i draws from substream (seed, i, attempt).

    Rollouts that miss the goal within the cap are regenerated with a fresh
    derived stream (counted in ``retries``); exhausting the retry budget for
    one index signals a pathological model and raises.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    sampler = _MazeSampler(model, policy)
    episodes = []
    retries = 0
    for i in range(n):
        for attempt in range(max_retries + 1):
            rng = substream(seed, "maze-episode", i, attempt)
            ep = _run_episode(sampler, grid, rng, cap, seed_index=i)
            if ep.completed:
                episodes.append(ep)
                break
            retries += 1
        else:
            raise RuntimeError(
                f"episode {i} failed to reach the goal in {max_retries + 1} attempts"
            )
    return EpisodeSet(episodes=episodes, seed=seed, condition=condition, retries=retries)


def perturb_transitions(model: TransitionModel, noise: NoiseSpec) -> TransitionModel:
    """Gaussian perturbation of every transition row, renormalized to sum 1.

    Noise is added only to successors already in the row's support;
    negatives clamp to zero; a row whose support clamps entirely to zero is
    redrawn with the next substream.  sigma = 0 returns an identical model.
    """
    probs = model.probs.copy()
    if noise.sigma == 0:
        return TransitionModel(probs)
    n_states, n_actions, _ = probs.shape
    for s in range(n_states):
        for a in range(n_actions):
            row = probs[s, a]
            idx = np.nonzero(row)[0]
            base = row[idx]
            row_index = s * n_actions + a
            for attempt in range(1000):
                rng = substream(noise.seed, "perturb-row", row_index, attempt)
                shifted = base + rng.normal(0.0, noise.sigma, size=len(idx))
                np.clip(shifted, 0.0, None, out=shifted)
                total = shifted.sum()
                if total > 0:
                    row[idx] = shifted / total
                    break
            else:  # pragma: no cover - probability ~0
                raise RuntimeError("could not draw a valid perturbed row")
    return TransitionModel(probs)


def generate_measures(
    reference: Sequence[int],
    eps: EpisodeSet,
    kind: MeasureKind,
    window: Optional[int] = None,
) -> MeasureSampleSet:
    """Algorithmic core of sample extraction: for each position i of the
    reference and each episode, compare the two suffixes starting at i.

    Pairs where the episode has no token at position i are skipped and
    counted.  Samples are emitted position-major, then episode index.
    """
    if len(reference) == 0:
        raise ValueError("reference sequence must be non-empty")
    profiles = [
        suffix_measures(kind, reference, ep.states, window) for ep in eps.episodes
    ]
    n_pos = len(reference)
    values: list[float] = []
    skipped = 0
    for i in range(n_pos):
        for prof in profiles:
            if i < len(prof):
                values.append(prof[i])
            else:
                skipped += 1
    _check_ranges(kind, values)
    return MeasureSampleSet(kind=kind, values=values, condition=eps.condition, skipped=skipped)


def _check_ranges(kind: MeasureKind, values: Iterable[float]) -> None:
    if kind.is_similarity:
        for v in values:
            if not 0.0 <= v <= 1.0:
                raise AssertionError(f"{kind.value} sample {v} outside [0, 1]")
    else:
        for v in values:
            if not (v >= 0.0 and v != float("inf")):
                raise AssertionError(f"{kind.value} sample {v} not a finite distance")


def save_episodes_jsonl(eps: EpisodeSet, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for ep in eps.episodes:
            fh.write(
                json.dumps(
                    {
                        "seed_index": ep.seed_index,
                        "tokens": ep.states,
                        "completed": ep.completed,
                    },
                    separators=(",", ":"),
                )
                + "\n"
            )


def load_episodes_jsonl(path: Path | str, seed: int = 0, condition: str = "") -> EpisodeSet:
    episodes = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            tokens = [int(t) for t in obj["tokens"]]
            if any(t < 0 for t in tokens):
                raise ValueError("episode tokens must be non-negative")
            episodes.append(
                Episode(
                    states=tokens,
                    completed=bool(obj["completed"]),
                    seed_index=int(obj.get("seed_index", 0)),
                )
            )
    return EpisodeSet(episodes=episodes, seed=seed, condition=condition)


def save_samples_csv(sample_sets: Iterable[MeasureSampleSet], path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("measure,condition,sample\n")
        for ss in sample_sets:
            kind = ss.kind.value
            cond = ss.condition
            for v in ss.values:
                fh.write(f"{kind},{cond},{v!r}\n")


def load_samples_csv(path: Path | str) -> list[MeasureSampleSet]:
    by_key: dict[tuple[str, str], list[float]] = {}
    order: list[tuple[str, str]] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "measure,condition,sample":
            raise ValueError(f"unexpected samples header: {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            kind, cond, value = line.split(",", 2)
            key = (kind, cond)
            if key not in by_key:
                by_key[key] = []
                order.append(key)
            by_key[key].append(float(value))
    return [
        MeasureSampleSet(kind=MeasureKind(kind), values=vals, condition=cond)
        for (kind, cond), vals in ((k, by_key[k]) for k in order)
    ]
