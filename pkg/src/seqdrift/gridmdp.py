"""The slippery 5x5 maze MDP: model construction, value iteration, policies.

States are encoded as integer tokens (row * width + col).  Actions are
indexed up=0, down=1, left=2, right=3; every argmax tie is broken by this
fixed order so results are reproducible.

Conventions (chosen to reproduce the reference value table):
  * reward 1 is earned on the transition that enters the goal, and the
    goal is absorbing with zero continuation value;
  * probability mass of off-grid moves stays on the current cell.
The goal entry of a returned value table is reported as 1.0 for display,
but never feeds back into any Q computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

Cell = tuple[int, int]

ACTION_NAMES = ("up", "down", "left", "right")
ACTION_ARROWS = ("↑", "↓", "←", "→")
_DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1))
# slip destinations: the two neighbors perpendicular to the action,
# in fixed (first, second) order
_PERPENDICULAR = {0: (2, 3), 1: (2, 3), 2: (0, 1), 3: (0, 1)}
N_ACTIONS = 4


@dataclass(frozen=True)
class GridSpec:
    height: int = 5
    width: int = 5
    start: Cell = (0, 0)
    goal: Cell = (3, 4)

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise ValueError("grid must have positive dimensions")
        for cell in (self.start, self.goal):
            if not self.contains(cell):
                raise ValueError(f"cell {cell} outside {self.height}x{self.width} grid")
        if self.start == self.goal:
            raise ValueError("start and goal must differ")

    @property
    def n_states(self) -> int:
        return self.height * self.width

    def contains(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width

    @property
    def start_token(self) -> int:
        return encode_state(self.start, self)

    @property
    def goal_token(self) -> int:
        return encode_state(self.goal, self)


def encode_state(cell: Cell, grid: GridSpec) -> int:
    """Injective cell -> token encoding: row * width + col."""
    if not grid.contains(cell):
        raise ValueError(f"cell {cell} outside grid")
    return cell[0] * grid.width + cell[1]


def decode_state(token: int, grid: GridSpec) -> Cell:
    if not 0 <= token < grid.n_states:
        raise ValueError(f"token {token} outside grid")
    return divmod(token, grid.width)


@dataclass(frozen=True)
class SlipModel:
    p1: float = 0.8  # intended move
    p2: float = 0.1  # first perpendicular
    p3: float = 0.1  # second perpendicular

    def __post_init__(self):
        if min(self.p1, self.p2, self.p3) < 0:
            raise ValueError("slip probabilities must be non-negative")
        if abs(self.p1 + self.p2 + self.p3 - 1.0) > 1e-12:
            raise ValueError("slip probabilities must sum to 1")


@dataclass(frozen=True)
class TransitionModel:
    """P(s' | s, a) as a dense (n_states, n_actions, n_states) array."""

    probs: np.ndarray

    @property
    def n_states(self) -> int:
        return self.probs.shape[0]

    def validate(self, atol: float = 1e-9) -> None:
        if np.any(self.probs < 0):
            raise ValueError("negative transition probability")
        sums = self.probs.sum(axis=2)
        if np.max(np.abs(sums - 1.0)) > atol:
            raise ValueError("transition rows must sum to 1")


@dataclass(frozen=True)
class StochasticPolicy:
    dist: np.ndarray  # (n_states, n_actions), rows sum to 1, strictly positive
    tau: float


DeterministicPolicy = np.ndarray  # (n_states,) int array of action indices
Policy = Union[DeterministicPolicy, StochasticPolicy]


@dataclass(frozen=True)
class MrpModel:
    p: np.ndarray  # (n_states, n_states)
    r: np.ndarray  # (n_states,)
    gamma: float


def build_transition_model(grid: GridSpec, slip: SlipModel) -> TransitionModel:
    """Slip dynamics: intended cell gets p1, the two perpendicular neighbors
    get p2 and p3, and any off-grid destination bounces back onto the
    current cell.  The goal is absorbing."""
    n = grid.n_states
    probs = np.zeros((n, N_ACTIONS, n))
    goal = grid.goal_token
    for r in range(grid.height):
        for c in range(grid.width):
            s = r * grid.width + c
            if s == goal:
                probs[s, :, s] = 1.0
                continue
            for a in range(N_ACTIONS):
                perp1, perp2 = _PERPENDICULAR[a]
                for move, p in ((a, slip.p1), (perp1, slip.p2), (perp2, slip.p3)):
                    dr, dc = _DELTAS[move]
                    dest = (r + dr, c + dc)
                    if not grid.contains(dest):
                        dest = (r, c)
                    probs[s, a, dest[0] * grid.width + dest[1]] += p
    return TransitionModel(probs)


def _reward_and_continuation(model: TransitionModel, grid: GridSpec):
    # R(s, a) = P(goal | s, a); continuation excludes the absorbing goal
    goal = grid.goal_token
    rewards = model.probs[:, :, goal].copy()
    rewards[goal, :] = 0.0
    continued = model.probs.copy()
    continued[:, :, goal] = 0.0
    return rewards, continued


def q_values(model: TransitionModel, values: np.ndarray, gamma: float, grid: GridSpec) -> np.ndarray:
    """Q(s, a) = R(s, a) + gamma * sum_{s' != goal} P(s'|s,a) V(s').

    The goal's entry of ``values`` is ignored, so display tables with
    V(goal) = 1 are safe inputs.
    """
    rewards, continued = _reward_and_continuation(model, grid)
    v = np.asarray(values, dtype=float).copy()
    v[grid.goal_token] = 0.0
    return rewards + gamma * continued @ v


def value_iteration(
    model: TransitionModel,
    grid: GridSpec,
    gamma: float = 0.9,
    tol: float = 1e-9,
    max_iter: int = 10_000,
) -> np.ndarray:
    """Fixed point of the Bellman optimality backup, max-norm tolerance.

    Returns a value vector indexed by state token, with the goal entry set
    to 1.0 for display parity.
    """
    if not 0 <= gamma < 1:
        raise ValueError("gamma must be in [0, 1)")
    if tol <= 0:
        raise ValueError("tol must be positive")
    rewards, continued = _reward_and_continuation(model, grid)
    goal = grid.goal_token
    v = np.zeros(model.n_states)
    for _ in range(max_iter):
        q = rewards + gamma * continued @ v
        v_new = q.max(axis=1)
        v_new[goal] = 0.0
        delta = np.max(np.abs(v_new - v))
        v = v_new
        if delta < tol:
            v = v.copy()
            v[goal] = 1.0
            return v
    raise RuntimeError(f"value iteration did not converge within {max_iter} sweeps")


def greedy_policy(
    model: TransitionModel, values: np.ndarray, gamma: float, grid: GridSpec
) -> DeterministicPolicy:
    """Argmax policy over Q; ties go to the first action in fixed order."""
    q = q_values(model, values, gamma, grid)
    return np.asarray(q.argmax(axis=1), dtype=np.int64)


def softmax_policy(
    model: TransitionModel,
    values: np.ndarray,
    gamma: float,
    grid: GridSpec,
    tau: float = 1.0,
) -> StochasticPolicy:
    """Boltzmann policy exp(Q/tau) / sum exp(Q/tau), max-shifted for stability."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    q = q_values(model, values, gamma, grid)
    z = (q - q.max(axis=1, keepdims=True)) / tau
    e = np.exp(z)
    dist = e / e.sum(axis=1, keepdims=True)
    return StochasticPolicy(dist=dist, tau=tau)


def optimal_path(policy: DeterministicPolicy, grid: GridSpec) -> list[int]:
    """Intended-move rollout (no slip) from start to goal, as state tokens.

    Raises if a state repeats before the goal is reached, which means the
    policy cannot reach the goal deterministically.
    """
    cell = grid.start
    path = [encode_state(cell, grid)]
    seen = {cell}
    while cell != grid.goal:
        action = int(policy[encode_state(cell, grid)])
        dr, dc = _DELTAS[action]
        dest = (cell[0] + dr, cell[1] + dc)
        if not grid.contains(dest):
            dest = cell
        if dest in seen:
            raise ValueError(f"policy cycles at {dest} before reaching the goal")
        seen.add(dest)
        path.append(encode_state(dest, grid))
        cell = dest
    return path


def policy_action_dist(policy: Policy, n_states: int) -> np.ndarray:
    """Policy as an action distribution matrix; point mass if deterministic."""
    if isinstance(policy, StochasticPolicy):
        return policy.dist
    dist = np.zeros((n_states, N_ACTIONS))
    dist[np.arange(n_states), np.asarray(policy, dtype=int)] = 1.0
    return dist


def induce_mrp(
    model: TransitionModel, policy: Policy, gamma: float, grid: GridSpec
) -> MrpModel:
    """Policy-averaged transitions and rewards of the induced Markov reward
    process; the absorbing goal keeps a self-loop with zero reward."""
    dist = policy_action_dist(policy, model.n_states)
    rewards, _ = _reward_and_continuation(model, grid)
    p = np.einsum("sa,sat->st", dist, model.probs)
    r = np.einsum("sa,sa->s", dist, rewards)
    goal = grid.goal_token
    p[goal, :] = 0.0
    p[goal, goal] = 1.0
    r[goal] = 0.0
    return MrpModel(p=p, r=r, gamma=gamma)


def mrp_state_values(mrp: MrpModel, grid: GridSpec) -> np.ndarray:
    """Solve (I - gamma * P) v = r; zero continuation through the goal."""
    p = mrp.p.copy()
    p[:, grid.goal_token] = 0.0  # entering the goal ends the episode
    n = p.shape[0]
    return np.linalg.solve(np.eye(n) - mrp.gamma * p, mrp.r)


def format_value_table(values: np.ndarray, grid: GridSpec) -> str:
    lines = []
    for r in range(grid.height):
        row = values[r * grid.width : (r + 1) * grid.width]
        lines.append("  ".join(f"{v:.2f}" for v in row))
    return "\n".join(lines)


def format_policy_table(policy: DeterministicPolicy, grid: GridSpec) -> str:
    lines = []
    for r in range(grid.height):
        cells = []
        for c in range(grid.width):
            if (r, c) == grid.goal:
                cells.append("G")
            else:
                cells.append(ACTION_ARROWS[int(policy[r * grid.width + c])])
        lines.append(" ".join(cells))
    return "\n".join(lines)
