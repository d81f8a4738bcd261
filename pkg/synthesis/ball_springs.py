"""
Name: ball_springs.py
Description: Ball-springs degradation simulator: balls joined by springs that slowly lose rigidity.
Author: Connor Kasarda
Date: 2025-05-25

Notes:
    Each sequence draws an ageing factor alpha from alpha_range and a random spring graph without isolated balls.
    Sample i (1-based) restarts the balls at random positions with zero velocity and records sim_steps steps of
    semi-implicit Euler; between samples i and i + 1 one random spring has its rigidity multiplied by alpha^i.
    The hidden trend of sample i is the applied degradation exponent -ln(alpha) * i(i - 1)/2.
    The default dt lets a unit spring cover most of a half oscillation within 30 steps, so how far the balls travel
    tracks the remaining rigidity.
    All masses are 1, so the pairwise forces cancel and total momentum stays at its initial zero.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import numpy as np
from common.errors import ConfigError, IsolatedBallAfterRetries, NumericBlowup
from common.log import get_logger
from dataset.sequence_dataset import Sample, SequenceDataset
from embedding.param_set import make_rng
from synthesis.seeding import parallel_map

logger = get_logger(__name__)

MAX_GRAPH_RETRIES = 100
BLOWUP_LIMIT = 1e6

@dataclass(frozen=True)
class SpringsConfig:
    """
    Parameters of the ball-springs simulator.

    Attributes:
        n_balls (int): Balls per system, at least 2.
        space_dim (int): Spatial dimension.
        sim_steps (int): Integration steps recorded per sample.
        dt (float): Integration step.
        connection_prob (float): Probability that two balls share a spring.
        base_rigidity (float): Initial rigidity of every spring.
        rest_length (float): Spring rest length.
        alpha_range (tuple[float, float]): Range of the per-sequence ageing factor, inside (0, 1].
        samples_per_sequence (int): Samples N_X per sequence.
        n_sequences (int): Number of sequences.
        seed (int): Master seed.
    """

    n_balls: int = 10
    space_dim: int = 2
    sim_steps: int = 50
    dt: float = 0.03
    connection_prob: float = 0.5
    base_rigidity: float = 1.0
    rest_length: float = 1.0
    alpha_range: tuple = (0.9, 1.0)
    samples_per_sequence: int = 50
    n_sequences: int = 300
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, 'alpha_range', tuple(float(value) for value in self.alpha_range))
        low, high = self.alpha_range
        checks = (
            (self.n_balls >= 2, f'n_balls must be >= 2, got {self.n_balls}'),
            (self.space_dim >= 1, f'space_dim must be >= 1, got {self.space_dim}'),
            (self.sim_steps >= 1, f'sim_steps must be >= 1, got {self.sim_steps}'),
            (self.dt > 0, f'dt must be positive, got {self.dt}'),
            (0 < self.connection_prob <= 1, f'connection_prob must lie in (0, 1], got {self.connection_prob}'),
            (self.base_rigidity > 0, f'base_rigidity must be positive, got {self.base_rigidity}'),
            (self.rest_length >= 0, f'rest_length must be non-negative, got {self.rest_length}'),
            (0 < low <= high <= 1, f'alpha_range must satisfy 0 < low <= high <= 1, got {self.alpha_range}'),
            (self.samples_per_sequence >= 2, f'samples_per_sequence must be >= 2, got {self.samples_per_sequence}'),
            (self.n_sequences >= 1, f'n_sequences must be >= 1, got {self.n_sequences}'),
        )
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)

    @property
    def feature_dim(self) -> int:
        return self.n_balls * self.space_dim * self.sim_steps

@dataclass(frozen=True, eq=False)
class SpringsRun:
    """
    Output of a simulator run.

    Attributes:
        dataset (SequenceDataset): One sequence per system, trend truth = applied degradation exponent.
        alphas (dict[str, float]): Ageing factor of each sequence.
        rigidity_histories (dict[str, np.ndarray]): Rigidity of every spring at every sample, shape (N_X, n_springs).
    """

    dataset: SequenceDataset
    alphas: dict
    rigidity_histories: dict

    def metadata(self) -> dict:
        return {seq_id: {'alpha': alpha} for seq_id, alpha in self.alphas.items()}

def spring_forces(positions: np.ndarray, rigidity: np.ndarray, rest_length: float) -> np.ndarray:
    """
    Returns the force on every ball, F_a = sum_b -k_ab (|x_a - x_b| - L) unit(x_a - x_b).

    Args:
        positions (np.ndarray): Shape (n_balls, space_dim).
        rigidity (np.ndarray): Symmetric (n_balls, n_balls) rigidities, 0 where there is no spring.
        rest_length (float): Rest length L.

    Returns:
        np.ndarray: Forces, shape (n_balls, space_dim).
    """

    diff = positions[:, np.newaxis, :] - positions[np.newaxis, :, :]
    distance = np.sqrt((diff ** 2).sum(axis=2))
    np.fill_diagonal(distance, 1.0)
    magnitude = -rigidity * (distance - rest_length)
    return (magnitude[:, :, np.newaxis] * diff / np.maximum(distance, 1e-12)[:, :, np.newaxis]).sum(axis=1)

def integrate(positions: np.ndarray, velocities: np.ndarray, rigidity: np.ndarray, rest_length: float,
              dt: float, steps: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Semi-implicit Euler: v <- v + dt F(x), then x <- x + dt v.

    Args:
        positions (np.ndarray): Initial positions, shape (n_balls, space_dim).
        velocities (np.ndarray): Initial velocities, same shape.
        rigidity (np.ndarray): Spring rigidities.
        rest_length (float): Spring rest length.
        dt (float): Step size.
        steps (int): Number of steps.

    Returns:
        tuple[np.ndarray, np.ndarray]: Positions after every step, shape (steps, n_balls, space_dim), and the final
            velocities.

    Raises:
        NumericBlowup: If a coordinate leaves [-1e6, 1e6] or becomes non-finite.
    """

    positions = np.array(positions, dtype=float)
    velocities = np.array(velocities, dtype=float)
    trajectory = np.empty((steps,) + positions.shape)
    for step in range(steps):
        velocities += dt * spring_forces(positions, rigidity, rest_length)
        positions += dt * velocities
        trajectory[step] = positions
    largest = np.max(np.abs(trajectory))
    if not np.isfinite(largest) or largest > BLOWUP_LIMIT:
        raise NumericBlowup(f'ball positions reached {largest:.3g}; use a smaller dt than {dt}')
    return trajectory, velocities

def random_adjacency(rng: np.random.Generator, n_balls: int, connection_prob: float) -> np.ndarray:
    """
    Draws a symmetric spring graph in which every ball has at least one spring.

    Raises:
        IsolatedBallAfterRetries: If 100 draws in a row leave a ball without springs.
    """

    for _ in range(MAX_GRAPH_RETRIES):
        upper = np.triu(rng.random((n_balls, n_balls)) < connection_prob, k=1)
        adjacency = upper | upper.T
        if np.all(adjacency.any(axis=1)):
            return adjacency
    raise IsolatedBallAfterRetries(f'{MAX_GRAPH_RETRIES} spring graphs in a row left a ball isolated; '
                                   f'raise connection_prob above {connection_prob}')

class BallSpringsSimulator:
    """
    Class for generating ball-springs degradation sequences.

    Attributes:
        config (SpringsConfig): Simulator parameters.

    Methods:
        simulate_sequence(index: int) -> tuple: One sequence with its alpha and rigidity history.
        run() -> SpringsRun: Every sequence of the configured run.
    """

    def __init__(self, config: SpringsConfig) -> None:
        self.config = config

    def simulate_sequence(self, index: int) -> tuple[str, tuple, np.ndarray, float, np.ndarray]:
        """
        Simulates one system.

        Args:
            index (int): Sequence index; seeds the sequence's own generator.

        Returns:
            tuple: (seq_id, samples, trend truth, alpha, rigidity history).
        """

        config = self.config
        rng = make_rng(config.seed, index)
        seq_id = f'springs{index:05d}'
        alpha = float(rng.uniform(*config.alpha_range))
        adjacency = random_adjacency(rng, config.n_balls, config.connection_prob)
        first, second = np.nonzero(np.triu(adjacency, k=1))
        rigidity = np.where(adjacency, config.base_rigidity, 0.0)

        samples, history = [], []
        shape = (config.n_balls, config.space_dim)
        for i in range(1, config.samples_per_sequence + 1):
            history.append(rigidity[first, second].copy())
            trajectory, _ = integrate(rng.standard_normal(shape), np.zeros(shape), rigidity, config.rest_length,
                                      config.dt, config.sim_steps)
            samples.append(Sample(seq_id, i, trajectory.ravel()))
            if i < config.samples_per_sequence:
                spring = rng.integers(first.shape[0])
                rigidity[first[spring], second[spring]] *= alpha ** i
                rigidity[second[spring], first[spring]] = rigidity[first[spring], second[spring]]

        steps = np.arange(1, config.samples_per_sequence + 1, dtype=float)
        truth = np.log(1.0 / alpha) * steps * (steps - 1) / 2.0
        return seq_id, tuple(samples), truth, alpha, np.array(history)

    def run(self) -> SpringsRun:
        config = self.config
        results = parallel_map(self.simulate_sequence, config.n_sequences)
        dataset = SequenceDataset({seq_id: samples for seq_id, samples, _, _, _ in results}, config.feature_dim,
                                  {seq_id: truth for seq_id, _, truth, _, _ in results})
        logger.info('data_gen kind=springs sequences=%d samples=%d features=%d seed=%d', config.n_sequences,
                    config.samples_per_sequence, config.feature_dim, config.seed)
        return SpringsRun(dataset, {result[0]: result[3] for result in results},
                          {result[0]: result[4] for result in results})

def simulate_ball_springs(config: SpringsConfig) -> SequenceDataset:
    """
    Generates ball-springs sequences with their trend truth.

    Args:
        config (SpringsConfig): Simulator parameters.

    Returns:
        SequenceDataset: n_sequences sequences of samples_per_sequence flattened trajectories.
    """

    return BallSpringsSimulator(config).run().dataset
