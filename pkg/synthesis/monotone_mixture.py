"""
Name: monotone_mixture.py
Description: Sequences whose features are a nonlinear mixture of a monotone trend and nuisance factors.
Author: Connor Kasarda
Date: 2025-05-26

Notes:
    Latent vector z_i = [trend_scale * h(tau_i), nuisance_scale * nuisance_i], with h a strictly monotone transform
    rescaled to [-1, 1] and the nuisance components cycling through a sinusoid of random-walk phase (cycle), a
    fixed-period sinusoid (seasonality) and white noise (irregularity).
    The transforms act on 1 + tau, so their slope on [0, 1] stays within a bounded ratio of its mean.
    Features are tanh(A z + b) plus Gaussian noise. A = U diag(s) V^T with random orthogonal U, V and singular values s
    in [max(0.75, 1 / max_condition), 1], so z is recoverable and no latent direction is squeezed.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np
from common.errors import ConfigError
from common.log import get_logger
from dataset.sequence_dataset import Sample, SequenceDataset
from embedding.param_set import make_rng
from synthesis.seeding import parallel_map

logger = get_logger(__name__)

MIXING_STREAM = 0
SEQUENCE_STREAM = 1
MIN_SINGULAR_VALUE = 0.75

class TrendTransform(str, Enum):
    IDENTITY = 'identity'
    CUBE = 'cube'
    EXP = 'exp'

    def apply(self, tau: np.ndarray) -> np.ndarray:
        if self is TrendTransform.CUBE:
            return (1.0 + tau) ** 3
        if self is TrendTransform.EXP:
            return np.exp(tau)
        return tau

    def rescaled(self, tau: np.ndarray) -> np.ndarray:
        """
        Maps tau in [0, 1] through the transform onto [-1, 1], keeping it strictly increasing.
        """

        low, high = self.apply(np.array([0.0, 1.0]))
        return (self.apply(tau) - low) / (high - low) * 2.0 - 1.0

class MixingKind(str, Enum):
    RANDOM = 'random'
    IDENTITY = 'identity'

@dataclass(frozen=True)
class MixtureConfig:
    """
    Parameters of the monotone-mixture generator.

    Attributes:
        n_sequences (int): Number of sequences.
        samples_per_sequence (int): Samples N_X per sequence.
        nuisance_dim (int): Number of nuisance factors.
        trend_transform (TrendTransform): Monotone transform h applied to tau before mixing.
        mixing (MixingKind): random (tanh of a random affine map) or identity (tanh only).
        noise_std (float): Standard deviation of the additive feature noise.
        trend_scale (float): Half-range of the trend coordinate in the latent vector.
        nuisance_scale (float): Amplitude of the nuisance coordinates in the latent vector.
        season_period (int): Period of the seasonal factors, in samples.
        max_condition (float): Largest accepted condition number of the mixing matrix.
        seed (int): Master seed.
    """

    n_sequences: int = 200
    samples_per_sequence: int = 50
    nuisance_dim: int = 3
    trend_transform: TrendTransform = TrendTransform.IDENTITY
    mixing: MixingKind = MixingKind.RANDOM
    noise_std: float = 0.05
    trend_scale: float = 2.0
    nuisance_scale: float = 0.5
    season_period: int = 7
    max_condition: float = 20.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name, enum in (('trend_transform', TrendTransform), ('mixing', MixingKind)):
            try:
                object.__setattr__(self, name, enum(getattr(self, name)))
            except ValueError:
                raise ConfigError(f'unknown {name} {getattr(self, name)!r}') from None
        checks = (
            (self.n_sequences >= 1, f'n_sequences must be >= 1, got {self.n_sequences}'),
            (self.samples_per_sequence >= 2, f'samples_per_sequence must be >= 2, got {self.samples_per_sequence}'),
            (self.nuisance_dim >= 0, f'nuisance_dim must be >= 0, got {self.nuisance_dim}'),
            (self.noise_std >= 0, f'noise_std must be >= 0, got {self.noise_std}'),
            (self.trend_scale > 0, f'trend_scale must be positive, got {self.trend_scale}'),
            (self.nuisance_scale >= 0, f'nuisance_scale must be >= 0, got {self.nuisance_scale}'),
            (self.season_period >= 2, f'season_period must be >= 2, got {self.season_period}'),
            (self.max_condition >= 1, f'max_condition must be >= 1, got {self.max_condition}'),
        )
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)

    @property
    def latent_dim(self) -> int:
        return 1 + self.nuisance_dim

def random_orthogonal(rng: np.random.Generator, size: int) -> np.ndarray:
    """
    Draws a uniformly distributed orthogonal matrix from the QR factors of a Gaussian matrix.
    """

    q, r = np.linalg.qr(rng.standard_normal((size, size)))
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)

class MixtureGenerator:
    """
    Class for generating monotone-mixture sequences.

    Attributes:
        config (MixtureConfig): Generator parameters.
        matrix (np.ndarray): Mixing matrix A, shared by all sequences.
        offset (np.ndarray): Mixing offset b.

    Methods:
        latent_sequence(index: int) -> tuple[np.ndarray, np.ndarray]: tau and the latent vectors of one sequence.
        mix(latent: np.ndarray) -> np.ndarray: tanh(A z + b) for every latent row.
        generate() -> SequenceDataset: Every sequence of the configured run.
    """

    def __init__(self, config: MixtureConfig) -> None:
        self.config = config
        self.matrix, self.offset = self._mixing_map()

    def _mixing_map(self) -> tuple[np.ndarray, np.ndarray]:
        size = self.config.latent_dim
        if self.config.mixing is MixingKind.IDENTITY:
            return np.eye(size), np.zeros(size)
        rng = make_rng(self.config.seed, MIXING_STREAM)
        smallest = max(MIN_SINGULAR_VALUE, 1.0 / self.config.max_condition)
        singular_values = rng.uniform(smallest, 1.0, size)
        matrix = random_orthogonal(rng, size) @ np.diag(singular_values) @ random_orthogonal(rng, size).T
        logger.debug('mixing condition=%.3f', singular_values.max() / singular_values.min())
        return matrix, rng.normal(0.0, 0.1, size)

    def latent_sequence(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        """
        Draws the trend and latent factors of one sequence.

        Args:
            index (int): Sequence index.

        Returns:
            tuple[np.ndarray, np.ndarray]: tau, strictly increasing in (0, 1], and the latent matrix (N_X, 1 + nuisance).
        """

        config = self.config
        rng = make_rng(config.seed, SEQUENCE_STREAM, index)
        n_samples = config.samples_per_sequence
        increments = rng.exponential(1.0, n_samples)
        tau = np.cumsum(increments) / increments.sum()
        columns = [config.trend_scale * config.trend_transform.rescaled(tau)]
        steps = np.arange(n_samples)
        for k in range(config.nuisance_dim):
            if k % 3 == 0:
                phase = rng.uniform(0.0, 2.0 * np.pi) + np.cumsum(rng.normal(0.5, 0.2, n_samples))
                columns.append(config.nuisance_scale * np.sin(phase))
            elif k % 3 == 1:
                columns.append(config.nuisance_scale
                               * np.sin(2.0 * np.pi * steps / config.season_period + rng.uniform(0.0, 2.0 * np.pi)))
            else:
                columns.append(config.nuisance_scale * rng.standard_normal(n_samples))
        return tau, np.column_stack(columns)

    def mix(self, latent: np.ndarray) -> np.ndarray:
        return np.tanh(latent @ self.matrix.T + self.offset)

    def _sequence(self, index: int) -> tuple[str, tuple, np.ndarray]:
        tau, latent = self.latent_sequence(index)
        features = self.mix(latent)
        if self.config.noise_std > 0:
            rng = make_rng(self.config.seed, SEQUENCE_STREAM, index, 1)
            features = features + rng.normal(0.0, self.config.noise_std, features.shape)
        seq_id = f'mixture{index:05d}'
        samples = tuple(Sample(seq_id, t, row) for t, row in enumerate(features, start=1))
        return seq_id, samples, tau

    def generate(self) -> SequenceDataset:
        config = self.config
        results = parallel_map(self._sequence, config.n_sequences)
        logger.info('data_gen kind=mixture sequences=%d samples=%d transform=%s seed=%d', config.n_sequences,
                    config.samples_per_sequence, config.trend_transform.value, config.seed)
        return SequenceDataset({seq_id: samples for seq_id, samples, _ in results}, config.latent_dim,
                               {seq_id: tau for seq_id, _, tau in results})

def generate_monotone_mixture(config: MixtureConfig) -> SequenceDataset:
    """
    Generates monotone-mixture sequences with tau as trend truth.

    Args:
        config (MixtureConfig): Generator parameters.

    Returns:
        SequenceDataset: n_sequences sequences with 1 + nuisance_dim features.
    """

    return MixtureGenerator(config).generate()
