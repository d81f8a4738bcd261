"""
Name: contamination.py
Description: Window-shuffle label noise: locally permutes samples so that some time-order labels become wrong.
Author: Connor Kasarda
Date: 2025-05-28

Notes:
    For each sequence, ceil(eta * N) positions are chosen without replacement and visited in increasing order.
    Around each chosen position i, the samples currently at positions i - ceil(M/2) + 1 ... i + floor(M/2) (clipped to
    the sequence) are shuffled; later windows act on the already shuffled arrangement. Time indices are then
    reassigned by position, while every sample keeps its clean_t, so clean labels stay recoverable.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
import math
import numpy as np
from common.errors import ConfigError, EmptyDataset, WindowTooLarge
from common.log import get_logger
from dataset.sequence_dataset import Sample, SequenceDataset
from embedding.param_set import make_rng

logger = get_logger(__name__)

@dataclass(frozen=True)
class ContaminationParams:
    """
    Attributes:
        eta (float): Prevalence, the share of positions that start a shuffle window, in [0, 1].
        M (int): Maximum temporal dispersion, the window width, at least 1.
        seed (int): Seed of the position choice and the shuffles.
    """

    eta: float
    M: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.eta <= 1:
            raise ConfigError(f'eta must lie in [0, 1], got {self.eta}')
        if int(self.M) < 1:
            raise ConfigError(f'M must be >= 1, got {self.M}')

def shuffled_arrangement(rng: np.random.Generator, n_samples: int, eta: float, width: int) -> np.ndarray:
    """
    Returns the original position of the sample that ends up at each position.
    """

    arrangement = np.arange(n_samples)
    count = math.ceil(round(eta * n_samples, 9))
    for i in np.sort(rng.choice(n_samples, size=count, replace=False)):
        low = max(0, i - math.ceil(width / 2) + 1)
        high = min(n_samples - 1, i + width // 2)
        arrangement[low:high + 1] = arrangement[low:high + 1][rng.permutation(high - low + 1)]
    return arrangement

def contaminate(dataset: SequenceDataset, params: ContaminationParams) -> SequenceDataset:
    """
    Applies window-shuffle contamination to every sequence.

    Args:
        dataset (SequenceDataset): Clean (or already contaminated) sequences.
        params (ContaminationParams): Prevalence, window width and seed.

    Returns:
        SequenceDataset: Same samples per sequence in a perturbed order, with t reassigned by position.

    Raises:
        EmptyDataset: If the dataset has no sequence.
        WindowTooLarge: If M exceeds the length of some sequence.
    """

    if len(dataset) == 0:
        raise EmptyDataset('contamination needs at least one sequence')
    shortest = min(len(samples) for samples in dataset.sequences.values())
    if params.M > shortest:
        raise WindowTooLarge(f'M = {params.M} exceeds the shortest sequence length {shortest}')
    sequences = {}
    for index, (seq_id, samples) in enumerate(dataset.sequences.items()):
        arrangement = shuffled_arrangement(make_rng(params.seed, index), len(samples), params.eta, params.M)
        sequences[seq_id] = tuple(Sample(seq_id, sample.t, samples[source].features, samples[source].clean_t)
                                  for sample, source in zip(samples, arrangement))
    result = SequenceDataset(sequences, dataset.feature_dim, dataset.trend_truth)
    logger.info('contaminate eta=%g M=%d seed=%d flipped=%.4f', params.eta, params.M, params.seed,
                label_flip_fraction(result))
    return result

def label_flip_fraction(dataset: SequenceDataset) -> float:
    """
    Share of within-sequence pairs whose time-order label disagrees with the clean label.

    Args:
        dataset (SequenceDataset): Possibly contaminated sequences.

    Returns:
        float: Flipped pairs over all pairs, pooled across sequences.
    """

    flipped, total = 0, 0
    for seq_id in dataset.seq_ids:
        times = dataset.time_indices(seq_id)
        clean = dataset.clean_indices(seq_id)
        first, second = np.triu_indices(times.shape[0], k=1)
        flipped += int(np.sum((times[first] < times[second]) != (clean[first] < clean[second])))
        total += first.shape[0]
    return flipped / total if total else 0.0
