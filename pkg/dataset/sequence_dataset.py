"""
Name: sequence_dataset.py
Description: Samples and the sequence dataset that groups them into monotone trend episodes.
Author: Connor Kasarda
Date: 2025-05-03

Notes:
    A sample reference is the pair (seq_id, position) where position is the 0-based index of the sample inside its
    sequence. The time index t is an ordinal; only its order matters.
    clean_t is the time index a sample had before any label contamination. trend_truth is stored in clean order, so it
    stays non-decreasing even after a contamination pass reshuffles the samples.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator
import numpy as np
from common.errors import InvalidDataset

SampleRef = tuple[str, int]

@dataclass(frozen=True, eq=False)
class Sample:
    """
    One observation of a monitored system.

    Attributes:
        seq_id (str): Identifier of the sequence the sample belongs to.
        t (int): Time index inside the sequence.
        features (np.ndarray): Feature vector of length d, read-only.
        clean_t (int): Time index before contamination. Defaults to t.
    """

    seq_id: str
    t: int
    features: np.ndarray
    clean_t: int = field(default=None)

    def __post_init__(self) -> None:
        """
        Freezes the feature vector and resolves clean_t.

        Raises:
            InvalidDataset: If the features are not a finite 1-D vector.
        """

        features = np.array(self.features, dtype=float)
        if features.ndim != 1:
            raise InvalidDataset(f'sample {self.seq_id}@{self.t}: features must be a vector')
        if not np.all(np.isfinite(features)):
            raise InvalidDataset(f'sample {self.seq_id}@{self.t}: features contain NaN or Inf')
        features.flags.writeable = False
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 't', int(self.t))
        object.__setattr__(self, 'clean_t', int(self.t if self.clean_t is None else self.clean_t))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sample):
            return NotImplemented
        return (self.seq_id == other.seq_id and self.t == other.t and self.clean_t == other.clean_t
                and np.array_equal(self.features, other.features))

    def __hash__(self) -> int:
        return hash((self.seq_id, self.t, self.clean_t))

@dataclass(frozen=True, eq=False)
class SequenceDataset:
    """
    Collection of sequences, each holding samples with strictly increasing time indices.

    Attributes:
        sequences (dict[str, tuple[Sample, ...]]): Ordered map from seq_id to its samples, sorted by t.
        feature_dim (int): Feature dimension d shared by all samples.
        trend_truth (dict[str, tuple[float, ...]] | None): Known trend per sequence in clean order (synthetic data only).

    Methods:
        seq_ids -> list[str]: Sequence identifiers in dataset order.
        n_samples -> int: Total number of samples.
        refs() -> list[SampleRef]: All sample references in dataset order.
        features_of(ref: SampleRef) -> np.ndarray: Feature vector of a referenced sample.
        feature_matrix() -> np.ndarray: All feature vectors stacked in refs() order.
        sequence_matrix(seq_id: str) -> np.ndarray: Feature vectors of one sequence.
        time_indices(seq_id: str) -> np.ndarray: Current time indices of one sequence.
        clean_indices(seq_id: str) -> np.ndarray: Pre-contamination time indices of one sequence.
        clean_trend(seq_id: str) -> np.ndarray: Trend truth aligned with the current sample order.
        subset(seq_ids: Iterable[str]) -> SequenceDataset: Dataset restricted to some sequences.
    """

    sequences: dict
    feature_dim: int
    trend_truth: dict = None

    def __post_init__(self) -> None:
        """
        Normalizes containers and checks every invariant.

        Raises:
            InvalidDataset: If any invariant is violated.
        """

        if int(self.feature_dim) < 1:
            raise InvalidDataset(f'feature dimension must be positive, got {self.feature_dim}')
        object.__setattr__(self, 'feature_dim', int(self.feature_dim))

        sequences = {}
        for seq_id, samples in self.sequences.items():
            samples = tuple(samples)
            self._check_sequence(seq_id, samples)
            sequences[seq_id] = samples
        object.__setattr__(self, 'sequences', sequences)

        if self.trend_truth is not None:
            truth = {}
            for seq_id, values in self.trend_truth.items():
                if seq_id not in sequences:
                    raise InvalidDataset(f'trend truth given for unknown sequence {seq_id!r}')
                truth[seq_id] = tuple(float(value) for value in values)
            missing = set(sequences) - set(truth)
            if missing:
                raise InvalidDataset(f'trend truth missing for sequences {sorted(missing)}')
            for seq_id, values in truth.items():
                self._check_truth(seq_id, values, len(sequences[seq_id]))
            object.__setattr__(self, 'trend_truth', {seq_id: truth[seq_id] for seq_id in sequences})

    def _check_sequence(self, seq_id: str, samples: tuple) -> None:
        """
        Checks one sequence: length, dimensions, ownership and strictly increasing time.

        Args:
            seq_id (str): The sequence identifier.
            samples (tuple[Sample, ...]): Its samples in order.
        """

        if len(samples) < 2:
            raise InvalidDataset(f'sequence {seq_id!r} has {len(samples)} sample(s), at least 2 are required')
        for sample in samples:
            if sample.seq_id != seq_id:
                raise InvalidDataset(f'sample with seq_id {sample.seq_id!r} filed under {seq_id!r}')
            if sample.features.shape[0] != self.feature_dim:
                raise InvalidDataset(
                    f'sequence {seq_id!r}, t={sample.t}: {sample.features.shape[0]} features, expected {self.feature_dim}')
        times = np.array([sample.t for sample in samples])
        if np.any(np.diff(times) <= 0):
            raise InvalidDataset(f'sequence {seq_id!r}: time indices are not strictly increasing')
        clean = [sample.clean_t for sample in samples]
        if len(set(clean)) != len(clean):
            raise InvalidDataset(f'sequence {seq_id!r}: clean time indices repeat')

    @staticmethod
    def _check_truth(seq_id: str, values: tuple, length: int) -> None:
        """
        Checks one trend truth vector: length, finiteness and monotonicity.
        """

        if len(values) != length:
            raise InvalidDataset(f'trend truth of {seq_id!r} has {len(values)} values for {length} samples')
        array = np.array(values, dtype=float)
        if not np.all(np.isfinite(array)):
            raise InvalidDataset(f'trend truth of {seq_id!r} contains NaN or Inf')
        if np.any(np.diff(array) < 0):
            raise InvalidDataset(f'trend truth of {seq_id!r} is not non-decreasing')

    @property
    def seq_ids(self) -> list[str]:
        return list(self.sequences)

    @property
    def n_samples(self) -> int:
        return sum(len(samples) for samples in self.sequences.values())

    def __len__(self) -> int:
        """
        Returns the number of sequences.
        """

        return len(self.sequences)

    def __iter__(self) -> Iterator[Sample]:
        for samples in self.sequences.values():
            yield from samples

    def refs(self) -> list[SampleRef]:
        return [(seq_id, position) for seq_id, samples in self.sequences.items() for position in range(len(samples))]

    def features_of(self, ref: SampleRef) -> np.ndarray:
        seq_id, position = ref
        return self.sequences[seq_id][position].features

    def feature_matrix(self) -> np.ndarray:
        return np.vstack([sample.features for sample in self])

    def sequence_matrix(self, seq_id: str) -> np.ndarray:
        return np.vstack([sample.features for sample in self.sequences[seq_id]])

    def time_indices(self, seq_id: str) -> np.ndarray:
        return np.array([sample.t for sample in self.sequences[seq_id]], dtype=int)

    def clean_indices(self, seq_id: str) -> np.ndarray:
        return np.array([sample.clean_t for sample in self.sequences[seq_id]], dtype=int)

    def clean_trend(self, seq_id: str) -> np.ndarray:
        """
        Returns the trend truth of one sequence aligned with its current sample order.

        Args:
            seq_id (str): The sequence identifier.

        Returns:
            np.ndarray: Truth value of each sample, following the sample through any contamination.

        Raises:
            InvalidDataset: If the dataset carries no trend truth.
        """

        if self.trend_truth is None:
            raise InvalidDataset('dataset has no trend truth')
        clean = self.clean_indices(seq_id)
        clean_rank = np.argsort(np.argsort(clean, kind='stable'), kind='stable')
        return np.asarray(self.trend_truth[seq_id], dtype=float)[clean_rank]

    def subset(self, seq_ids: Iterable[str]) -> 'SequenceDataset':
        seq_ids = list(seq_ids)
        truth = None if self.trend_truth is None else {seq_id: self.trend_truth[seq_id] for seq_id in seq_ids}
        return SequenceDataset({seq_id: self.sequences[seq_id] for seq_id in seq_ids}, self.feature_dim, truth)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SequenceDataset):
            return NotImplemented
        if self.feature_dim != other.feature_dim or list(self.sequences) != list(other.sequences):
            return False
        if self.trend_truth != other.trend_truth:
            return False
        return all(self.sequences[seq_id] == other.sequences[seq_id] for seq_id in self.sequences)

    __hash__ = None

def build_sequence_dataset(
    features: dict,
    trend_truth: dict = None,
    time_indices: dict = None
) -> SequenceDataset:
    """
    Builds a dataset from per-sequence feature matrices.

    Args:
        features (dict[str, np.ndarray]): Map from seq_id to an (N_X, d) matrix, rows in time order.
        trend_truth (dict[str, np.ndarray], optional): Map from seq_id to N_X trend values.
        time_indices (dict[str, np.ndarray], optional): Map from seq_id to time indices. Defaults to 0..N_X-1.

    Returns:
        SequenceDataset: The validated dataset.
    """

    sequences = {}
    feature_dim = None
    for seq_id, matrix in features.items():
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        feature_dim = matrix.shape[1] if feature_dim is None else feature_dim
        times = range(matrix.shape[0]) if time_indices is None else time_indices[seq_id]
        sequences[seq_id] = tuple(Sample(seq_id, int(t), row) for t, row in zip(times, matrix))
    if feature_dim is None:
        raise InvalidDataset('cannot build a dataset without sequences')
    return SequenceDataset(sequences, feature_dim, trend_truth)
