"""
Name: labeled_pair.py
Description: Labeled sample pairs and the policy that decides how many are drawn per epoch.
Author: Connor Kasarda
Date: 2025-05-11

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Hashable
import numpy as np
from common.errors import ConfigError, InvalidDataset

@dataclass(frozen=True)
class LabeledPair:
    """
    Two sample references and the order label C.

    Attributes:
        u (Hashable): First sample reference, (seq_id, position) for sequences or a record id for survival data.
        v (Hashable): Second sample reference.
        label (int): 1 if u comes before v (earlier time index, or shorter lifespan), else 0.
    """

    u: Hashable
    v: Hashable
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise InvalidDataset(f'pair label must be 0 or 1, got {self.label!r}')

    def swapped(self) -> 'LabeledPair':
        return LabeledPair(self.v, self.u, 1 - self.label)

class PairMode(str, Enum):
    ALL_PAIRS = 'all_pairs'
    SAMPLED = 'sampled'

MAX_ALL_PAIRS = 10 ** 6

@dataclass(frozen=True)
class PairPolicy:
    """
    How pairs are drawn from each sequence.

    Attributes:
        pairs_per_sequence_per_epoch (int): Number P of unordered pairs drawn per sequence and epoch (sampled mode).
        mode (PairMode): all_pairs enumerates every pair, sampled draws P of them.
        seed (int): Seed of the pair draws and orientation coins.
    """

    pairs_per_sequence_per_epoch: int = 32
    mode: PairMode = PairMode.SAMPLED
    seed: int = 0

    def __post_init__(self) -> None:
        if int(self.pairs_per_sequence_per_epoch) < 1:
            raise ConfigError(f'pairs_per_sequence_per_epoch must be >= 1, got {self.pairs_per_sequence_per_epoch}')
        try:
            object.__setattr__(self, 'mode', PairMode(self.mode))
        except ValueError:
            raise ConfigError(f'unknown pair mode {self.mode!r}') from None

@dataclass(frozen=True, eq=False)
class PairArrays:
    """
    Pairs as parallel arrays of row indices into a feature matrix, the form training works on.

    Attributes:
        u (np.ndarray): Row of the first sample of each pair.
        v (np.ndarray): Row of the second sample of each pair.
        label (np.ndarray): Label C of each pair.
    """

    u: np.ndarray
    v: np.ndarray
    label: np.ndarray

    def __len__(self) -> int:
        return int(self.label.shape[0])

    def take(self, indices: np.ndarray) -> 'PairArrays':
        return PairArrays(self.u[indices], self.v[indices], self.label[indices])

    def to_labeled_pairs(self, refs: list) -> list[LabeledPair]:
        """
        Converts row indices back into sample references.

        Args:
            refs (list[Hashable]): Reference of each feature-matrix row.

        Returns:
            list[LabeledPair]: One LabeledPair per pair.
        """

        return [LabeledPair(refs[u], refs[v], int(label)) for u, v, label in zip(self.u, self.v, self.label)]

    @classmethod
    def concatenate(cls, parts: list) -> 'PairArrays':
        if not parts:
            empty = np.zeros(0, dtype=int)
            return cls(empty, empty, empty)
        return cls(np.concatenate([part.u for part in parts]), np.concatenate([part.v for part in parts]),
                   np.concatenate([part.label for part in parts]))
