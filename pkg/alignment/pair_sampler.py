"""
Name: pair_sampler.py
Description: Builds labeled training pairs: within-sequence time-order pairs and comparable survival pairs.
Author: Connor Kasarda
Date: 2025-05-11

Notes:
    Every pair gets its orientation from a fair coin, so both labels are equally likely.
    Sequence pairs: C = 1 iff t_u < t_v. Survival pairs: C = 1 iff T_u < T_v, and a pair is only comparable when the
    shorter of the two times belongs to a record whose event was observed.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import ConfigError, SequenceTooShort
from alignment.labeled_pair import LabeledPair, PairArrays, PairMode, PairPolicy, MAX_ALL_PAIRS
from dataset.sequence_dataset import SequenceDataset
from dataset.survival_dataset import SurvivalDataset
from embedding.param_set import make_rng

def sequence_offsets(dataset: SequenceDataset) -> dict[str, int]:
    """
    Returns the feature-matrix row of the first sample of each sequence.
    """

    offsets, row = {}, 0
    for seq_id, samples in dataset.sequences.items():
        offsets[seq_id] = row
        row += len(samples)
    return offsets

def orient(rng: np.random.Generator, first: np.ndarray, second: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Swaps each (first, second) pair with probability 1/2.
    """

    swap = rng.random(first.shape[0]) < 0.5
    return np.where(swap, second, first), np.where(swap, first, second)

def sample_pair_arrays(dataset: SequenceDataset, policy: PairPolicy, epoch: int = 0) -> PairArrays:
    """
    Draws the labeled pairs of one epoch as row indices into dataset.feature_matrix().

    Args:
        dataset (SequenceDataset): Sequences to draw from.
        policy (PairPolicy): Pair count, mode and seed.
        epoch (int): Epoch number; each epoch draws independently. Defaults to 0.

    Returns:
        PairArrays: The pairs, sequence by sequence.

    Raises:
        SequenceTooShort: If a sequence has fewer than 2 samples.
        ConfigError: If all_pairs mode would enumerate more than 10^6 pairs.
    """

    if policy.mode is PairMode.ALL_PAIRS:
        total = sum(len(samples) * (len(samples) - 1) // 2 for samples in dataset.sequences.values())
        if total > MAX_ALL_PAIRS:
            raise ConfigError(f'all_pairs mode would enumerate {total} pairs, the limit is {MAX_ALL_PAIRS}')
    rng = make_rng(policy.seed, epoch)
    offsets = sequence_offsets(dataset)
    parts = []
    for seq_id, samples in dataset.sequences.items():
        n_samples = len(samples)
        if n_samples < 2:
            raise SequenceTooShort(f'sequence {seq_id!r} has {n_samples} sample(s)')
        first, second = np.triu_indices(n_samples, k=1)
        if policy.mode is PairMode.SAMPLED:
            count = min(policy.pairs_per_sequence_per_epoch, first.shape[0])
            chosen = rng.choice(first.shape[0], size=count, replace=False)
            first, second = first[chosen], second[chosen]
        u, v = orient(rng, first, second)
        times = dataset.time_indices(seq_id)
        label = (times[u] < times[v]).astype(int)
        parts.append(PairArrays(u + offsets[seq_id], v + offsets[seq_id], label))
    return PairArrays.concatenate(parts)

def sample_pairs(dataset: SequenceDataset, policy: PairPolicy, epoch: int = 0) -> list[LabeledPair]:
    """
    Draws labeled within-sequence pairs.

    Args:
        dataset (SequenceDataset): Sequences to draw from.
        policy (PairPolicy): Pair count, mode and seed.
        epoch (int): Epoch number. Defaults to 0.

    Returns:
        list[LabeledPair]: Pairs referencing samples as (seq_id, position).
    """

    return sample_pair_arrays(dataset, policy, epoch).to_labeled_pairs(dataset.refs())

def comparable_pair_arrays(times: np.ndarray, events: np.ndarray, seed: int = 0) -> PairArrays:
    """
    Enumerates comparable survival pairs as row indices.

    Args:
        times (np.ndarray): Observed times.
        events (np.ndarray): Event indicators (1 observed, 0 censored).
        seed (int): Seed of the orientation coins. Defaults to 0.

    Returns:
        PairArrays: Every comparable pair once, label C = 1 iff T_u < T_v.
    """

    times = np.asarray(times, dtype=float)
    events = np.asarray(events, dtype=int)
    firsts, seconds = [], []
    for i in range(times.shape[0] - 1):
        others = np.arange(i + 1, times.shape[0])
        other_times = times[others]
        # the shorter time must be an observed event; equal times are never comparable
        comparable = ((times[i] < other_times) & (events[i] == 1)) | ((other_times < times[i]) & (events[others] == 1))
        firsts.append(np.full(int(comparable.sum()), i))
        seconds.append(others[comparable])
    first = np.concatenate(firsts) if firsts else np.zeros(0, dtype=int)
    second = np.concatenate(seconds) if seconds else np.zeros(0, dtype=int)
    u, v = orient(make_rng(seed), first, second)
    return PairArrays(u, v, (times[u] < times[v]).astype(int))

def comparable_pairs(dataset: SurvivalDataset, seed: int = 0) -> list[LabeledPair]:
    """
    Returns every comparable pair of a survival dataset.

    Args:
        dataset (SurvivalDataset): The survival records.
        seed (int): Seed of the orientation coins. Defaults to 0.

    Returns:
        list[LabeledPair]: Pairs referencing records by id; empty when nothing is comparable.
    """

    return comparable_pair_arrays(dataset.times(), dataset.events(), seed).to_labeled_pairs(dataset.ids)
