"""
Name: windowing.py
Description: Cuts long degradation records into short overlapping sub-trajectories, each a trend episode of its own.
Author: Connor Kasarda
Date: 2025-06-02

Notes:
    A few long run-to-failure records give many short sequences this way: with length 25 and stride 5, a record of
    206 samples yields 37 sub-trajectories named '<seq_id>/<k>'.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import numpy as np
from common.errors import ConfigError, EmptyDataset
from common.log import get_logger
from dataset.sequence_dataset import Sample, SequenceDataset

logger = get_logger(__name__)

def extract_subtrajectories(dataset: SequenceDataset, length: int, stride: int) -> SequenceDataset:
    """
    Returns the rolling windows of every sequence as new sequences.

    Args:
        dataset (SequenceDataset): Source sequences.
        length (int): Samples per window, at least 2.
        stride (int): Offset between consecutive window starts, at least 1.

    Returns:
        SequenceDataset: One sequence per window; time indices and trend truth are carried over.

    Raises:
        ConfigError: If length < 2 or stride < 1.
        EmptyDataset: If no sequence is long enough for a single window.
    """

    if length < 2 or stride < 1:
        raise ConfigError(f'window length must be >= 2 and stride >= 1, got length={length} stride={stride}')
    sequences = {}
    truth = {} if dataset.trend_truth is not None else None
    skipped = 0
    for seq_id, samples in dataset.sequences.items():
        if len(samples) < length:
            skipped += 1
            continue
        clean_truth = dataset.clean_trend(seq_id) if truth is not None else None
        for k, start in enumerate(range(0, len(samples) - length + 1, stride)):
            window_id = f'{seq_id}/{k}'
            window = samples[start:start + length]
            sequences[window_id] = tuple(
                Sample(window_id, sample.t, sample.features, sample.clean_t) for sample in window)
            if truth is not None:
                order = np.argsort([sample.clean_t for sample in window], kind='stable')
                truth[window_id] = clean_truth[start:start + length][order]
    if not sequences:
        raise EmptyDataset(f'no sequence has the {length} samples a window needs')
    if skipped:
        logger.info('skipped %d sequence(s) shorter than the window length %d', skipped, length)
    return SequenceDataset(sequences, dataset.feature_dim, truth)
