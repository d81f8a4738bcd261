"""
Name: correlation.py
Description: Pearson and Spearman correlation between estimated scores and true trends.
Author: Connor Kasarda
Date: 2025-05-20

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from enum import Enum
import numpy as np
from scipy.stats import rankdata
from common.errors import ConstantVector, LengthMismatch
from common.log import get_logger

logger = get_logger(__name__)

class CorrelationKind(str, Enum):
    SPEARMAN = 'spearman'
    PEARSON = 'pearson'

def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    centered_a = a - a.mean()
    centered_b = b - b.mean()
    # sqrt(d * d) == d in IEEE arithmetic, so identical inputs give exactly 1
    denominator = np.sqrt(np.dot(centered_a, centered_a) * np.dot(centered_b, centered_b))
    return float(np.clip(np.dot(centered_a, centered_b) / denominator, -1.0, 1.0))

def rank_correlation(a: object, b: object, kind: CorrelationKind = CorrelationKind.SPEARMAN) -> float:
    """
    Correlation between two equally long vectors.

    Args:
        a (Sequence[float]): First vector.
        b (Sequence[float]): Second vector.
        kind (CorrelationKind): spearman (Pearson on average ranks) or pearson. Defaults to spearman.

    Returns:
        float: The correlation in [-1, 1].

    Raises:
        LengthMismatch: If the lengths differ or are below 2.
        ConstantVector: If either vector is constant.
    """

    kind = CorrelationKind(kind)
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape or a.shape[0] < 2:
        raise LengthMismatch(f'correlation needs two vectors of equal length >= 2, got {a.shape[0]} and {b.shape[0]}')
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise ConstantVector('correlation is undefined for a constant vector')
    if kind is CorrelationKind.SPEARMAN:
        return _pearson(rankdata(a), rankdata(b))
    return _pearson(a, b)

def per_sequence_correlation(scores: dict, truth: dict,
                             kind: CorrelationKind = CorrelationKind.SPEARMAN) -> tuple[float, float]:
    """
    Mean and standard deviation of the absolute correlation computed sequence by sequence.

    Args:
        scores (dict[str, np.ndarray]): Scores of each sequence.
        truth (dict[str, np.ndarray]): True trend of each sequence, aligned with the scores.
        kind (CorrelationKind): Correlation kind. Defaults to spearman.

    Returns:
        tuple[float, float]: (mean, std) of |correlation| over the sequences where it is defined.

    Raises:
        ConstantVector: If the correlation is undefined for every sequence.
    """

    values, skipped = [], 0
    for seq_id, sequence_scores in scores.items():
        try:
            values.append(abs(rank_correlation(sequence_scores, truth[seq_id], kind)))
        except ConstantVector:
            skipped += 1
    if skipped:
        logger.warning('%d sequence(s) with constant scores or truth left out of the %s correlation', skipped,
                       CorrelationKind(kind).value)
    if not values:
        raise ConstantVector('every sequence has constant scores or truth')
    return float(np.mean(values)), float(np.std(values))
