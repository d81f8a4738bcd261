"""
Name: trend_evaluation.py
Description: Scores held-out sequences and compares the scores with the true trend.
Author: Connor Kasarda
Date: 2025-06-03

Notes:
    Correlations are reported as mean and standard deviation of the absolute per-sequence value; Spearman is the
    primary number since the trend is only recoverable up to a monotone transform.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, asdict
import numpy as np
from dataset.sequence_dataset import SequenceDataset
from embedding.embedding_model import EmbeddingModel
from alignment.labeled_pair import PairArrays
from alignment.pair_sampler import sequence_offsets
from estimation.contrastive import accuracy_from_scores
from evaluation.correlation import CorrelationKind, per_sequence_correlation, rank_correlation
from evaluation.mann_kendall import INCREASING, mann_kendall

@dataclass(frozen=True)
class TrendEvaluation:
    """
    Metrics of a model on sequences with known trend.

    Attributes:
        spearman_abs (float): Mean absolute per-sequence Spearman correlation with the truth.
        spearman_abs_std (float): Its standard deviation.
        pearson_abs (float): Mean absolute per-sequence Pearson correlation.
        pearson_abs_std (float): Its standard deviation.
        pooled_spearman (float): Spearman correlation over all samples at once.
        mk_S_mean (float): Mean Mann-Kendall S of the scores in time order.
        mk_normalized_mean (float): Mean normalized S.
        mk_increasing_fraction (float): Share of sequences whose scores trend significantly upward.
        pairwise_accuracy (float): Accuracy on within-sequence pairs labeled by clean time order.
        n_sequences (int): Number of evaluated sequences.
    """

    spearman_abs: float
    spearman_abs_std: float
    pearson_abs: float
    pearson_abs_std: float
    pooled_spearman: float
    mk_S_mean: float
    mk_normalized_mean: float
    mk_increasing_fraction: float
    pairwise_accuracy: float
    n_sequences: int

    def to_metrics(self) -> dict:
        return asdict(self)

def sequence_scores(model: EmbeddingModel, dataset: SequenceDataset) -> dict:
    """
    Returns the scores of every sequence, in sample order.
    """

    scores = np.asarray(model.score(dataset.feature_matrix()), dtype=float)
    offsets = sequence_offsets(dataset)
    return {seq_id: scores[offsets[seq_id]:offsets[seq_id] + len(samples)]
            for seq_id, samples in dataset.sequences.items()}

def clean_pairs(dataset: SequenceDataset) -> PairArrays:
    """
    Every within-sequence pair as feature-matrix rows, labeled by clean time order.
    """

    offsets = sequence_offsets(dataset)
    parts = []
    for seq_id in dataset.seq_ids:
        clean = dataset.clean_indices(seq_id)
        first, second = np.triu_indices(clean.shape[0], k=1)
        label = (clean[first] < clean[second]).astype(int)
        parts.append(PairArrays(first + offsets[seq_id], second + offsets[seq_id], label))
    return PairArrays.concatenate(parts)

def clean_pair_accuracy(model: EmbeddingModel, dataset: SequenceDataset) -> float:
    """
    Pairwise accuracy against the clean time order, the metric of the label-noise experiments.

    Args:
        model (EmbeddingModel): The trend extractor.
        dataset (SequenceDataset): Evaluation sequences, possibly contaminated.

    Returns:
        float: Accuracy over all within-sequence pairs.
    """

    return accuracy_from_scores(np.asarray(model.score(dataset.feature_matrix()), dtype=float), clean_pairs(dataset))

def evaluate_trend(model: EmbeddingModel, dataset: SequenceDataset) -> TrendEvaluation:
    """
    Evaluates a model on sequences carrying trend truth.

    Args:
        model (EmbeddingModel): The trend extractor.
        dataset (SequenceDataset): Held-out sequences with trend_truth.

    Returns:
        TrendEvaluation: Correlation, Mann-Kendall and pair accuracy metrics.

    Raises:
        InvalidDataset: If the dataset has no trend truth.
        ConstantVector: If the correlation is undefined for every sequence.
    """

    scores = sequence_scores(model, dataset)
    truth = {seq_id: dataset.clean_trend(seq_id) for seq_id in dataset.seq_ids}
    spearman = per_sequence_correlation(scores, truth, CorrelationKind.SPEARMAN)
    pearson = per_sequence_correlation(scores, truth, CorrelationKind.PEARSON)
    pooled = rank_correlation(np.concatenate(list(scores.values())), np.concatenate(list(truth.values())))

    tests = [mann_kendall(values) for values in scores.values() if values.shape[0] >= 3]
    mk_s = float(np.mean([test.S for test in tests])) if tests else 0.0
    mk_normalized = float(np.mean([test.normalized for test in tests])) if tests else 0.0
    increasing = float(np.mean([test.trend == INCREASING for test in tests])) if tests else 0.0

    return TrendEvaluation(spearman[0], spearman[1], pearson[0], pearson[1], pooled, mk_s, mk_normalized, increasing,
                           clean_pair_accuracy(model, dataset), len(dataset))
