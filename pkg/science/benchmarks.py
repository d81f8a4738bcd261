"""
Name: benchmarks.py
Description: Multi-seed experiments on synthetic trends: identifiability under monotone transforms of the trend,
             and trend recovery on the ball-springs simulator.
Author: Connor Kasarda
Date: 2025-06-06

Notes:
    Every run generates n_train + n_test sequences, trains on the first n_train and evaluates on the rest.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import replace
import numpy as np
from common.errors import ConfigError
from common.log import get_logger
from dataset.sequence_dataset import SequenceDataset
from estimation.train_config import TrainConfig, TrainMode
from estimation.trainer import train
from science.trend_evaluation import evaluate_trend
from synthesis.ball_springs import SpringsConfig, simulate_ball_springs
from synthesis.monotone_mixture import MixtureConfig, TrendTransform, generate_monotone_mixture

logger = get_logger(__name__)

def split_sequences(dataset: SequenceDataset, n_train: int) -> tuple[SequenceDataset, SequenceDataset]:
    """
    Splits off the first n_train sequences for training; the rest are the test set.

    Raises:
        ConfigError: If either side would have fewer than 2 sequences.
    """

    if not 2 <= n_train <= len(dataset) - 2:
        raise ConfigError(f'cannot split {len(dataset)} sequences into {n_train} train and at least 2 test')
    return dataset.subset(dataset.seq_ids[:n_train]), dataset.subset(dataset.seq_ids[n_train:])

def identifiability_benchmark(mixture: MixtureConfig, config: TrainConfig, n_train: int = 300, n_test: int = 100,
                              transforms: tuple = tuple(TrendTransform), seeds: tuple = (0, 1, 2, 3, 4)) -> dict:
    """
    Trains on mixtures of h(tau) and nuisance for several monotone h and compares the held-out Spearman correlation.

    Args:
        mixture (MixtureConfig): Generator parameters; sequence count, transform and seed are set per run.
        config (TrainConfig): Training parameters; the seed is set per run.
        n_train (int): Training sequences. Defaults to 300.
        n_test (int): Test sequences. Defaults to 100.
        transforms (tuple[TrendTransform, ...]): Transforms to compare. Defaults to all.
        seeds (tuple[int, ...]): Seeds. Defaults to 0..4.

    Returns:
        dict: 'runs' (transform, seed, spearman_abs, pearson_abs), 'spread' (max - min Spearman across transforms
            per seed) and 'max_spread'.
    """

    config = config.with_overrides(mode=TrainMode.SEQUENCE)
    runs, spread = [], {}
    for seed in seeds:
        values = []
        for transform in transforms:
            transform = TrendTransform(transform)
            data = generate_monotone_mixture(replace(mixture, n_sequences=n_train + n_test, trend_transform=transform,
                                                     seed=seed))
            train_set, test_set = split_sequences(data, n_train)
            model, _ = train(train_set, config.with_overrides(seed=seed))
            result = evaluate_trend(model, test_set)
            runs.append({'transform': transform.value, 'seed': seed, 'spearman_abs': result.spearman_abs,
                         'pearson_abs': result.pearson_abs})
            values.append(result.spearman_abs)
            logger.info('identifiability transform=%s seed=%d spearman_abs=%.4f', transform.value, seed,
                        result.spearman_abs)
        spread[str(seed)] = float(np.max(values) - np.min(values))
    return {'runs': runs, 'spread': spread, 'max_spread': max(spread.values())}

def springs_benchmark(springs: SpringsConfig, config: TrainConfig, n_train: int = 300, n_test: int = 100,
                      seeds: tuple = (0, 1, 2, 3, 4)) -> dict:
    """
    Trains on ball-springs sequences and reports the held-out correlation with the applied degradation.

    Args:
        springs (SpringsConfig): Simulator parameters; sequence count and seed are set per run.
        config (TrainConfig): Training parameters; the seed is set per run.
        n_train (int): Training sequences. Defaults to 300.
        n_test (int): Test sequences. Defaults to 100.
        seeds (tuple[int, ...]): Seeds. Defaults to 0..4.

    Returns:
        dict: 'runs' (seed, spearman_abs, spearman_abs_std, pearson_abs) and the mean Spearman over seeds.
    """

    config = config.with_overrides(mode=TrainMode.SEQUENCE)
    runs = []
    for seed in seeds:
        data = simulate_ball_springs(replace(springs, n_sequences=n_train + n_test, seed=seed))
        train_set, test_set = split_sequences(data, n_train)
        model, _ = train(train_set, config.with_overrides(seed=seed))
        result = evaluate_trend(model, test_set)
        runs.append({'seed': seed, 'spearman_abs': result.spearman_abs, 'spearman_abs_std': result.spearman_abs_std,
                     'pearson_abs': result.pearson_abs})
        logger.info('springs seed=%d spearman_abs=%.4f', seed, result.spearman_abs)
    return {'runs': runs, 'spearman_abs_mean': float(np.mean([run['spearman_abs'] for run in runs]))}
