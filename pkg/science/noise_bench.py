"""
Name: noise_bench.py
Description: Label-noise robustness benchmark: trains with bce and l1 on window-shuffled sequences and measures
             accuracy against the clean time order.
Author: Connor Kasarda
Date: 2025-06-05

Notes:
    Each seed generates one monotone-mixture dataset, holds out its last test_fraction of sequences clean, and
    contaminates the rest once per (eta, M). Both losses then train on the same noisy sequences.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, replace
import numpy as np
from common.errors import ConfigError
from common.log import get_logger
from estimation.contrastive import LossKind
from estimation.train_config import TrainConfig, TrainMode
from estimation.trainer import train
from parsing.file_writer import format_real, write_lines
from science.trend_evaluation import clean_pair_accuracy
from synthesis.contamination import ContaminationParams, contaminate, label_flip_fraction
from synthesis.monotone_mixture import MixtureConfig, generate_monotone_mixture

logger = get_logger(__name__)

DEFAULT_GRID = ((0.2, 2), (0.2, 5), (0.5, 5), (0.5, 10))
NOISE_COLUMNS = ('eta', 'M', 'loss', 'seed', 'clean_accuracy', 'flip_fraction')

@dataclass(frozen=True)
class NoiseRow:
    eta: float
    M: int
    loss: str
    seed: int
    clean_accuracy: float
    flip_fraction: float

    def fields(self) -> list[str]:
        return [format_real(self.eta), str(self.M), self.loss, str(self.seed), format_real(self.clean_accuracy),
                format_real(self.flip_fraction)]

class NoiseBenchmark:
    """
    Class for running the (eta, M) x loss x seed grid.

    Attributes:
        mixture (MixtureConfig): Data generator parameters; its seed is replaced by each benchmark seed.
        config (TrainConfig): Training parameters; loss and seed are replaced per run.
        grid (tuple[tuple[float, int], ...]): (eta, M) pairs.
        losses (tuple[LossKind, ...]): Losses to compare.
        seeds (tuple[int, ...]): Benchmark seeds.
        test_fraction (float): Share of sequences held out clean for evaluation.

    Methods:
        run() -> list[NoiseRow]: Trains and evaluates every grid cell.
        summarize(rows) -> dict: Mean clean accuracy per (eta, M, loss).
        write_csv(path, rows): Writes the rows as CSV.
    """

    def __init__(self, mixture: MixtureConfig, config: TrainConfig, grid: tuple = DEFAULT_GRID,
                 losses: tuple = (LossKind.BCE, LossKind.L1), seeds: tuple = (0, 1, 2, 3, 4),
                 test_fraction: float = 0.25) -> None:
        if not 0 < test_fraction < 1:
            raise ConfigError(f'test_fraction must lie in (0, 1), got {test_fraction}')
        if not grid or not losses or not seeds:
            raise ConfigError('the grid, losses and seeds must all be non-empty')
        self.mixture = mixture
        self.config = config.with_overrides(mode=TrainMode.SEQUENCE)
        self.grid = tuple((float(eta), int(width)) for eta, width in grid)
        self.losses = tuple(LossKind(loss) for loss in losses)
        self.seeds = tuple(int(seed) for seed in seeds)
        self.test_fraction = test_fraction

    def run(self) -> list[NoiseRow]:
        rows = []
        for seed in self.seeds:
            dataset = generate_monotone_mixture(replace(self.mixture, seed=seed))
            n_test = min(len(dataset) - 2, max(1, int(round(self.test_fraction * len(dataset)))))
            if n_test < 1:
                raise ConfigError(f'{len(dataset)} sequences are too few to hold out a test set')
            train_ids, test_ids = dataset.seq_ids[:-n_test], dataset.seq_ids[-n_test:]
            test_set = dataset.subset(test_ids)
            for eta, width in self.grid:
                noisy = contaminate(dataset.subset(train_ids), ContaminationParams(eta, width, seed))
                flipped = label_flip_fraction(noisy)
                for loss in self.losses:
                    model, _ = train(noisy, self.config.with_overrides(loss=loss, seed=seed))
                    row = NoiseRow(eta, width, loss.value, seed, clean_pair_accuracy(model, test_set), flipped)
                    logger.info('noise_bench eta=%g M=%d loss=%s seed=%d clean_accuracy=%.4f flip_fraction=%.4f',
                                eta, width, loss.value, seed, row.clean_accuracy, flipped)
                    rows.append(row)
        return rows

    @staticmethod
    def summarize(rows: list[NoiseRow]) -> dict:
        """
        Averages the clean accuracy over seeds.

        Args:
            rows (list[NoiseRow]): Benchmark rows.

        Returns:
            dict: 'eta=<eta>,M=<M>,loss=<loss>' per cell, 'grid_mean,loss=<loss>' over the whole grid, and
                'l1_minus_bce' (grid mean of l1 minus grid mean of bce) when both losses ran.
        """

        cells: dict = {}
        per_loss: dict = {}
        for row in rows:
            cells.setdefault(f'eta={row.eta:g},M={row.M},loss={row.loss}', []).append(row.clean_accuracy)
        for key, values in cells.items():
            per_loss.setdefault(key.rsplit(',', 1)[1], []).append(float(np.mean(values)))
        summary = {key: float(np.mean(values)) for key, values in cells.items()}
        summary.update({f'grid_mean,{loss}': float(np.mean(means)) for loss, means in per_loss.items()})
        if {'loss=bce', 'loss=l1'} <= set(per_loss):
            summary['l1_minus_bce'] = summary['grid_mean,loss=l1'] - summary['grid_mean,loss=bce']
        return summary

    @staticmethod
    def write_csv(path: str, rows: list[NoiseRow]) -> None:
        write_lines(path, [','.join(NOISE_COLUMNS)] + [','.join(row.fields()) for row in rows])
