"""
Name: survival_evaluation.py
Description: Concordance of trained models on survival records, on a held-out set or by k-fold cross-validation.
Author: Connor Kasarda
Date: 2025-06-04

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

from dataclasses import dataclass, asdict, field
import numpy as np
from common.errors import ConfigError, NoComparablePairs
from common.log import get_logger
from dataset.survival_dataset import SurvivalDataset
from embedding.embedding_model import EmbeddingModel
from embedding.param_set import make_rng
from estimation.contrastive import survival_risk
from estimation.train_config import TrainConfig, TrainMode
from estimation.trainer import train
from evaluation.concordance import concordance_index

logger = get_logger(__name__)

@dataclass(frozen=True)
class SurvivalEvaluation:
    """
    Attributes:
        ci (float): Concordance of risk = -score.
        oracle_ci (float | None): Concordance of the true risk, when known.
        n (int): Number of records.
        censoring_rate (float): Share of censored records.
    """

    ci: float
    oracle_ci: float
    n: int
    censoring_rate: float

    def to_metrics(self) -> dict:
        metrics = asdict(self)
        if self.oracle_ci is None:
            del metrics['oracle_ci']
        return metrics

def evaluate_survival(model: EmbeddingModel, dataset: SurvivalDataset) -> SurvivalEvaluation:
    """
    Computes the concordance index of a model on survival records.

    Args:
        model (EmbeddingModel): Model trained on comparable pairs.
        dataset (SurvivalDataset): Evaluation records.

    Returns:
        SurvivalEvaluation: Model and oracle concordance.

    Raises:
        NoComparablePairs: If the records have no comparable pair.
    """

    risk = survival_risk(model.score(dataset.feature_matrix()))
    ci = concordance_index(risk, dataset.times(), dataset.events())
    oracle = None
    if dataset.true_risk is not None:
        oracle = concordance_index(dataset.risk_vector(), dataset.times(), dataset.events())
    return SurvivalEvaluation(ci, oracle, len(dataset), dataset.censoring_rate)

@dataclass(frozen=True)
class CrossValidation:
    """
    Attributes:
        ci_mean (float): Mean test concordance over folds.
        ci_std (float): Its standard deviation.
        fold_ci (list[float]): Concordance of every evaluated fold.
        folds (int): Folds per repeat.
        repeats (int): Number of repeats.
    """

    ci_mean: float
    ci_std: float
    fold_ci: list = field(default_factory=list)
    folds: int = 10
    repeats: int = 1

    def to_metrics(self) -> dict:
        return asdict(self)

def cross_validate_survival(dataset: SurvivalDataset, config: TrainConfig, folds: int = 10,
                            repeats: int = 1) -> CrossValidation:
    """
    k-fold cross-validated concordance of contrastive training on survival records.

    Args:
        dataset (SurvivalDataset): All records.
        config (TrainConfig): Training hyperparameters; the mode is forced to survival.
        folds (int): Number of folds, between 2 and the number of records. Defaults to 10.
        repeats (int): Number of reshuffled repeats. Defaults to 1.

    Returns:
        CrossValidation: Mean and spread of the fold concordances.

    Raises:
        ConfigError: If folds or repeats are out of range.
        NoComparablePairs: If no test fold has a comparable pair.
    """

    if not 2 <= folds <= len(dataset) or repeats < 1:
        raise ConfigError(f'need 2 <= folds <= {len(dataset)} and repeats >= 1, got folds={folds} repeats={repeats}')
    config = config.with_overrides(mode=TrainMode.SURVIVAL)
    ids = dataset.ids
    fold_ci = []
    for repeat in range(repeats):
        order = make_rng(config.seed, repeat).permutation(len(ids))
        for fold, test_rows in enumerate(np.array_split(order, folds)):
            test_ids = {ids[row] for row in test_rows}
            train_set = dataset.subset([record_id for record_id in ids if record_id not in test_ids])
            test_set = dataset.subset([record_id for record_id in ids if record_id in test_ids])
            model, _ = train(train_set, config)
            try:
                fold_ci.append(evaluate_survival(model, test_set).ci)
            except NoComparablePairs:
                logger.warning('repeat %d fold %d has no comparable pair and is left out', repeat, fold)
                continue
            logger.info('cv repeat=%d fold=%d ci=%.4f', repeat, fold, fold_ci[-1])
    if not fold_ci:
        raise NoComparablePairs('no test fold has a comparable pair')
    return CrossValidation(float(np.mean(fold_ci)), float(np.std(fold_ci)), fold_ci, folds, repeats)
